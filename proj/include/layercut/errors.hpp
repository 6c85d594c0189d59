#ifndef LAYERCUT_ERRORS_HPP
#define LAYERCUT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace layercut {

// Malformed inputs: bad instance files, invalid configurations, broken
// tree decompositions. CLI exit code 2.
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Work-size limits: enumeration caps, DP table caps. CLI exit code 3.
class capacity_error : public std::runtime_error {
public:
  explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Inputs outside an operation's mathematical domain (negative potentials,
// unbalanced instances). CLI exit code 4.
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Out-of-range parameters (k too small, bad shift offsets). CLI exit code 4.
class parameter_error : public std::runtime_error {
public:
  explicit parameter_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace layercut

#endif
