#ifndef LAYERCUT_ORACLE_HPP
#define LAYERCUT_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "layercut/model.hpp"

namespace layercut {

struct OracleResult {
  double value = 0.0;
  Configuration cfg;
};

/// Exhaustive optimizer over all allowed labelings. Deliberately the simplest
/// trustworthy ground truth: an odometer over vertex labels in index order,
/// keeping the first strict improvement, so the returned configuration is the
/// lexicographically smallest optimum.
///
/// With U (and a partition) the objective is the folded energy over U;
/// otherwise it is the plain energy. Throws capacity_error when the number of
/// labelings exceeds `cap`.
OracleResult exact_opt(const Instance& inst, Objective objective,
                       const std::vector<int>* U = nullptr,
                       const Partition* part = nullptr,
                       std::uint64_t cap = 10000000);

}  // namespace layercut

#endif
