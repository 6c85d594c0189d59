#ifndef LAYERCUT_TESTS_HELPERS_HPP
#define LAYERCUT_TESTS_HELPERS_HPP

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "layercut/model.hpp"

namespace testsupport {

using layercut::Configuration;
using layercut::Instance;
using layercut::Partition;

/// Random instance: every pair becomes an edge with probability edge_prob,
/// potentials uniform in [0, max_pot]. With quantized=true the values are
/// multiples of 1/4 so double sums are exact.
inline Instance random_instance(std::mt19937& rng, int n, int q, double edge_prob,
                                double max_pot, bool quantized = false) {
  Instance inst = Instance::make(n, q);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pot = [&]() {
    double x = unit(rng) * max_pot;
    return quantized ? std::round(x * 4.0) / 4.0 : x;
  };
  for (int v = 0; v < n; ++v)
    for (int a = 0; a < q; ++a) inst.vertex_potentials[v][a] = pot();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (unit(rng) > edge_prob) continue;
      std::vector<double> table(q * q);
      for (auto& x : table) x = pot();
      inst.add_edge(u, v, table);
    }
  return inst;
}

inline Partition random_partition(std::mt19937& rng, int edge_count) {
  Partition part;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int e = 0; e < edge_count; ++e) {
    const double a = unit(rng);
    part.alphas.emplace_back(a, 1.0 - a);
  }
  return part;
}

/// n x m grid instance with the given q*q table on every edge.
inline Instance grid_instance(int rows, int cols, int q,
                              const std::vector<double>& table) {
  Instance inst = Instance::make(rows * cols, q);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) inst.add_edge(id(r, c), id(r, c + 1), table);
      if (r + 1 < rows) inst.add_edge(id(r, c), id(r + 1, c), table);
    }
  return inst;
}

inline std::vector<double> unit_cut_table(int q) {
  std::vector<double> t(q * q, 1.0);
  for (int a = 0; a < q; ++a) t[a * q + a] = 0.0;
  return t;
}

/// Brute-force max-cut over all 2^n sides, independent of the energy model.
inline double brute_force_maxcut(int n, const std::vector<std::array<double, 3>>& edges) {
  double best = 0.0;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    double cut = 0.0;
    for (const auto& e : edges) {
      const int u = static_cast<int>(e[0]), v = static_cast<int>(e[1]);
      if (((mask >> u) & 1) != ((mask >> v) & 1)) cut += e[2];
    }
    best = std::max(best, cut);
  }
  return best;
}

/// Exact treewidth via the elimination-ordering subset DP; n <= ~20.
inline int exact_treewidth(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n == 0) return -1;
  std::vector<unsigned> adj(n, 0);
  for (auto [u, v] : edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  // q(S, v): neighbors of v outside S reachable through S.
  auto q_value = [&](unsigned S, int v) {
    unsigned reach = adj[v] & S;
    unsigned frontier = reach;
    while (frontier) {
      unsigned next = 0;
      unsigned f = frontier;
      while (f) {
        const int w = __builtin_ctz(f);
        f &= f - 1;
        next |= adj[w] & S & ~reach;
      }
      reach |= next;
      frontier = next;
    }
    unsigned outside = adj[v] & ~S;
    unsigned f = reach;
    while (f) {
      const int w = __builtin_ctz(f);
      f &= f - 1;
      outside |= adj[w] & ~S;
    }
    outside &= ~(1u << v);
    return __builtin_popcount(outside);
  };

  const unsigned full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<int> dp(full + 1, 0);
  for (unsigned S = 1; S <= full; ++S) {
    int best = n;
    unsigned f = S;
    while (f) {
      const int v = __builtin_ctz(f);
      f &= f - 1;
      const unsigned rest = S & ~(1u << v);
      best = std::min(best, std::max(dp[rest], q_value(rest, v)));
    }
    dp[S] = best;
  }
  return dp[full];
}

/// Independent proper-intersection test via parametric line solving.
inline bool segments_properly_cross(const std::array<double, 2>& a,
                                    const std::array<double, 2>& b,
                                    const std::array<double, 2>& c,
                                    const std::array<double, 2>& d,
                                    std::array<double, 2>* point = nullptr) {
  const double rx = b[0] - a[0], ry = b[1] - a[1];
  const double sx = d[0] - c[0], sy = d[1] - c[1];
  const double denom = rx * sy - ry * sx;
  if (std::abs(denom) < 1e-15) return false;
  const double t = ((c[0] - a[0]) * sy - (c[1] - a[1]) * sx) / denom;
  const double u = ((c[0] - a[0]) * ry - (c[1] - a[1]) * rx) / denom;
  const double eps = 1e-12;
  if (t <= eps || t >= 1 - eps || u <= eps || u >= 1 - eps) return false;
  if (point) *point = {a[0] + t * rx, a[1] + t * ry};
  return true;
}

}  // namespace testsupport

#endif
