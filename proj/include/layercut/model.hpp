#ifndef LAYERCUT_MODEL_HPP
#define LAYERCUT_MODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "layercut/graph.hpp"

namespace layercut {

enum class Objective { Max, Min };

/// A labeled-graph energy model: each vertex carries a length-q potential
/// vector, each edge a q-by-q potential table (row = label of the first
/// endpoint). The energy of a labeling is the sum of all vertex and edge
/// potentials it selects.
struct Instance {
  int n = 0;
  int q = 1;
  bool directed = false;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<double>> vertex_potentials;  // n entries of length q
  std::vector<std::vector<double>> edge_potentials;    // per edge, q*q row-major
  std::vector<std::vector<int>> allowed_labels;        // per vertex, sorted, nonempty
  std::optional<std::vector<std::array<double, 2>>> coords;  // straight-line drawing

  /// Zero potentials, all labels allowed, no edges.
  static Instance make(int n, int q, bool directed = false);

  void add_edge(int u, int v, std::vector<double> table);

  int edge_count() const { return static_cast<int>(edges.size()); }
  double vpot(int v, int a) const { return vertex_potentials[v][a]; }
  double epot(int e, int a, int b) const { return edge_potentials[e][a * q + b]; }

  Graph graph() const { return Graph{n, edges}; }

  /// Structural invariants: label range, self-loops, duplicate undirected
  /// pairs, table sizes, nonempty allowed sets. Throws validation_error.
  void validate() const;

  bool has_negative_potential() const;
};

struct Configuration {
  std::vector<int> labels;

  int operator[](int v) const { return labels[v]; }
  int size() const { return static_cast<int>(labels.size()); }
};

/// Splits every edge table between its endpoints: the (u,v) table contributes
/// alpha_uv of itself to u's folded vertex function and alpha_vu to v's.
struct Partition {
  std::vector<std::pair<double, double>> alphas;  // aligned with Instance::edges

  static Partition uniform(int edge_count);

  /// alpha >= 0 and alpha_uv + alpha_vu = 1 within 1e-12, one pair per edge.
  void validate(const Instance& inst) const;
};

struct BalanceReport {
  std::vector<double> balancers;  // b_i = min over closed-neighborhood labelings
  std::vector<double> maxima;     // M_i = max over closed-neighborhood labelings
  std::optional<double> alpha_star;  // empty when some b_i = 0 with M_i > 0

  bool balanced() const { return alpha_star.has_value(); }
};

/// Checks that cfg has n labels, each inside its vertex's allowed set.
/// Throws validation_error otherwise.
void check_configuration(const Instance& inst, const Configuration& cfg);

/// Total energy: vertex terms in vertex-index order, then edge terms in
/// edge-list order.
double energy(const Instance& inst, const Configuration& cfg);

/// Sum of folded vertex functions over U:
///   sum_{i in U} phi_i(s_i)
///   + sum_{(u,v)} (alpha_uv*[u in U] + alpha_vu*[v in U]) * phi_uv(s_u, s_v).
double folded_energy(const Instance& inst, const Partition& part,
                     const std::vector<int>& U, const Configuration& cfg);

/// Folded function of a single vertex, f_i = phi_i + sum of its alpha-shares
/// of incident edge tables, evaluated at cfg.
double folded_vertex_value(const Instance& inst, const Partition& part, int v,
                           const Configuration& cfg);

/// Merges a directed instance into an undirected one on the same vertices.
/// All edges between an unordered pair collapse into a single edge whose
/// table is the sum of the originals (transposed as needed), so every
/// configuration keeps its exact energy.
Instance to_undirected(const Instance& inst);

/// Exact b_i / M_i per vertex by enumerating closed-neighborhood labelings.
/// Requires nonnegative potentials; per-vertex enumeration is capped.
BalanceReport balance_report(const Instance& inst, const Partition& part,
                             std::uint64_t per_vertex_cap = 1000000);

}  // namespace layercut

#endif
