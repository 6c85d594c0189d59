#ifndef LAYERCUT_SHIFTING_HPP
#define LAYERCUT_SHIFTING_HPP

#include <vector>

#include "layercut/dp.hpp"
#include "layercut/graph.hpp"
#include "layercut/model.hpp"

namespace layercut {

/// BFS levels per vertex, one tree per connected component.
struct LayerAssignment {
  std::vector<int> level;
  std::vector<int> roots;  // smallest vertex id of each component, ascending
};

/// One shift of the layer decomposition: the edges deleted between level
/// residues ell and ell+1 (mod k+2), the resulting components, and each
/// component's interior (A) and boundary (B) vertices.
struct ShiftPlan {
  int k = 1;
  int ell = 0;
  std::vector<int> deleted_edges;  // indices into the graph's edge list
  std::vector<std::vector<int>> components;
  std::vector<std::vector<int>> interior;
  std::vector<std::vector<int>> boundary;
};

struct ApproxResult {
  Configuration cfg;
  double energy = 0.0;    // full-instance value of cfg (product for max_product)
  double dp_bound = 0.0;  // sum of per-component DP objectives of the winning shift
  double ratio_guarantee = 1.0;
  int k = 1;
  std::vector<int> winning_shift;
  std::vector<int> achieved_widths;    // per component of the winning shift
  std::vector<double> shift_energies;  // per evaluated shift, for audit
};

LayerAssignment bfs_layers(const Graph& g);

ShiftPlan shift_split(const Graph& g, const LayerAssignment& layers, int k, int ell);

/// Smallest k with k/(k+2) >= 1-epsilon.
int baker_k_for_epsilon(double epsilon);

/// Max-sum scheme: for every shift, solve each component exactly on its
/// interior via tree-decomposition DP, stitch, and keep the best full energy.
/// Requires nonnegative potentials; the result is at least k/(k+2) of the
/// optimum.
ApproxResult baker_max(const Instance& inst, const Partition& part, int k,
                       int threads = 1);

/// Min-sum scheme for alpha-balanced instances; the result is at most
/// 1 + 2(alpha*-1)/(k+2) times the optimum.
ApproxResult baker_min_balanced(const Instance& inst, const Partition& part, int k,
                                int threads = 1);

/// Max-product of the folded vertex functions, run as max-sum in log space.
/// Requires every f_i >= 1; the returned product is at least OPT^(k/(k+2)).
/// Each vertex's closed neighborhood must stay DP-sized (degree cap 8).
ApproxResult max_product(const Instance& inst, const Partition& part, int k,
                         int threads = 1);

}  // namespace layercut

#endif
