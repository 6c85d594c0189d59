#ifndef LAYERCUT_PROBLEMS_HPP
#define LAYERCUT_PROBLEMS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "layercut/model.hpp"
#include "layercut/shifting.hpp"

namespace layercut {

struct Csp2Constraint {
  int u = 0;
  int v = 0;
  double weight = 1.0;
  std::vector<char> satisfied;  // q*q row-major, row = label of u
};

/// MAX 2-CSP over q-ary variables: zero vertex potentials, each constraint's
/// table pays its weight exactly on satisfying label pairs. Multiple
/// constraints on one pair merge by summing tables.
Instance encode_max2csp(int q, int variables,
                        const std::vector<Csp2Constraint>& constraints);

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

/// MAX-CUT as a q=2 instance: the edge table pays w off-diagonal.
Instance encode_maxcut(int n, const std::vector<WeightedEdge>& edges);

/// MAX-DICUT as a directed q=2 instance: arc (i,j) pays w only at (1,0).
/// Pass the result through to_undirected before solving.
Instance encode_maxdicut(int n, const std::vector<WeightedEdge>& arcs);

enum class KCutBackend { Oracle, Baker };

struct MaxKCutOptions {
  int k_cut = 2;
  KCutBackend backend = KCutBackend::Oracle;
  int baker_k = 2;          // shifting parameter when backend == Baker
  bool unordered = false;   // enumerate terminal sets instead of tuples
  std::uint64_t tuple_cap = 1000000;
  int threads = 1;
};

struct MaxKCutResult {
  double value = 0.0;
  std::vector<int> labels;
  std::vector<int> terminals;  // the winning terminal tuple, label order
};

/// MAX k-CUT by terminal enumeration: every ordered choice of k terminals is
/// pinned to the k distinct labels and the rest is solved with the chosen
/// backend; the best labeling over all choices wins.
MaxKCutResult solve_maxkcut(int n, const std::vector<WeightedEdge>& edges,
                            const MaxKCutOptions& options);

/// Ferromagnetic Edwards-Anderson ground states on an n_1 x ... x n_d lattice
/// without external field, as MAX-CUT: E(s) = C - 2 * cut(s) with
/// C = sum of couplings. Returns the instance and C. `couplings` holds one
/// J > 0 per lattice edge (vertices in row-major order, +1 neighbor per axis,
/// axes in order), or a single J for all edges.
std::pair<Instance, double> encode_edwards_anderson(const std::vector<int>& dims,
                                                    const std::vector<double>& couplings,
                                                    double field);

/// Lattice edge count for the coupling layout above.
int lattice_edge_count(const std::vector<int>& dims);

/// Spin values (-1/+1) from cut labels (0/1).
std::vector<int> spins_from_labels(const Configuration& cfg);

// Standard vision potentials (q*q row-major tables / length-q data terms).
std::vector<double> potts_table(int q, double w);
std::vector<double> truncated_abs_table(int q, double kappa);
std::vector<double> truncated_quad_table(int q, double kappa);
std::vector<double> data_term(int q, double p);

}  // namespace layercut

#endif
