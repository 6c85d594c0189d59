#ifndef LAYERCUT_DP_HPP
#define LAYERCUT_DP_HPP

#include <cstdint>
#include <vector>

#include "layercut/model.hpp"
#include "layercut/treedecomp.hpp"

namespace layercut {

struct DpResult {
  double value = 0.0;
  Configuration cfg;
};

/// A local term of the objective: a table over the allowed labels of `scope`
/// (mixed-radix, scope[0] most significant). The DP charges each term at the
/// topmost bag containing its whole scope.
struct Charge {
  std::vector<int> scope;
  std::vector<double> table;
};

/// DP table cap (total entries across bags). Reads LAYERCUT_TABLE_CAP once;
/// defaults to 1e8.
std::uint64_t default_table_cap();

/// Exact optimum of the folded energy over U by message passing on the
/// decomposition, bottom-up. Requires validate_td to pass. Backtracking ties
/// resolve toward ascending labels, so reruns return identical
/// configurations.
DpResult dp_opt(const Instance& inst, const TreeDecomposition& td,
                const Partition& part, const std::vector<int>& U,
                Objective objective, std::uint64_t table_cap = default_table_cap());

/// Generalized engine: optimizes the sum of arbitrary bag-local charges.
/// Every charge scope must fit inside some bag. Vertices constrained only
/// through charges they do not appear in get their smallest allowed label.
DpResult dp_charges(const Instance& inst, const TreeDecomposition& td,
                    const std::vector<Charge>& charges, Objective objective,
                    std::uint64_t table_cap = default_table_cap());

}  // namespace layercut

#endif
