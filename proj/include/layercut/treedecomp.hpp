#ifndef LAYERCUT_TREEDECOMP_HPP
#define LAYERCUT_TREEDECOMP_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "layercut/graph.hpp"

namespace layercut {

/// Bags over the vertex set connected by a tree. Also used for path
/// decompositions (the tree is then a chain).
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // each sorted ascending
  std::vector<std::pair<int, int>> tree_edges;
  int root = 0;

  int width() const;
};

struct TdViolation {
  enum class Kind {
    BadStructure,        // not a tree over the bags / bad indices
    BadBagContent,       // bag references an unknown vertex
    VertexUncovered,     // some vertex is in no bag
    EdgeUncovered,       // some graph edge fits in no bag
    SubtreeDisconnected  // the bags holding some vertex are not connected
  };
  Kind kind;
  int witness_vertex = -1;
  std::pair<int, int> witness_edge{-1, -1};
  std::string message;
};

/// Checks the three defining conditions plus tree-ness. Returns nullopt when
/// the decomposition is valid, otherwise the first violation found.
std::optional<TdViolation> validate_td(const Graph& g, const TreeDecomposition& td);

/// Min-fill greedy elimination, ties broken toward the smallest vertex id.
/// The width is an upper bound on the true treewidth. Bag 0 holds the last
/// eliminated vertex and serves as root; on disconnected graphs the component
/// trees are stitched to it.
TreeDecomposition build_td(const Graph& g);

/// Path decomposition from an ordered grouping: bag t pairs groups[t] and
/// groups[t+1], so the width is at most 2*max|group| - 1. The groups must
/// partition the vertices and every edge must stay within one group or join
/// neighboring groups.
TreeDecomposition build_pd_from_slabs(const Graph& g,
                                      const std::vector<std::vector<int>>& groups);

}  // namespace layercut

#endif
