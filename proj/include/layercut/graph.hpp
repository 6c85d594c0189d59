#ifndef LAYERCUT_GRAPH_HPP
#define LAYERCUT_GRAPH_HPP

#include <utility>
#include <vector>

namespace layercut {

/// Plain vertex/edge-list graph. Edges are stored in insertion order;
/// algorithms that iterate edges do so in this order, which is what makes
/// results reproducible.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }

  /// Neighbor lists (both directions of every edge), each sorted ascending.
  std::vector<std::vector<int>> adjacency() const;

  /// Component id per vertex. Components are numbered 0,1,... by their
  /// smallest vertex id.
  std::vector<int> component_ids() const;
};

}  // namespace layercut

#endif
