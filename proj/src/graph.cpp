#include "layercut/graph.hpp"

#include <algorithm>
#include <queue>

namespace layercut {

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return adj;
}

std::vector<int> Graph::component_ids() const {
  const auto adj = adjacency();
  std::vector<int> comp(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    std::queue<int> bfs;
    bfs.push(s);
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop();
      for (int w : adj[u]) {
        if (comp[w] < 0) {
          comp[w] = next;
          bfs.push(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace layercut
