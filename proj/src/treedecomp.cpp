#include "layercut/treedecomp.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "layercut/errors.hpp"

namespace layercut {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

namespace {

std::string edge_str(int u, int v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

std::optional<TdViolation> validate_td(const Graph& g, const TreeDecomposition& td) {
  const int nb = static_cast<int>(td.bags.size());
  if (nb == 0)
    return TdViolation{TdViolation::Kind::BadStructure, -1, {-1, -1},
                       "decomposition has no bags"};
  if (td.root < 0 || td.root >= nb)
    return TdViolation{TdViolation::Kind::BadStructure, -1, {-1, -1},
                       "root bag index out of range"};

  for (int i = 0; i < nb; ++i)
    for (int v : td.bags[i])
      if (v < 0 || v >= g.n)
        return TdViolation{TdViolation::Kind::BadBagContent, v, {-1, -1},
                           "bag " + std::to_string(i) + " references unknown vertex " +
                               std::to_string(v)};

  // Tree-ness: nb-1 edges over valid indices and connected.
  if (static_cast<int>(td.tree_edges.size()) != nb - 1)
    return TdViolation{TdViolation::Kind::BadStructure, -1, {-1, -1},
                       "bag tree must have exactly [bags - 1] edges"};
  std::vector<std::vector<int>> bag_adj(nb);
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || a >= nb || b < 0 || b >= nb || a == b)
      return TdViolation{TdViolation::Kind::BadStructure, -1, {-1, -1},
                         "bag tree edge references an invalid bag"};
    bag_adj[a].push_back(b);
    bag_adj[b].push_back(a);
  }
  {
    std::vector<char> seen(nb, 0);
    std::queue<int> bfs;
    bfs.push(td.root);
    seen[td.root] = 1;
    int reached = 1;
    while (!bfs.empty()) {
      int i = bfs.front();
      bfs.pop();
      for (int j : bag_adj[i])
        if (!seen[j]) {
          seen[j] = 1;
          ++reached;
          bfs.push(j);
        }
    }
    if (reached != nb)
      return TdViolation{TdViolation::Kind::BadStructure, -1, {-1, -1},
                         "bag tree is disconnected"};
  }

  // Vertex coverage.
  std::vector<char> covered(g.n, 0);
  for (const auto& bag : td.bags)
    for (int v : bag) covered[v] = 1;
  for (int v = 0; v < g.n; ++v)
    if (!covered[v])
      return TdViolation{TdViolation::Kind::VertexUncovered, v, {-1, -1},
                         "vertex " + std::to_string(v) + " is in no bag"};

  // Edge coverage.
  std::vector<std::set<int>> bag_sets(nb);
  for (int i = 0; i < nb; ++i) bag_sets[i] = {td.bags[i].begin(), td.bags[i].end()};
  for (auto [u, v] : g.edges) {
    bool found = false;
    for (int i = 0; i < nb && !found; ++i)
      found = bag_sets[i].count(u) && bag_sets[i].count(v);
    if (!found)
      return TdViolation{TdViolation::Kind::EdgeUncovered, -1, {u, v},
                         "edge " + edge_str(u, v) + " is contained in no bag"};
  }

  // Connected-subtree condition per vertex.
  for (int v = 0; v < g.n; ++v) {
    std::vector<char> holds(nb, 0);
    int total = 0, start = -1;
    for (int i = 0; i < nb; ++i)
      if (bag_sets[i].count(v)) {
        holds[i] = 1;
        ++total;
        start = i;
      }
    if (total == 0) continue;
    std::vector<char> seen(nb, 0);
    std::queue<int> bfs;
    bfs.push(start);
    seen[start] = 1;
    int reached = 1;
    while (!bfs.empty()) {
      int i = bfs.front();
      bfs.pop();
      for (int j : bag_adj[i])
        if (holds[j] && !seen[j]) {
          seen[j] = 1;
          ++reached;
          bfs.push(j);
        }
    }
    if (reached != total)
      return TdViolation{TdViolation::Kind::SubtreeDisconnected, v, {-1, -1},
                         "bags containing vertex " + std::to_string(v) +
                             " do not form a connected subtree"};
  }

  return std::nullopt;
}

TreeDecomposition build_td(const Graph& g) {
  const int n = g.n;
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    td.root = 0;
    return td;
  }

  // Working adjacency as sets; fill edges are added as vertices go.
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges) {
    if (u != v) {
      adj[u].insert(v);
      adj[v].insert(u);
    }
  }

  std::vector<char> eliminated(n, 0);
  std::vector<int> order;
  order.reserve(n);
  std::vector<std::vector<int>> elim_bag(n);  // {v} + neighbors at elimination time
  std::vector<int> elim_pos(n, -1);

  for (int round = 0; round < n; ++round) {
    // Min-fill score; ties toward the smallest id.
    int best = -1;
    long long best_fill = -1;
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      long long fill = 0;
      for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
        for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
          if (!adj[*it].count(*jt)) ++fill;
      if (best < 0 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }

    const int v = best;
    elim_pos[v] = round;
    order.push_back(v);
    elim_bag[v].assign(adj[v].begin(), adj[v].end());
    elim_bag[v].push_back(v);
    std::sort(elim_bag[v].begin(), elim_bag[v].end());

    for (int a : adj[v])
      for (int b : adj[v])
        if (a < b && !adj[a].count(b)) {
          adj[a].insert(b);
          adj[b].insert(a);
        }
    for (int a : adj[v]) adj[a].erase(v);
    adj[v].clear();
    eliminated[v] = 1;
  }

  // Bags in reverse elimination order so the last eliminated vertex becomes
  // bag 0, the root. Each bag hangs off the bag of its earliest-eliminated
  // surviving neighbor; bags without one attach to the root.
  auto bag_index = [&](int vertex) { return n - 1 - elim_pos[vertex]; };
  td.bags.assign(n, {});
  for (int v = 0; v < n; ++v) td.bags[bag_index(v)] = elim_bag[v];
  td.root = 0;
  for (int round = 0; round < n - 1; ++round) {
    const int v = order[round];
    int parent_vertex = -1;
    for (int u : elim_bag[v])
      if (u != v && (parent_vertex < 0 || elim_pos[u] < elim_pos[parent_vertex]))
        parent_vertex = u;
    const int parent_bag = parent_vertex >= 0 ? bag_index(parent_vertex) : td.root;
    td.tree_edges.emplace_back(parent_bag, bag_index(v));
  }
  return td;
}

TreeDecomposition build_pd_from_slabs(const Graph& g,
                                      const std::vector<std::vector<int>>& groups) {
  std::vector<int> group_of(g.n, -1);
  for (size_t t = 0; t < groups.size(); ++t)
    for (int v : groups[t]) {
      if (v < 0 || v >= g.n)
        throw parameter_error("slab group references unknown vertex " + std::to_string(v));
      if (group_of[v] != -1)
        throw parameter_error("vertex " + std::to_string(v) +
                              " appears in more than one slab group");
      group_of[v] = static_cast<int>(t);
    }
  for (int v = 0; v < g.n; ++v)
    if (group_of[v] == -1)
      throw parameter_error("vertex " + std::to_string(v) + " is in no slab group");
  for (auto [u, v] : g.edges)
    if (std::abs(group_of[u] - group_of[v]) > 1)
      throw parameter_error("edge " + edge_str(u, v) + " spans non-adjacent slab groups");

  TreeDecomposition td;
  td.root = 0;
  if (groups.empty()) {
    td.bags.push_back({});
    return td;
  }
  if (groups.size() == 1) {
    td.bags.push_back(groups[0]);
    std::sort(td.bags[0].begin(), td.bags[0].end());
    return td;
  }
  for (size_t t = 0; t + 1 < groups.size(); ++t) {
    std::vector<int> bag = groups[t];
    bag.insert(bag.end(), groups[t + 1].begin(), groups[t + 1].end());
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
    if (t > 0) td.tree_edges.emplace_back(static_cast<int>(t) - 1, static_cast<int>(t));
  }
  return td;
}

}  // namespace layercut
