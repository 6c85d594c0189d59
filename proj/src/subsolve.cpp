#include "subsolve.hpp"

#include <algorithm>
#include <string>

#include "layercut/errors.hpp"

namespace layercut {

SubInstance induce_subinstance(const Instance& inst, const Partition& part,
                               const std::vector<int>& vertices,
                               const std::vector<int>& edge_indices) {
  SubInstance sub;
  sub.to_global = vertices;
  std::sort(sub.to_global.begin(), sub.to_global.end());
  sub.to_local.assign(inst.n, -1);
  for (size_t i = 0; i < sub.to_global.size(); ++i)
    sub.to_local[sub.to_global[i]] = static_cast<int>(i);

  sub.inst = Instance::make(static_cast<int>(sub.to_global.size()), inst.q,
                            inst.directed);
  for (size_t i = 0; i < sub.to_global.size(); ++i) {
    sub.inst.vertex_potentials[i] = inst.vertex_potentials[sub.to_global[i]];
    sub.inst.allowed_labels[i] = inst.allowed_labels[sub.to_global[i]];
  }
  for (int e : edge_indices) {
    auto [u, v] = inst.edges[e];
    const int lu = sub.to_local[u], lv = sub.to_local[v];
    if (lu < 0 || lv < 0)
      throw parameter_error("edge " + std::to_string(e) +
                            " leaves the induced vertex set");
    sub.inst.add_edge(lu, lv, inst.edge_potentials[e]);
    sub.part.alphas.push_back(part.alphas[e]);
  }
  return sub;
}

}  // namespace layercut
