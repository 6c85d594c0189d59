#ifndef LAYERCUT_SRC_SUBSOLVE_HPP
#define LAYERCUT_SRC_SUBSOLVE_HPP

#include <vector>

#include "layercut/model.hpp"

namespace layercut {

/// Sub-instance induced by a vertex subset and an explicit edge-index subset
/// (endpoints must lie inside the vertex subset). Keeps the alpha pair of
/// every surviving edge.
struct SubInstance {
  Instance inst;
  Partition part;
  std::vector<int> to_global;  // local id -> global id
  std::vector<int> to_local;   // global id -> local id or -1
};

SubInstance induce_subinstance(const Instance& inst, const Partition& part,
                               const std::vector<int>& vertices,
                               const std::vector<int>& edge_indices);

}  // namespace layercut

#endif
