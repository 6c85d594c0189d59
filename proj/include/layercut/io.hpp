#ifndef LAYERCUT_IO_HPP
#define LAYERCUT_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "layercut/crossing.hpp"
#include "layercut/geometry.hpp"
#include "layercut/model.hpp"
#include "layercut/treedecomp.hpp"

namespace layercut {

/// Instance files carry q, directed, num_vertices, edges, vertex_potentials,
/// edge_potentials (one q-by-q array per edge, row = first endpoint), plus
/// optional allowed_labels, coords and metadata. Unknown fields are rejected;
/// metadata is preserved verbatim for the caller.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst,
                                const nlohmann::json& metadata = nullptr);

/// Decomposition files carry bags, tree_edges and root.
TreeDecomposition td_from_json(const nlohmann::json& j);
nlohmann::json td_to_json(const TreeDecomposition& td);

/// Ball-set files carry d, centers, diameters and optionally mode ("intersection"
/// or "interference") and origin.
struct BallFile {
  BallSet balls;
  GeoMode mode = GeoMode::Intersection;
  std::optional<std::vector<double>> origin;
};
BallFile ballset_from_json(const nlohmann::json& j);
nlohmann::json ballset_to_json(const BallFile& bf);

/// Partition files carry `alphas`, one [alpha_uv, alpha_vu] pair per edge in
/// instance order.
Partition partition_from_json(const nlohmann::json& j, const Instance& inst);

/// Drawing for an instance document with coords: crossings are taken verbatim
/// from an optional `crossings` field (objects with edge_a, edge_b, point,
/// param_a, param_b) and recomputed from the coordinates otherwise.
Drawing drawing_from_instance_json(const nlohmann::json& j, const Instance& inst);

nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

Instance load_instance(const std::string& path);
TreeDecomposition load_td(const std::string& path);
BallFile load_ballset(const std::string& path);

}  // namespace layercut

#endif
