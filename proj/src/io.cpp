#include "layercut/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "layercut/errors.hpp"

namespace layercut {

using nlohmann::json;

namespace {

void require_fields(const json& j, const std::set<std::string>& required,
                    const std::set<std::string>& optional, const char* what) {
  if (!j.is_object())
    throw validation_error(std::string(what) + " must be a JSON object");
  for (const auto& f : required)
    if (!j.contains(f))
      throw validation_error(std::string(what) + " is missing field '" + f + "'");
  for (const auto& [key, value] : j.items())
    if (!required.count(key) && !optional.count(key))
      throw validation_error(std::string(what) + " has unknown field '" + key + "'");
}

template <typename T>
T get_as(const json& j, const char* field, const char* what) {
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    throw validation_error(std::string(what) + " field '" + field +
                           "' is malformed: " + e.what());
  }
}

}  // namespace

Instance instance_from_json(const json& j) {
  require_fields(j,
                 {"q", "directed", "num_vertices", "edges", "vertex_potentials",
                  "edge_potentials"},
                 {"allowed_labels", "coords", "crossings", "metadata"}, "instance");

  Instance inst;
  inst.q = get_as<int>(j, "q", "instance");
  inst.directed = get_as<bool>(j, "directed", "instance");
  inst.n = get_as<int>(j, "num_vertices", "instance");
  if (inst.q < 1 || inst.n < 0)
    throw validation_error("instance requires q >= 1 and num_vertices >= 0");

  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw validation_error("each edge must be a [u, v] pair");
    inst.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  inst.vertex_potentials =
      get_as<std::vector<std::vector<double>>>(j, "vertex_potentials", "instance");

  for (const auto& table : j.at("edge_potentials")) {
    std::vector<double> flat;
    if (!table.is_array() || static_cast<int>(table.size()) != inst.q)
      throw validation_error("each edge table must have q rows");
    for (const auto& row : table) {
      if (!row.is_array() || static_cast<int>(row.size()) != inst.q)
        throw validation_error("each edge-table row must have q entries");
      for (const auto& x : row) flat.push_back(x.get<double>());
    }
    inst.edge_potentials.push_back(std::move(flat));
  }

  if (j.contains("allowed_labels")) {
    inst.allowed_labels =
        get_as<std::vector<std::vector<int>>>(j, "allowed_labels", "instance");
  } else {
    std::vector<int> all(inst.q);
    for (int a = 0; a < inst.q; ++a) all[a] = a;
    inst.allowed_labels.assign(inst.n, all);
  }

  if (j.contains("coords")) {
    std::vector<std::array<double, 2>> pts;
    for (const auto& p : j.at("coords")) {
      if (!p.is_array() || p.size() != 2)
        throw validation_error("each coordinate must be an [x, y] pair");
      pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    inst.coords = std::move(pts);
  }

  inst.validate();
  return inst;
}

json instance_to_json(const Instance& inst, const json& metadata) {
  json j;
  j["q"] = inst.q;
  j["directed"] = inst.directed;
  j["num_vertices"] = inst.n;
  j["edges"] = json::array();
  for (auto [u, v] : inst.edges) j["edges"].push_back({u, v});
  j["vertex_potentials"] = inst.vertex_potentials;
  j["edge_potentials"] = json::array();
  for (int e = 0; e < inst.edge_count(); ++e) {
    json table = json::array();
    for (int a = 0; a < inst.q; ++a) {
      json row = json::array();
      for (int b = 0; b < inst.q; ++b) row.push_back(inst.epot(e, a, b));
      table.push_back(std::move(row));
    }
    j["edge_potentials"].push_back(std::move(table));
  }
  j["allowed_labels"] = inst.allowed_labels;
  if (inst.coords) {
    j["coords"] = json::array();
    for (const auto& p : *inst.coords) j["coords"].push_back({p[0], p[1]});
  }
  if (!metadata.is_null()) j["metadata"] = metadata;
  return j;
}

TreeDecomposition td_from_json(const json& j) {
  require_fields(j, {"bags", "tree_edges", "root"}, {}, "decomposition");
  TreeDecomposition td;
  td.bags = get_as<std::vector<std::vector<int>>>(j, "bags", "decomposition");
  for (auto& bag : td.bags) std::sort(bag.begin(), bag.end());
  for (const auto& e : j.at("tree_edges")) {
    if (!e.is_array() || e.size() != 2)
      throw validation_error("each tree edge must be an [a, b] pair");
    td.tree_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  td.root = get_as<int>(j, "root", "decomposition");
  return td;
}

json td_to_json(const TreeDecomposition& td) {
  json j;
  j["bags"] = td.bags;
  j["tree_edges"] = json::array();
  for (auto [a, b] : td.tree_edges) j["tree_edges"].push_back({a, b});
  j["root"] = td.root;
  return j;
}

BallFile ballset_from_json(const json& j) {
  require_fields(j, {"d", "centers", "diameters"}, {"mode", "origin"}, "ball set");
  BallFile bf;
  bf.balls.d = get_as<int>(j, "d", "ball set");
  bf.balls.centers =
      get_as<std::vector<std::vector<double>>>(j, "centers", "ball set");
  bf.balls.diameters = get_as<std::vector<double>>(j, "diameters", "ball set");
  if (j.contains("mode")) {
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "intersection")
      bf.mode = GeoMode::Intersection;
    else if (mode == "interference")
      bf.mode = GeoMode::Interference;
    else
      throw validation_error("ball-set mode must be 'intersection' or 'interference'");
  }
  if (j.contains("origin"))
    bf.origin = get_as<std::vector<double>>(j, "origin", "ball set");
  bf.balls.validate();
  return bf;
}

json ballset_to_json(const BallFile& bf) {
  json j;
  j["d"] = bf.balls.d;
  j["centers"] = bf.balls.centers;
  j["diameters"] = bf.balls.diameters;
  j["mode"] = bf.mode == GeoMode::Intersection ? "intersection" : "interference";
  if (bf.origin) j["origin"] = *bf.origin;
  return j;
}

Partition partition_from_json(const json& j, const Instance& inst) {
  require_fields(j, {"alphas"}, {}, "partition");
  Partition part;
  for (const auto& pair : j.at("alphas")) {
    if (!pair.is_array() || pair.size() != 2)
      throw validation_error("each alpha entry must be an [alpha_uv, alpha_vu] pair");
    part.alphas.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  part.validate(inst);
  return part;
}

Drawing drawing_from_instance_json(const json& j, const Instance& inst) {
  if (!inst.coords)
    throw parameter_error("drawing requires instance coords");
  if (!j.contains("crossings")) return compute_crossings(*inst.coords, inst.edges);

  Drawing drawing;
  drawing.coords = *inst.coords;
  std::vector<int> per_edge(inst.edge_count(), 0);
  for (const auto& x : j.at("crossings")) {
    SegmentCrossing c;
    c.edge_a = get_as<int>(x, "edge_a", "crossing");
    c.edge_b = get_as<int>(x, "edge_b", "crossing");
    if (c.edge_a < 0 || c.edge_a >= inst.edge_count() || c.edge_b < 0 ||
        c.edge_b >= inst.edge_count())
      throw validation_error("crossing references an unknown edge");
    const auto point = get_as<std::vector<double>>(x, "point", "crossing");
    if (point.size() != 2)
      throw validation_error("crossing point must be an [x, y] pair");
    c.point = {point[0], point[1]};
    c.param_a = get_as<double>(x, "param_a", "crossing");
    c.param_b = get_as<double>(x, "param_b", "crossing");
    ++per_edge[c.edge_a];
    ++per_edge[c.edge_b];
    drawing.crossings.push_back(c);
  }
  for (int c : per_edge) drawing.phi = std::max(drawing.phi, c);
  return drawing;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw validation_error("cannot parse " + path + ": " + e.what());
  }
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

Instance load_instance(const std::string& path) {
  return instance_from_json(load_json(path));
}

TreeDecomposition load_td(const std::string& path) {
  return td_from_json(load_json(path));
}

BallFile load_ballset(const std::string& path) {
  return ballset_from_json(load_json(path));
}

}  // namespace layercut
