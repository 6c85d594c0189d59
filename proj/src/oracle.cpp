#include "layercut/oracle.hpp"

#include <string>

#include "layercut/errors.hpp"

namespace layercut {

OracleResult exact_opt(const Instance& inst, Objective objective,
                       const std::vector<int>* U, const Partition* part,
                       std::uint64_t cap) {
  inst.validate();
  if (U && !part) throw parameter_error("exact_opt over U requires a partition");
  if (part) part->validate(inst);

  std::uint64_t count = 1;
  for (int v = 0; v < inst.n; ++v) {
    count *= inst.allowed_labels[v].size();
    if (count > cap)
      throw capacity_error("exact_opt would enumerate more than " +
                           std::to_string(cap) + " configurations");
  }

  // Hoist the objective's fixed structure: which vertex terms count and the
  // alpha coefficient of every edge table.
  std::vector<char> count_vertex(inst.n, 1);
  if (U) {
    count_vertex.assign(inst.n, 0);
    for (int v : *U) {
      if (v < 0 || v >= inst.n)
        throw parameter_error("U contains unknown vertex id " + std::to_string(v));
      count_vertex[v] = 1;
    }
  }
  std::vector<double> edge_coeff(inst.edge_count(), 1.0);
  if (U) {
    for (int e = 0; e < inst.edge_count(); ++e) {
      auto [u, v] = inst.edges[e];
      edge_coeff[e] = (count_vertex[u] ? part->alphas[e].first : 0.0) +
                      (count_vertex[v] ? part->alphas[e].second : 0.0);
    }
  }

  Configuration cfg;
  cfg.labels.assign(inst.n, 0);
  std::vector<size_t> pos(inst.n, 0);
  for (int v = 0; v < inst.n; ++v) cfg.labels[v] = inst.allowed_labels[v][0];

  OracleResult best;
  bool first = true;
  bool more = true;
  while (more) {
    double val = 0.0;
    for (int v = 0; v < inst.n; ++v)
      if (count_vertex[v]) val += inst.vpot(v, cfg[v]);
    for (int e = 0; e < inst.edge_count(); ++e) {
      if (edge_coeff[e] == 0.0) continue;
      auto [u, v] = inst.edges[e];
      val += edge_coeff[e] * inst.epot(e, cfg[u], cfg[v]);
    }

    bool improves = first || (objective == Objective::Max ? val > best.value
                                                          : val < best.value);
    if (improves) {
      best.value = val;
      best.cfg = cfg;
    }
    first = false;

    more = false;
    for (int v = inst.n; v-- > 0;) {
      if (++pos[v] < inst.allowed_labels[v].size()) {
        cfg.labels[v] = inst.allowed_labels[v][pos[v]];
        more = true;
        break;
      }
      pos[v] = 0;
      cfg.labels[v] = inst.allowed_labels[v][0];
    }
  }
  return best;
}

}  // namespace layercut
