#include "layercut/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "layercut/errors.hpp"

namespace layercut {

Instance Instance::make(int n, int q, bool directed) {
  if (n < 0 || q < 1) throw validation_error("instance requires n >= 0 and q >= 1");
  Instance inst;
  inst.n = n;
  inst.q = q;
  inst.directed = directed;
  inst.vertex_potentials.assign(n, std::vector<double>(q, 0.0));
  std::vector<int> all(q);
  for (int a = 0; a < q; ++a) all[a] = a;
  inst.allowed_labels.assign(n, all);
  return inst;
}

void Instance::add_edge(int u, int v, std::vector<double> table) {
  edges.emplace_back(u, v);
  edge_potentials.push_back(std::move(table));
}

void Instance::validate() const {
  if (q < 1) throw validation_error("domain size q must be at least 1");
  if (n < 0) throw validation_error("vertex count must be nonnegative");
  if (static_cast<int>(vertex_potentials.size()) != n)
    throw validation_error("vertex_potentials must have one entry per vertex");
  for (int v = 0; v < n; ++v) {
    if (static_cast<int>(vertex_potentials[v].size()) != q)
      throw validation_error("vertex potential of vertex " + std::to_string(v) +
                             " must have q entries");
  }
  if (edge_potentials.size() != edges.size())
    throw validation_error("edge_potentials must have one table per edge");
  std::set<std::pair<int, int>> seen;
  for (size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw validation_error("edge " + std::to_string(e) + " references an unknown vertex");
    if (u == v) throw validation_error("self-loop at vertex " + std::to_string(u));
    if (!directed) {
      auto key = std::minmax(u, v);
      if (!seen.insert(key).second)
        throw validation_error("duplicate undirected edge (" + std::to_string(key.first) +
                               "," + std::to_string(key.second) + ")");
    }
    if (static_cast<int>(edge_potentials[e].size()) != q * q)
      throw validation_error("edge table " + std::to_string(e) + " must have q*q entries");
  }
  if (static_cast<int>(allowed_labels.size()) != n)
    throw validation_error("allowed_labels must have one set per vertex");
  for (int v = 0; v < n; ++v) {
    const auto& al = allowed_labels[v];
    if (al.empty())
      throw validation_error("allowed-label set of vertex " + std::to_string(v) + " is empty");
    for (size_t i = 0; i < al.size(); ++i) {
      if (al[i] < 0 || al[i] >= q)
        throw validation_error("allowed label out of range at vertex " + std::to_string(v));
      if (i > 0 && al[i] <= al[i - 1])
        throw validation_error("allowed labels of vertex " + std::to_string(v) +
                               " must be strictly increasing");
    }
  }
  if (coords && static_cast<int>(coords->size()) != n)
    throw validation_error("coords must have one point per vertex");
}

bool Instance::has_negative_potential() const {
  for (const auto& vp : vertex_potentials)
    for (double x : vp)
      if (x < 0) return true;
  for (const auto& ep : edge_potentials)
    for (double x : ep)
      if (x < 0) return true;
  return false;
}

Partition Partition::uniform(int edge_count) {
  Partition part;
  part.alphas.assign(edge_count, {0.5, 0.5});
  return part;
}

void Partition::validate(const Instance& inst) const {
  if (alphas.size() != inst.edges.size())
    throw validation_error("partition must have one alpha pair per edge");
  for (size_t e = 0; e < alphas.size(); ++e) {
    auto [a, b] = alphas[e];
    if (a < 0 || b < 0 || std::abs(a + b - 1.0) > 1e-12)
      throw validation_error("alpha pair of edge " + std::to_string(e) +
                             " must be nonnegative and sum to 1");
  }
}

void check_configuration(const Instance& inst, const Configuration& cfg) {
  if (cfg.size() != inst.n)
    throw validation_error("configuration must assign every vertex a label");
  for (int v = 0; v < inst.n; ++v) {
    int a = cfg[v];
    if (a < 0 || a >= inst.q)
      throw validation_error("label of vertex " + std::to_string(v) + " is out of range");
    const auto& al = inst.allowed_labels[v];
    if (!std::binary_search(al.begin(), al.end(), a))
      throw validation_error("label of vertex " + std::to_string(v) +
                             " is outside its allowed set");
  }
}

double energy(const Instance& inst, const Configuration& cfg) {
  check_configuration(inst, cfg);
  double total = 0.0;
  for (int v = 0; v < inst.n; ++v) total += inst.vpot(v, cfg[v]);
  for (int e = 0; e < inst.edge_count(); ++e) {
    auto [u, v] = inst.edges[e];
    total += inst.epot(e, cfg[u], cfg[v]);
  }
  return total;
}

namespace {

std::vector<char> membership_mask(const Instance& inst, const std::vector<int>& U) {
  std::vector<char> in_u(inst.n, 0);
  for (int v : U) {
    if (v < 0 || v >= inst.n)
      throw parameter_error("U contains unknown vertex id " + std::to_string(v));
    in_u[v] = 1;
  }
  return in_u;
}

}  // namespace

double folded_energy(const Instance& inst, const Partition& part,
                     const std::vector<int>& U, const Configuration& cfg) {
  part.validate(inst);
  check_configuration(inst, cfg);
  const auto in_u = membership_mask(inst, U);
  double total = 0.0;
  for (int v = 0; v < inst.n; ++v)
    if (in_u[v]) total += inst.vpot(v, cfg[v]);
  for (int e = 0; e < inst.edge_count(); ++e) {
    auto [u, v] = inst.edges[e];
    double coeff = (in_u[u] ? part.alphas[e].first : 0.0) +
                   (in_u[v] ? part.alphas[e].second : 0.0);
    if (coeff != 0.0) total += coeff * inst.epot(e, cfg[u], cfg[v]);
  }
  return total;
}

double folded_vertex_value(const Instance& inst, const Partition& part, int v,
                           const Configuration& cfg) {
  double total = inst.vpot(v, cfg[v]);
  for (int e = 0; e < inst.edge_count(); ++e) {
    auto [a, b] = inst.edges[e];
    if (a == v)
      total += part.alphas[e].first * inst.epot(e, cfg[a], cfg[b]);
    else if (b == v)
      total += part.alphas[e].second * inst.epot(e, cfg[a], cfg[b]);
  }
  return total;
}

Instance to_undirected(const Instance& inst) {
  if (!inst.directed) throw parameter_error("to_undirected expects a directed instance");
  Instance out = inst;
  out.directed = false;
  out.edges.clear();
  out.edge_potentials.clear();

  std::map<std::pair<int, int>, int> index_of;  // canonical (min,max) -> output edge
  const int q = inst.q;
  for (int e = 0; e < inst.edge_count(); ++e) {
    auto [i, j] = inst.edges[e];
    const int u = std::min(i, j), v = std::max(i, j);
    auto it = index_of.find({u, v});
    if (it == index_of.end()) {
      it = index_of.emplace(std::pair{u, v}, out.edge_count()).first;
      out.edges.emplace_back(u, v);
      out.edge_potentials.emplace_back(q * q, 0.0);
    }
    auto& table = out.edge_potentials[it->second];
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        // Table rows follow the stored endpoint order: transpose when the
        // original arc ran against the canonical orientation.
        double contrib = (i == u) ? inst.epot(e, a, b) : inst.epot(e, b, a);
        table[a * q + b] += contrib;
      }
  }
  return out;
}

BalanceReport balance_report(const Instance& inst, const Partition& part,
                             std::uint64_t per_vertex_cap) {
  part.validate(inst);
  if (inst.has_negative_potential())
    throw domain_error("balance_report requires nonnegative potentials");

  // Incident edges and the undirected neighbor set per vertex.
  std::vector<std::vector<int>> incident(inst.n);
  for (int e = 0; e < inst.edge_count(); ++e) {
    incident[inst.edges[e].first].push_back(e);
    incident[inst.edges[e].second].push_back(e);
  }

  BalanceReport report;
  report.balancers.assign(inst.n, 0.0);
  report.maxima.assign(inst.n, 0.0);
  double alpha = 1.0;
  bool unbalanced = false;

  for (int v = 0; v < inst.n; ++v) {
    std::vector<int> scope{v};
    for (int e : incident[v]) {
      auto [a, b] = inst.edges[e];
      scope.push_back(a == v ? b : a);
    }
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());

    std::uint64_t count = 1;
    for (int u : scope) {
      count *= inst.allowed_labels[u].size();
      if (count > per_vertex_cap)
        throw capacity_error("closed-neighborhood enumeration of vertex " +
                             std::to_string(v) + " exceeds cap " +
                             std::to_string(per_vertex_cap));
    }

    // Odometer over the allowed labels of the closed neighborhood.
    std::vector<size_t> pos(scope.size(), 0);
    Configuration cfg;
    cfg.labels.assign(inst.n, 0);
    double lo = 0.0, hi = 0.0;
    bool first = true;
    bool more = true;
    while (more) {
      for (size_t t = 0; t < scope.size(); ++t)
        cfg.labels[scope[t]] = inst.allowed_labels[scope[t]][pos[t]];
      double f = inst.vpot(v, cfg[v]);
      for (int e : incident[v]) {
        auto [a, b] = inst.edges[e];
        double share = (a == v) ? part.alphas[e].first : part.alphas[e].second;
        f += share * inst.epot(e, cfg[a], cfg[b]);
      }
      if (first || f < lo) lo = f;
      if (first || f > hi) hi = f;
      first = false;

      more = false;
      for (size_t t = scope.size(); t-- > 0;) {
        if (++pos[t] < inst.allowed_labels[scope[t]].size()) {
          more = true;
          break;
        }
        pos[t] = 0;
      }
    }

    report.balancers[v] = lo;
    report.maxima[v] = hi;
    if (lo == 0.0) {
      if (hi > 0.0) unbalanced = true;
    } else {
      alpha = std::max(alpha, hi / lo);
    }
  }

  if (!unbalanced) report.alpha_star = alpha;
  return report;
}

}  // namespace layercut
