#include "layercut/shifting.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

#include "layercut/errors.hpp"
#include "layercut/parallel.hpp"
#include "subsolve.hpp"

namespace layercut {

LayerAssignment bfs_layers(const Graph& g) {
  const auto adj = g.adjacency();
  LayerAssignment layers;
  layers.level.assign(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (layers.level[s] >= 0) continue;
    layers.roots.push_back(s);
    layers.level[s] = 0;
    std::queue<int> bfs;
    bfs.push(s);
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop();
      for (int w : adj[u])
        if (layers.level[w] < 0) {
          layers.level[w] = layers.level[u] + 1;
          bfs.push(w);
        }
    }
  }
  return layers;
}

ShiftPlan shift_split(const Graph& g, const LayerAssignment& layers, int k, int ell) {
  if (k < 1) throw parameter_error("shift_split requires k >= 1");
  const int m = k + 2;
  if (ell < 0 || ell >= m)
    throw parameter_error("shift offset must lie in [0, k+2)");

  ShiftPlan plan;
  plan.k = k;
  plan.ell = ell;
  const int lo = ell % m, hi = (ell + 1) % m;

  Graph remaining{g.n, {}};
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    const int ru = layers.level[u] % m, rv = layers.level[v] % m;
    const bool cut = layers.level[u] != layers.level[v] &&
                     ((ru == lo && rv == hi) || (ru == hi && rv == lo));
    if (cut)
      plan.deleted_edges.push_back(e);
    else
      remaining.edges.push_back(g.edges[e]);
  }

  const auto comp = remaining.component_ids();
  int ncomp = 0;
  for (int v = 0; v < g.n; ++v) ncomp = std::max(ncomp, comp[v] + 1);
  plan.components.assign(ncomp, {});
  plan.interior.assign(ncomp, {});
  plan.boundary.assign(ncomp, {});
  for (int v = 0; v < g.n; ++v) {
    plan.components[comp[v]].push_back(v);
    const int r = layers.level[v] % m;
    if (r == lo || r == hi)
      plan.boundary[comp[v]].push_back(v);
    else
      plan.interior[comp[v]].push_back(v);
  }
  return plan;
}

int baker_k_for_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw parameter_error("epsilon must lie in (0, 1)");
  // k/(k+2) >= 1-eps  <=>  k >= 2(1-eps)/eps; the slack absorbs the rounding
  // of decimal epsilons.
  return static_cast<int>(std::ceil(2.0 * (1.0 - epsilon) / epsilon - 1e-9));
}

namespace {

struct ShiftOutcome {
  Configuration cfg;
  double energy = 0.0;
  double dp_sum = 0.0;
  std::vector<int> widths;
};

void require_shift_preconditions(const Instance& inst, const Partition& part, int k) {
  inst.validate();
  part.validate(inst);
  if (inst.directed)
    throw parameter_error("shifting schemes run on undirected instances; "
                          "apply to_undirected first");
  if (inst.has_negative_potential())
    throw domain_error("shifting schemes require nonnegative potentials "
                       "(f_i >= 0 must hold for the chosen partition)");
  if (k < 1) throw parameter_error("shifting schemes require k >= 1");
}

ShiftOutcome solve_shift_plan(const Instance& inst, const Partition& part,
                              const ShiftPlan& plan, Objective objective) {
  ShiftOutcome out;
  out.cfg.labels.assign(inst.n, 0);
  for (int v = 0; v < inst.n; ++v) out.cfg.labels[v] = inst.allowed_labels[v][0];

  // Surviving edges grouped by component (both endpoints always agree).
  std::vector<int> comp_of(inst.n, -1);
  for (size_t c = 0; c < plan.components.size(); ++c)
    for (int v : plan.components[c]) comp_of[v] = static_cast<int>(c);
  std::vector<char> deleted(inst.edge_count(), 0);
  for (int e : plan.deleted_edges) deleted[e] = 1;
  std::vector<std::vector<int>> comp_edges(plan.components.size());
  for (int e = 0; e < inst.edge_count(); ++e) {
    if (deleted[e]) continue;
    comp_edges[comp_of[inst.edges[e].first]].push_back(e);
  }

  for (size_t c = 0; c < plan.components.size(); ++c) {
    SubInstance sub = induce_subinstance(inst, part, plan.components[c], comp_edges[c]);
    std::vector<int> local_u;
    for (int v : plan.interior[c]) local_u.push_back(sub.to_local[v]);
    std::sort(local_u.begin(), local_u.end());

    const TreeDecomposition td = build_td(sub.inst.graph());
    DpResult dp;
    try {
      dp = dp_opt(sub.inst, td, sub.part, local_u, objective);
    } catch (const capacity_error& e) {
      throw capacity_error(std::string(e.what()) + " (shift " +
                           std::to_string(plan.ell) + ", component " +
                           std::to_string(c) + ")");
    }
    out.dp_sum += dp.value;
    out.widths.push_back(td.width());
    for (size_t i = 0; i < sub.to_global.size(); ++i)
      out.cfg.labels[sub.to_global[i]] = dp.cfg.labels[i];
  }
  out.energy = energy(inst, out.cfg);
  return out;
}

ApproxResult best_shift(const Instance& inst, const Partition& part, int k,
                        Objective objective, double ratio, int threads) {
  const LayerAssignment layers = bfs_layers(inst.graph());
  const int shifts = k + 2;
  std::vector<ShiftOutcome> outcomes(shifts);
  parallel_for(shifts, threads, [&](int ell) {
    outcomes[ell] = solve_shift_plan(inst, part,
                                     shift_split(inst.graph(), layers, k, ell),
                                     objective);
  });

  ApproxResult result;
  result.k = k;
  result.ratio_guarantee = ratio;
  int best = 0;
  for (int ell = 0; ell < shifts; ++ell) {
    result.shift_energies.push_back(outcomes[ell].energy);
    const bool better = objective == Objective::Max
                            ? outcomes[ell].energy > outcomes[best].energy
                            : outcomes[ell].energy < outcomes[best].energy;
    if (ell > 0 && better) best = ell;
  }
  result.cfg = outcomes[best].cfg;
  result.energy = outcomes[best].energy;
  result.dp_bound = outcomes[best].dp_sum;
  result.winning_shift = {best};
  result.achieved_widths = outcomes[best].widths;
  return result;
}

}  // namespace

ApproxResult baker_max(const Instance& inst, const Partition& part, int k,
                       int threads) {
  require_shift_preconditions(inst, part, k);
  return best_shift(inst, part, k, Objective::Max,
                    static_cast<double>(k) / (k + 2), threads);
}

ApproxResult baker_min_balanced(const Instance& inst, const Partition& part, int k,
                                int threads) {
  require_shift_preconditions(inst, part, k);
  const BalanceReport report = balance_report(inst, part);
  if (!report.balanced())
    throw domain_error(
        "instance is unbalanced under this partition (some f_i has balancer 0 "
        "but positive maximum); min-sum of unbalanced f_i admits no PTAS");
  return best_shift(inst, part, k, Objective::Min,
                    1.0 + 2.0 * (*report.alpha_star - 1.0) / (k + 2), threads);
}

namespace {

// Product-mode charges are neighborhood-local, so the component graph gets
// every closed neighborhood of U turned into a clique before building the
// decomposition; the covering bag then always exists.
DpResult product_dp(const SubInstance& sub, const std::vector<int>& local_u,
                    int max_degree, int* width_out) {
  std::vector<std::vector<int>> nbrs(sub.inst.n);
  for (auto [u, v] : sub.inst.edges) {
    nbrs[u].push_back(v);
    nbrs[v].push_back(u);
  }
  for (auto& lst : nbrs) {
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
  }

  std::vector<char> in_u(sub.inst.n, 0);
  for (int v : local_u) in_u[v] = 1;

  std::vector<Charge> charges;
  Graph augmented = sub.inst.graph();
  std::set<std::pair<int, int>> aug_edges(augmented.edges.begin(), augmented.edges.end());
  for (int v = 0; v < sub.inst.n; ++v) {
    if (!in_u[v]) continue;
    if (static_cast<int>(nbrs[v].size()) > max_degree)
      throw capacity_error("product mode supports vertex degrees up to " +
                           std::to_string(max_degree));
    std::vector<int> scope = nbrs[v];
    scope.push_back(v);
    std::sort(scope.begin(), scope.end());

    for (size_t a = 0; a < scope.size(); ++a)
      for (size_t b = a + 1; b < scope.size(); ++b) {
        std::pair<int, int> key{scope[a], scope[b]};
        std::pair<int, int> rkey{scope[b], scope[a]};
        if (!aug_edges.count(key) && !aug_edges.count(rkey)) {
          aug_edges.insert(key);
          augmented.edges.push_back(key);
        }
      }

    // log f_v over the scope's allowed labelings.
    Charge c;
    c.scope = scope;
    std::vector<size_t> pos(scope.size(), 0);
    Configuration cfg;
    cfg.labels.assign(sub.inst.n, 0);
    bool more = true;
    while (more) {
      for (size_t t = 0; t < scope.size(); ++t)
        cfg.labels[scope[t]] = sub.inst.allowed_labels[scope[t]][pos[t]];
      double f = folded_vertex_value(sub.inst, sub.part, v, cfg);
      if (f < 1.0)
        throw domain_error("max_product requires every f_i >= 1");
      c.table.push_back(std::log(f));
      more = false;
      for (size_t t = scope.size(); t-- > 0;) {
        if (++pos[t] < sub.inst.allowed_labels[scope[t]].size()) {
          more = true;
          break;
        }
        pos[t] = 0;
      }
    }
    charges.push_back(std::move(c));
  }

  const TreeDecomposition td = build_td(augmented);
  if (width_out) *width_out = td.width();
  return dp_charges(sub.inst, td, charges, Objective::Max);
}

}  // namespace

ApproxResult max_product(const Instance& inst, const Partition& part, int k,
                         int threads) {
  require_shift_preconditions(inst, part, k);
  const BalanceReport report = balance_report(inst, part);
  for (int v = 0; v < inst.n; ++v)
    if (report.balancers[v] < 1.0)
      throw domain_error("max_product requires every f_i >= 1; vertex " +
                         std::to_string(v) + " has balancer " +
                         std::to_string(report.balancers[v]));

  const LayerAssignment layers = bfs_layers(inst.graph());
  const int shifts = k + 2;
  std::vector<ShiftOutcome> outcomes(shifts);
  parallel_for(shifts, threads, [&](int ell) {
    const ShiftPlan plan = shift_split(inst.graph(), layers, k, ell);
    ShiftOutcome out;
    out.cfg.labels.assign(inst.n, 0);
    for (int v = 0; v < inst.n; ++v) out.cfg.labels[v] = inst.allowed_labels[v][0];

    std::vector<int> comp_of(inst.n, -1);
    for (size_t c = 0; c < plan.components.size(); ++c)
      for (int v : plan.components[c]) comp_of[v] = static_cast<int>(c);
    std::vector<char> deleted(inst.edge_count(), 0);
    for (int e : plan.deleted_edges) deleted[e] = 1;
    std::vector<std::vector<int>> comp_edges(plan.components.size());
    for (int e = 0; e < inst.edge_count(); ++e)
      if (!deleted[e]) comp_edges[comp_of[inst.edges[e].first]].push_back(e);

    double log_sum = 0.0;
    for (size_t c = 0; c < plan.components.size(); ++c) {
      SubInstance sub =
          induce_subinstance(inst, part, plan.components[c], comp_edges[c]);
      std::vector<int> local_u;
      for (int v : plan.interior[c]) local_u.push_back(sub.to_local[v]);
      std::sort(local_u.begin(), local_u.end());
      int width = -1;
      DpResult dp = product_dp(sub, local_u, 8, &width);
      log_sum += dp.value;
      out.widths.push_back(width);
      for (size_t i = 0; i < sub.to_global.size(); ++i)
        out.cfg.labels[sub.to_global[i]] = dp.cfg.labels[i];
    }
    out.dp_sum = log_sum;
    double product = 1.0;
    for (int v = 0; v < inst.n; ++v)
      product *= folded_vertex_value(inst, part, v, out.cfg);
    out.energy = product;
    outcomes[ell] = std::move(out);
  });

  ApproxResult result;
  result.k = k;
  result.ratio_guarantee = static_cast<double>(k) / (k + 2);
  int best = 0;
  for (int ell = 0; ell < shifts; ++ell) {
    result.shift_energies.push_back(outcomes[ell].energy);
    if (ell > 0 && outcomes[ell].energy > outcomes[best].energy) best = ell;
  }
  result.cfg = outcomes[best].cfg;
  result.energy = outcomes[best].energy;
  result.dp_bound = std::exp(outcomes[best].dp_sum);
  result.winning_shift = {best};
  result.achieved_widths = outcomes[best].widths;
  return result;
}

}  // namespace layercut
