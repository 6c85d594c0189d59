#include "layercut/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "layercut/errors.hpp"
#include "layercut/oracle.hpp"
#include "layercut/parallel.hpp"

namespace layercut {

Instance encode_max2csp(int q, int variables,
                        const std::vector<Csp2Constraint>& constraints) {
  Instance inst = Instance::make(variables, q);
  std::map<std::pair<int, int>, int> edge_of;
  for (const auto& c : constraints) {
    if (c.weight < 0) throw domain_error("constraint weights must be nonnegative");
    if (static_cast<int>(c.satisfied.size()) != q * q)
      throw validation_error("constraint table must have q*q entries");
    if (c.u == c.v) throw validation_error("constraint endpoints must differ");
    const int u = std::min(c.u, c.v), v = std::max(c.u, c.v);
    auto it = edge_of.find({u, v});
    if (it == edge_of.end()) {
      it = edge_of.emplace(std::pair{u, v}, inst.edge_count()).first;
      inst.add_edge(u, v, std::vector<double>(q * q, 0.0));
    }
    auto& table = inst.edge_potentials[it->second];
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        const bool sat = (c.u == u) ? c.satisfied[a * q + b] : c.satisfied[b * q + a];
        if (sat) table[a * q + b] += c.weight;
      }
  }
  inst.validate();
  return inst;
}

namespace {

std::vector<double> cut_table(int q, double w) {
  std::vector<double> table(q * q, w);
  for (int a = 0; a < q; ++a) table[a * q + a] = 0.0;
  return table;
}

}  // namespace

Instance encode_maxcut(int n, const std::vector<WeightedEdge>& edges) {
  Instance inst = Instance::make(n, 2);
  for (const auto& e : edges) {
    if (e.w < 0) throw domain_error("cut weights must be nonnegative");
    inst.add_edge(e.u, e.v, cut_table(2, e.w));
  }
  inst.validate();
  return inst;
}

Instance encode_maxdicut(int n, const std::vector<WeightedEdge>& arcs) {
  Instance inst = Instance::make(n, 2, true);
  for (const auto& e : arcs) {
    if (e.w < 0) throw domain_error("cut weights must be nonnegative");
    std::vector<double> table(4, 0.0);
    table[1 * 2 + 0] = e.w;  // pays only when u is labeled 1 and v labeled 0
    inst.add_edge(e.u, e.v, table);
  }
  inst.validate();
  return inst;
}

MaxKCutResult solve_maxkcut(int n, const std::vector<WeightedEdge>& edges,
                            const MaxKCutOptions& options) {
  const int k = options.k_cut;
  if (k < 2 || k > n)
    throw parameter_error("MAX k-CUT requires 2 <= k <= n");

  std::uint64_t tuples = 1;
  for (int t = 0; t < k; ++t) {
    tuples *= static_cast<std::uint64_t>(n - t);
    if (tuples > options.tuple_cap)
      throw capacity_error("terminal enumeration exceeds cap " +
                           std::to_string(options.tuple_cap) +
                           "; lower k, raise the cap, or use unordered mode");
  }
  if (options.unordered) {
    for (int t = 1; t <= k; ++t) tuples /= t;
  }

  Instance base = Instance::make(n, k);
  for (const auto& e : edges) {
    if (e.w < 0) throw domain_error("cut weights must be nonnegative");
    base.add_edge(e.u, e.v, cut_table(k, e.w));
  }
  base.validate();

  // Materialize terminal tuples in lexicographic order so the deterministic
  // best-of reduction (value, then tuple rank) is order-independent.
  std::vector<std::vector<int>> terminal_sets;
  std::vector<int> tuple(k, 0);
  std::vector<char> used(n, 0);
  auto emit_ordered = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      terminal_sets.push_back(tuple);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      tuple[depth] = v;
      self(self, depth + 1);
      used[v] = 0;
    }
  };
  auto emit_unordered = [&](auto&& self, int depth, int from) -> void {
    if (depth == k) {
      terminal_sets.push_back(tuple);
      return;
    }
    for (int v = from; v < n; ++v) {
      tuple[depth] = v;
      self(self, depth + 1, v + 1);
    }
  };
  if (options.unordered)
    emit_unordered(emit_unordered, 0, 0);
  else
    emit_ordered(emit_ordered, 0);

  struct Candidate {
    double value;
    std::vector<int> labels;
  };
  std::vector<Candidate> results(terminal_sets.size());
  parallel_for(static_cast<int>(terminal_sets.size()), options.threads, [&](int t) {
    Instance inst = base;
    for (int slot = 0; slot < k; ++slot)
      inst.allowed_labels[terminal_sets[t][slot]] = {slot};
    if (options.backend == KCutBackend::Oracle) {
      OracleResult r = exact_opt(inst, Objective::Max);
      results[t] = {r.value, r.cfg.labels};
    } else {
      ApproxResult r = baker_max(inst, Partition::uniform(inst.edge_count()),
                                 options.baker_k);
      results[t] = {r.energy, r.cfg.labels};
    }
  });

  MaxKCutResult best;
  for (size_t t = 0; t < results.size(); ++t) {
    if (t == 0 || results[t].value > best.value) {
      best.value = results[t].value;
      best.labels = results[t].labels;
      best.terminals = terminal_sets[t];
    }
  }
  return best;
}

int lattice_edge_count(const std::vector<int>& dims) {
  int total = 1;
  for (int d : dims) total *= d;
  int edges = 0;
  for (size_t a = 0; a < dims.size(); ++a)
    if (dims[a] > 1) edges += total / dims[a] * (dims[a] - 1);
  return edges;
}

std::pair<Instance, double> encode_edwards_anderson(const std::vector<int>& dims,
                                                    const std::vector<double>& couplings,
                                                    double field) {
  if (field != 0.0)
    throw parameter_error("only the zero-field model reduces to MAX-CUT");
  if (dims.empty()) throw parameter_error("lattice needs at least one dimension");
  for (int d : dims)
    if (d < 1) throw parameter_error("lattice dimensions must be positive");

  int total = 1;
  for (int d : dims) total *= d;
  const int m = lattice_edge_count(dims);
  if (!(couplings.size() == 1 || static_cast<int>(couplings.size()) == m))
    throw parameter_error("expected 1 or " + std::to_string(m) + " couplings");

  // Row-major vertex ids; strides per axis.
  std::vector<int> stride(dims.size(), 1);
  for (size_t a = dims.size() - 1; a-- > 0;) stride[a] = stride[a + 1] * dims[a + 1];

  Instance inst = Instance::make(total, 2);
  double c_total = 0.0;
  int edge_no = 0;
  std::vector<int> coord(dims.size(), 0);
  for (int v = 0; v < total; ++v) {
    int rem = v;
    for (size_t a = 0; a < dims.size(); ++a) {
      coord[a] = rem / stride[a];
      rem %= stride[a];
    }
    for (size_t a = 0; a < dims.size(); ++a) {
      if (coord[a] + 1 >= dims[a]) continue;
      const double j = couplings.size() == 1 ? couplings[0] : couplings[edge_no];
      ++edge_no;
      if (!(j > 0)) throw domain_error("ferromagnetic couplings must be positive");
      inst.add_edge(v, v + stride[a], cut_table(2, j));
      c_total += j;
    }
  }
  inst.validate();
  return {std::move(inst), c_total};
}

std::vector<int> spins_from_labels(const Configuration& cfg) {
  std::vector<int> spins(cfg.labels.size());
  for (size_t i = 0; i < cfg.labels.size(); ++i) spins[i] = cfg.labels[i] ? 1 : -1;
  return spins;
}

std::vector<double> potts_table(int q, double w) {
  if (w < 0) throw domain_error("Potts weight must be nonnegative");
  return cut_table(q, w);
}

std::vector<double> truncated_abs_table(int q, double kappa) {
  if (!(kappa > 0)) throw domain_error("truncation threshold must be positive");
  std::vector<double> table(q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      table[a * q + b] = std::min(kappa, static_cast<double>(std::abs(a - b)));
  return table;
}

std::vector<double> truncated_quad_table(int q, double kappa) {
  if (!(kappa > 0)) throw domain_error("truncation threshold must be positive");
  std::vector<double> table(q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      table[a * q + b] = std::min(kappa, static_cast<double>((a - b) * (a - b)));
  return table;
}

std::vector<double> data_term(int q, double p) {
  std::vector<double> values(q);
  for (int a = 0; a < q; ++a) values[a] = (a - p) * (a - p);
  return values;
}

}  // namespace layercut
