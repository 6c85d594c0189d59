#include "layercut/dp.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "layercut/errors.hpp"

namespace layercut {

std::uint64_t default_table_cap() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("LAYERCUT_TABLE_CAP")) {
      char* end = nullptr;
      unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && parsed > 0) return static_cast<std::uint64_t>(parsed);
    }
    return static_cast<std::uint64_t>(100000000);
  }();
  return cap;
}

namespace {

struct RootedTree {
  std::vector<int> parent;           // -1 at root
  std::vector<std::vector<int>> children;
  std::vector<int> postorder;        // children before parents
  std::vector<int> depth;
};

RootedTree root_tree(const TreeDecomposition& td) {
  const int nb = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> adj(nb);
  for (auto [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  RootedTree t;
  t.parent.assign(nb, -1);
  t.children.assign(nb, {});
  t.depth.assign(nb, 0);
  std::vector<int> stack{td.root};
  std::vector<int> preorder;
  std::vector<char> seen(nb, 0);
  seen[td.root] = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    preorder.push_back(i);
    for (int j : adj[i])
      if (!seen[j]) {
        seen[j] = 1;
        t.parent[j] = i;
        t.depth[j] = t.depth[i] + 1;
        t.children[i].push_back(j);
        stack.push_back(j);
      }
  }
  t.postorder.assign(preorder.rbegin(), preorder.rend());
  return t;
}

// Per-bag enumeration bookkeeping: configurations are mixed-radix numbers
// over allowed-label positions, first bag vertex most significant, so
// ascending index order is ascending lexicographic label order.
struct BagSpace {
  std::vector<int> verts;    // sorted
  std::vector<int> radix;    // allowed-set size per vertex
  std::vector<std::uint64_t> stride;
  std::uint64_t size = 1;
};

BagSpace make_space(const std::vector<int>& verts, const Instance& inst) {
  BagSpace s;
  s.verts = verts;
  const size_t k = verts.size();
  s.radix.resize(k);
  s.stride.resize(k);
  for (size_t t = 0; t < k; ++t) s.radix[t] = static_cast<int>(inst.allowed_labels[verts[t]].size());
  std::uint64_t acc = 1;
  for (size_t t = k; t-- > 0;) {
    s.stride[t] = acc;
    acc *= s.radix[t];
  }
  s.size = acc;
  return s;
}

}  // namespace

DpResult dp_charges(const Instance& inst, const TreeDecomposition& td,
                    const std::vector<Charge>& charges, Objective objective,
                    std::uint64_t table_cap) {
  if (auto violation = validate_td(inst.graph(), td))
    throw validation_error("invalid tree decomposition: " + violation->message);

  const int nb = static_cast<int>(td.bags.size());
  const bool maximize = objective == Objective::Max;

  std::uint64_t total_entries = 0;
  std::vector<BagSpace> space(nb);
  for (int i = 0; i < nb; ++i) {
    space[i] = make_space(td.bags[i], inst);
    total_entries += space[i].size;
    if (total_entries > table_cap)
      throw capacity_error("DP table would exceed cap " + std::to_string(table_cap) +
                           " entries (bag of size " +
                           std::to_string(td.bags[i].size()) + ")");
  }

  const RootedTree tree = root_tree(td);

  // Position of each vertex inside each bag holding it.
  std::vector<std::vector<int>> pos_in_bag(nb);
  std::vector<std::vector<char>> bag_has(nb, std::vector<char>(inst.n, 0));
  for (int i = 0; i < nb; ++i) {
    pos_in_bag[i].assign(inst.n, -1);
    for (size_t t = 0; t < td.bags[i].size(); ++t) {
      pos_in_bag[i][td.bags[i][t]] = static_cast<int>(t);
      bag_has[i][td.bags[i][t]] = 1;
    }
  }

  // Assign each charge to the topmost bag containing its whole scope; the
  // intersection of the scope vertices' subtrees is itself a subtree, so the
  // shallowest qualifying bag is unique.
  std::vector<std::vector<int>> charges_at(nb);
  for (size_t c = 0; c < charges.size(); ++c) {
    int best = -1;
    for (int i = 0; i < nb; ++i) {
      bool contains = true;
      for (int v : charges[c].scope)
        if (v < 0 || v >= inst.n || !bag_has[i][v]) {
          contains = false;
          break;
        }
      if (contains && (best < 0 || tree.depth[i] < tree.depth[best])) best = i;
    }
    if (best < 0)
      throw capacity_error("charge scope fits in no bag of the decomposition");
    charges_at[best].push_back(static_cast<int>(c));
  }

  // Bottom-up sweep. value[i] holds the best objective of bag i's subtree as
  // a function of bag i's configuration; choice[i][sep_index] remembers the
  // winning child configuration per separator assignment.
  std::vector<std::vector<double>> value(nb);
  std::vector<std::vector<std::uint64_t>> choice(nb);
  std::vector<BagSpace> sep_space(nb);       // X_i ∩ X_parent(i)
  std::vector<std::vector<int>> sep_pos(nb); // separator vertex -> slot in own bag

  for (int i : tree.postorder) {
    const BagSpace& sp = space[i];

    // Messages from children: best child-subtree value per separator config.
    struct Msg {
      const BagSpace* sep;
      std::vector<double> best;
    };
    std::vector<Msg> msgs;
    msgs.reserve(tree.children[i].size());
    for (int ch : tree.children[i]) {
      std::vector<int> sep_verts;
      for (int v : td.bags[ch])
        if (bag_has[i][v]) sep_verts.push_back(v);
      sep_space[ch] = make_space(sep_verts, inst);
      sep_pos[ch].assign(sep_verts.size(), -1);
      for (size_t t = 0; t < sep_verts.size(); ++t)
        sep_pos[ch][t] = pos_in_bag[ch][sep_verts[t]];

      const BagSpace& cs = space[ch];
      std::vector<double> best(sep_space[ch].size,
                               maximize ? -std::numeric_limits<double>::infinity()
                                        : std::numeric_limits<double>::infinity());
      choice[ch].assign(sep_space[ch].size, 0);
      std::vector<int> digits(cs.verts.size(), 0);
      for (std::uint64_t idx = 0; idx < cs.size; ++idx) {
        std::uint64_t sep_idx = 0;
        for (size_t t = 0; t < sep_pos[ch].size(); ++t)
          sep_idx += static_cast<std::uint64_t>(digits[sep_pos[ch][t]]) *
                     sep_space[ch].stride[t];
        double v = value[ch][idx];
        if (maximize ? v > best[sep_idx] : v < best[sep_idx]) {
          best[sep_idx] = v;
          choice[ch][sep_idx] = idx;
        }
        for (size_t t = cs.verts.size(); t-- > 0;) {
          if (++digits[t] < cs.radix[t]) break;
          digits[t] = 0;
        }
      }
      value[ch].clear();
      value[ch].shrink_to_fit();
      msgs.push_back(Msg{&sep_space[ch], std::move(best)});
    }

    // Precompute, per charge at this bag, which bag slot feeds each scope
    // digit; the charge table index is then a dot product with the digits.
    struct LocalCharge {
      const Charge* charge;
      std::vector<std::pair<int, std::uint64_t>> slot_stride;
    };
    std::vector<LocalCharge> local;
    local.reserve(charges_at[i].size());
    for (int c : charges_at[i]) {
      LocalCharge lc{&charges[c], {}};
      std::uint64_t acc = 1;
      std::vector<std::uint64_t> strides(charges[c].scope.size());
      for (size_t t = charges[c].scope.size(); t-- > 0;) {
        strides[t] = acc;
        acc *= inst.allowed_labels[charges[c].scope[t]].size();
      }
      for (size_t t = 0; t < charges[c].scope.size(); ++t)
        lc.slot_stride.emplace_back(pos_in_bag[i][charges[c].scope[t]], strides[t]);
      local.push_back(std::move(lc));
    }
    std::vector<std::vector<std::pair<int, std::uint64_t>>> msg_proj(msgs.size());
    for (size_t m = 0; m < msgs.size(); ++m)
      for (size_t t = 0; t < msgs[m].sep->verts.size(); ++t)
        msg_proj[m].emplace_back(pos_in_bag[i][msgs[m].sep->verts[t]],
                                 msgs[m].sep->stride[t]);

    value[i].assign(sp.size, 0.0);
    std::vector<int> digits(sp.verts.size(), 0);
    for (std::uint64_t idx = 0; idx < sp.size; ++idx) {
      double total = 0.0;
      for (const LocalCharge& lc : local) {
        std::uint64_t cidx = 0;
        for (auto [slot, stride] : lc.slot_stride)
          cidx += static_cast<std::uint64_t>(digits[slot]) * stride;
        total += lc.charge->table[cidx];
      }
      for (size_t m = 0; m < msgs.size(); ++m) {
        std::uint64_t sep_idx = 0;
        for (auto [slot, stride] : msg_proj[m])
          sep_idx += static_cast<std::uint64_t>(digits[slot]) * stride;
        total += msgs[m].best[sep_idx];
      }
      value[i][idx] = total;

      for (size_t t = sp.verts.size(); t-- > 0;) {
        if (++digits[t] < sp.radix[t]) break;
        digits[t] = 0;
      }
    }
  }

  // Pick the root configuration (first strict improvement over ascending
  // indices = lexicographically smallest optimum) and walk back down.
  DpResult result;
  result.cfg.labels.assign(inst.n, -1);
  const int r = td.root;
  std::uint64_t best_idx = 0;
  double best_val = space[r].size > 0 ? value[r][0] : 0.0;
  for (std::uint64_t idx = 1; idx < space[r].size; ++idx) {
    double v = value[r][idx];
    if (maximize ? v > best_val : v < best_val) {
      best_val = v;
      best_idx = idx;
    }
  }
  result.value = best_val;

  std::vector<std::pair<int, std::uint64_t>> stack{{r, best_idx}};
  while (!stack.empty()) {
    auto [i, idx] = stack.back();
    stack.pop_back();
    const BagSpace& sp = space[i];
    std::vector<int> digits(sp.verts.size());
    std::uint64_t rem = idx;
    for (size_t t = 0; t < sp.verts.size(); ++t) {
      digits[t] = static_cast<int>(rem / sp.stride[t]);
      rem %= sp.stride[t];
      result.cfg.labels[sp.verts[t]] = inst.allowed_labels[sp.verts[t]][digits[t]];
    }
    for (int ch : tree.children[i]) {
      std::uint64_t sep_idx = 0;
      for (size_t t = 0; t < sep_space[ch].verts.size(); ++t) {
        int p = digits[pos_in_bag[i][sep_space[ch].verts[t]]];
        sep_idx += static_cast<std::uint64_t>(p) * sep_space[ch].stride[t];
      }
      stack.emplace_back(ch, choice[ch][sep_idx]);
    }
  }

  // Vertices missing from every bag cannot occur (coverage is validated), but
  // guard the label fill anyway.
  for (int v = 0; v < inst.n; ++v)
    if (result.cfg.labels[v] < 0) result.cfg.labels[v] = inst.allowed_labels[v][0];

  return result;
}

DpResult dp_opt(const Instance& inst, const TreeDecomposition& td,
                const Partition& part, const std::vector<int>& U,
                Objective objective, std::uint64_t table_cap) {
  inst.validate();
  part.validate(inst);
  std::vector<char> in_u(inst.n, 0);
  for (int v : U) {
    if (v < 0 || v >= inst.n)
      throw parameter_error("U contains unknown vertex id " + std::to_string(v));
    in_u[v] = 1;
  }

  std::vector<Charge> charges;
  for (int v = 0; v < inst.n; ++v) {
    if (!in_u[v]) continue;
    Charge c;
    c.scope = {v};
    for (int a : inst.allowed_labels[v]) c.table.push_back(inst.vpot(v, a));
    charges.push_back(std::move(c));
  }
  for (int e = 0; e < inst.edge_count(); ++e) {
    auto [u, v] = inst.edges[e];
    const double coeff = (in_u[u] ? part.alphas[e].first : 0.0) +
                         (in_u[v] ? part.alphas[e].second : 0.0);
    if (coeff == 0.0) continue;
    Charge c;
    c.scope = {u, v};
    for (int a : inst.allowed_labels[u])
      for (int b : inst.allowed_labels[v]) c.table.push_back(coeff * inst.epot(e, a, b));
    charges.push_back(std::move(c));
  }
  return dp_charges(inst, td, charges, objective, table_cap);
}

}  // namespace layercut
