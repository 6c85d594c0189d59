#include "layercut/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "layercut/errors.hpp"
#include "layercut/parallel.hpp"
#include "layercut/treedecomp.hpp"
#include "subsolve.hpp"

namespace layercut {

double BallSet::d_max() const {
  double m = 0.0;
  for (double di : diameters) m = std::max(m, di);
  return m;
}

void BallSet::validate() const {
  if (d < 1) throw validation_error("ball set requires dimension d >= 1");
  if (centers.size() != diameters.size())
    throw validation_error("ball set needs one diameter per center");
  for (const auto& c : centers) {
    if (static_cast<int>(c.size()) != d)
      throw validation_error("ball center has the wrong dimension");
    for (double x : c)
      if (!std::isfinite(x)) throw validation_error("ball center is not finite");
  }
  for (double di : diameters)
    if (!(di > 0.0) || !std::isfinite(di))
      throw validation_error("ball diameters must be positive and finite");
}

namespace {

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t t = 0; t < a.size(); ++t) s += (a[t] - b[t]) * (a[t] - b[t]);
  return std::sqrt(s);
}

long long cell_of(double x, double origin, double cell) {
  const double t = (x - origin) / cell;
  const double r = std::round(t);
  if (std::abs(x - (origin + r * cell)) <= 1e-12)
    return static_cast<long long>(r) - 1;  // on a plane: lower cell
  return static_cast<long long>(std::floor(t));
}

int density_for_origin(const BallSet& balls, double cell,
                       const std::vector<double>& origin) {
  std::map<std::vector<long long>, int> count;
  int density = 0;
  std::vector<long long> idx(balls.d);
  for (int i = 0; i < balls.size(); ++i) {
    for (int a = 0; a < balls.d; ++a) idx[a] = cell_of(balls.centers[i][a], origin[a], cell);
    density = std::max(density, ++count[idx]);
  }
  return density;
}

}  // namespace

Graph intersection_graph(const BallSet& balls) {
  balls.validate();
  Graph g{balls.size(), {}};
  for (int i = 0; i < balls.size(); ++i)
    for (int j = i + 1; j < balls.size(); ++j)
      if (dist(balls.centers[i], balls.centers[j]) <=
          (balls.diameters[i] + balls.diameters[j]) / 2.0)
        g.edges.emplace_back(i, j);
  return g;
}

Graph interference_graph(const BallSet& balls) {
  balls.validate();
  Graph g{balls.size(), {}};
  for (int i = 0; i < balls.size(); ++i)
    for (int j = 0; j < balls.size(); ++j)
      if (i != j && dist(balls.centers[i], balls.centers[j]) <= balls.diameters[i] / 2.0)
        g.edges.emplace_back(i, j);
  return g;
}

GridDecomposition grid_decompose(const BallSet& balls, GeoMode mode,
                                 const std::vector<double>* origin) {
  balls.validate();
  GridDecomposition grid;
  grid.cell_size = mode == GeoMode::Intersection ? balls.d_max() : balls.d_max() / 2.0;
  if (grid.cell_size <= 0.0) grid.cell_size = 1.0;  // only for empty ball sets
  grid.origin.assign(balls.d, 0.0);
  if (origin) {
    if (static_cast<int>(origin->size()) != balls.d)
      throw parameter_error("grid origin has the wrong dimension");
    grid.origin = *origin;
  }

  std::map<std::vector<long long>, int> count;
  for (int i = 0; i < balls.size(); ++i) {
    std::vector<long long> idx(balls.d);
    for (int a = 0; a < balls.d; ++a)
      idx[a] = cell_of(balls.centers[i][a], grid.origin[a], grid.cell_size);
    grid.density = std::max(grid.density, ++count[idx]);
    grid.cell_index.push_back(std::move(idx));
  }
  return grid;
}

std::vector<double> search_origin(const BallSet& balls, GeoMode mode) {
  balls.validate();
  const double cell =
      mode == GeoMode::Intersection ? balls.d_max() : balls.d_max() / 2.0;
  std::vector<double> origin(balls.d, 0.0);
  if (balls.size() == 0) return origin;

  for (int a = 0; a < balls.d; ++a) {
    std::set<double> candidates{0.0};
    for (int i = 0; i < balls.size(); ++i) {
      double off = std::fmod(balls.centers[i][a], cell);
      if (off < 0) off += cell;
      candidates.insert(off);
    }
    double best_off = 0.0;
    int best_density = -1;
    for (double off : candidates) {
      std::vector<double> trial = origin;
      trial[a] = off;
      const int dens = density_for_origin(balls, cell, trial);
      if (best_density < 0 || dens < best_density) {
        best_density = dens;
        best_off = off;
      }
    }
    origin[a] = best_off;
  }
  return origin;
}

int geo_k_for_epsilon(double epsilon, int d) {
  if (d < 2) throw parameter_error("the geometric epsilon mapping needs d >= 2");
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw parameter_error("epsilon must lie in (0, 1)");
  const double rho = std::pow(1.0 - epsilon, 1.0 / (d - 1));
  return static_cast<int>(std::ceil(2.0 * rho / (1.0 - rho) - 1e-9));
}

namespace {

std::set<std::pair<int, int>> undirected_edge_set(const std::vector<std::pair<int, int>>& edges) {
  std::set<std::pair<int, int>> s;
  for (auto [u, v] : edges) s.insert(std::minmax(u, v));
  return s;
}

struct TupleOutcome {
  Configuration cfg;
  double energy = 0.0;
  double dp_sum = 0.0;
  std::vector<int> widths;
};

}  // namespace

ApproxResult geo_solve(const Instance& inst, const BallSet& balls,
                       const Partition& part, int k, Objective objective,
                       GeoMode mode, int threads, const std::vector<double>* origin) {
  inst.validate();
  part.validate(inst);
  balls.validate();
  if (inst.directed)
    throw parameter_error("geo_solve runs on undirected instances; apply "
                          "to_undirected first");
  if (k < 1) throw parameter_error("geo_solve requires k >= 1");
  if (inst.has_negative_potential())
    throw domain_error("geo_solve requires nonnegative potentials");
  if (inst.n != balls.size())
    throw validation_error("instance and ball set disagree on the vertex count");

  const Graph mode_graph = mode == GeoMode::Intersection ? intersection_graph(balls)
                                                         : interference_graph(balls);
  if (undirected_edge_set(inst.edges) != undirected_edge_set(mode_graph.edges))
    throw validation_error("instance edges do not match the geometric graph of "
                           "the ball set");

  double ratio;
  if (objective == Objective::Max) {
    ratio = std::pow(static_cast<double>(k) / (k + 2), balls.d - 1);
  } else {
    const BalanceReport report = balance_report(inst, part);
    if (!report.balanced())
      throw domain_error("geo_solve with MIN requires a balanced instance");
    ratio = std::pow(1.0 + 2.0 * (*report.alpha_star - 1.0) / (k + 2), balls.d - 1);
  }

  const GridDecomposition grid = grid_decompose(balls, mode, origin);
  const int m = k + 2;
  const int shift_axes = balls.d - 1;
  std::uint64_t tuple_count = 1;
  for (int a = 0; a < shift_axes; ++a) tuple_count *= m;
  if (tuple_count > 1000000)
    throw capacity_error("geo_solve would enumerate " + std::to_string(tuple_count) +
                         " shift tuples");

  auto residue = [&](long long c) { return static_cast<int>(((c % m) + m) % m); };

  std::vector<TupleOutcome> outcomes(tuple_count);
  parallel_for(static_cast<int>(tuple_count), threads, [&](int t) {
    // Decode tuple (axis 0 most significant) so ascending rank order is
    // ascending lexicographic order.
    std::vector<int> shifts(shift_axes, 0);
    {
      std::uint64_t rem = static_cast<std::uint64_t>(t);
      for (int a = shift_axes; a-- > 0;) {
        shifts[a] = static_cast<int>(rem % m);
        rem /= m;
      }
    }

    TupleOutcome out;
    out.cfg.labels.assign(inst.n, 0);
    for (int v = 0; v < inst.n; ++v) out.cfg.labels[v] = inst.allowed_labels[v][0];

    Graph remaining{inst.n, {}};
    std::vector<int> survivors;
    for (int e = 0; e < inst.edge_count(); ++e) {
      auto [u, v] = inst.edges[e];
      bool cut = false;
      for (int a = 0; a < shift_axes && !cut; ++a) {
        const long long cu = grid.cell_index[u][a], cv = grid.cell_index[v][a];
        if (cu == cv) continue;
        const int ru = residue(cu), rv = residue(cv);
        const int lo = shifts[a], hi = (shifts[a] + 1) % m;
        cut = (ru == lo && rv == hi) || (ru == hi && rv == lo);
      }
      if (!cut) {
        remaining.edges.push_back(inst.edges[e]);
        survivors.push_back(e);
      }
    }

    auto is_interior = [&](int v) {
      for (int a = 0; a < shift_axes; ++a) {
        const int r = residue(grid.cell_index[v][a]);
        if (r == shifts[a] || r == (shifts[a] + 1) % m) return false;
      }
      return true;
    };

    const auto comp = remaining.component_ids();
    int ncomp = 0;
    for (int v = 0; v < inst.n; ++v) ncomp = std::max(ncomp, comp[v] + 1);
    std::vector<std::vector<int>> comp_verts(ncomp);
    std::vector<std::vector<int>> comp_edges(ncomp);
    for (int v = 0; v < inst.n; ++v) comp_verts[comp[v]].push_back(v);
    for (int e : survivors) comp_edges[comp[inst.edges[e].first]].push_back(e);

    for (int c = 0; c < ncomp; ++c) {
      SubInstance sub = induce_subinstance(inst, part, comp_verts[c], comp_edges[c]);

      // Slab groups along the last axis, ordered by cell index.
      std::map<long long, std::vector<int>> slabs;
      for (size_t i = 0; i < sub.to_global.size(); ++i)
        slabs[grid.cell_index[sub.to_global[i]][balls.d - 1]].push_back(
            static_cast<int>(i));
      std::vector<std::vector<int>> groups;
      for (auto& [cell, members] : slabs) groups.push_back(std::move(members));

      const TreeDecomposition td = build_pd_from_slabs(sub.inst.graph(), groups);
      std::vector<int> local_u;
      for (int v : comp_verts[c])
        if (is_interior(v)) local_u.push_back(sub.to_local[v]);
      std::sort(local_u.begin(), local_u.end());

      DpResult dp;
      try {
        dp = dp_opt(sub.inst, td, sub.part, local_u, objective);
      } catch (const capacity_error& e) {
        throw capacity_error(std::string(e.what()) + " (grid density " +
                             std::to_string(grid.density) + ")");
      }
      out.dp_sum += dp.value;
      out.widths.push_back(td.width());
      for (size_t i = 0; i < sub.to_global.size(); ++i)
        out.cfg.labels[sub.to_global[i]] = dp.cfg.labels[i];
    }

    out.energy = energy(inst, out.cfg);
    outcomes[t] = std::move(out);
  });

  ApproxResult result;
  result.k = k;
  result.ratio_guarantee = ratio;
  int best = 0;
  for (std::uint64_t t = 0; t < tuple_count; ++t) {
    result.shift_energies.push_back(outcomes[t].energy);
    const bool better = objective == Objective::Max
                            ? outcomes[t].energy > outcomes[best].energy
                            : outcomes[t].energy < outcomes[best].energy;
    if (t > 0 && better) best = static_cast<int>(t);
  }
  result.cfg = outcomes[best].cfg;
  result.energy = outcomes[best].energy;
  result.dp_bound = outcomes[best].dp_sum;
  result.winning_shift.assign(shift_axes, 0);
  {
    std::uint64_t rem = static_cast<std::uint64_t>(best);
    for (int a = shift_axes; a-- > 0;) {
      result.winning_shift[a] = static_cast<int>(rem % m);
      rem /= m;
    }
  }
  result.achieved_widths = outcomes[best].widths;
  return result;
}

}  // namespace layercut
