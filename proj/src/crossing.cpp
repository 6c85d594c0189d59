#include "layercut/crossing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "layercut/errors.hpp"
#include "layercut/parallel.hpp"
#include "layercut/treedecomp.hpp"
#include "subsolve.hpp"

namespace layercut {

namespace {

using Point = std::array<double, 2>;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool within_box(const Point& p, const Point& a, const Point& b) {
  return p[0] >= std::min(a[0], b[0]) - 1e-12 && p[0] <= std::max(a[0], b[0]) + 1e-12 &&
         p[1] >= std::min(a[1], b[1]) - 1e-12 && p[1] <= std::max(a[1], b[1]) + 1e-12;
}

std::string edge_str(const std::pair<int, int>& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

int floor_div(int a, int b) {
  int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Drawing compute_crossings(const std::vector<std::array<double, 2>>& coords,
                          const std::vector<std::pair<int, int>>& edges) {
  Drawing drawing;
  drawing.coords = coords;

  const int n = static_cast<int>(coords.size());
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (std::abs(coords[u][0] - coords[v][0]) <= 1e-12 &&
          std::abs(coords[u][1] - coords[v][1]) <= 1e-12)
        throw domain_error("degenerate drawing: vertices " + std::to_string(u) +
                           " and " + std::to_string(v) + " coincide");

  // No vertex may sit in the interior of an edge.
  for (size_t e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    for (int w = 0; w < n; ++w) {
      if (w == a || w == b) continue;
      if (std::abs(cross(coords[a], coords[b], coords[w])) <= 1e-12 &&
          within_box(coords[w], coords[a], coords[b]))
        throw domain_error("degenerate drawing: vertex " + std::to_string(w) +
                           " lies on edge " + edge_str(edges[e]));
    }
  }

  std::vector<int> per_edge(edges.size(), 0);
  for (size_t e1 = 0; e1 < edges.size(); ++e1) {
    for (size_t e2 = e1 + 1; e2 < edges.size(); ++e2) {
      auto [a, b] = edges[e1];
      auto [c, d] = edges[e2];
      const bool share = a == c || a == d || b == c || b == d;
      const Point &pa = coords[a], &pb = coords[b], &pc = coords[c], &pd = coords[d];
      const double o1 = cross(pa, pb, pc), o2 = cross(pa, pb, pd);
      const double o3 = cross(pc, pd, pa), o4 = cross(pc, pd, pb);

      if (share) {
        // Segments meeting at a vertex must not overlap beyond it.
        if (std::abs(o1) <= 1e-12 && std::abs(o2) <= 1e-12) {
          const int shared = (a == c || a == d) ? a : b;
          const int other1 = shared == a ? b : a;
          const int other2 = shared == c ? d : c;
          const double dot =
              (coords[other1][0] - coords[shared][0]) * (coords[other2][0] - coords[shared][0]) +
              (coords[other1][1] - coords[shared][1]) * (coords[other2][1] - coords[shared][1]);
          if (dot > 0)
            throw domain_error("degenerate drawing: edges " + edge_str(edges[e1]) +
                               " and " + edge_str(edges[e2]) + " overlap");
        }
        continue;
      }

      if (std::abs(o1) <= 1e-12 || std::abs(o2) <= 1e-12 || std::abs(o3) <= 1e-12 ||
          std::abs(o4) <= 1e-12) {
        // An endpoint touching the other segment's line: degenerate only if
        // it actually lies on the segment.
        const bool touches = (std::abs(o1) <= 1e-12 && within_box(pc, pa, pb)) ||
                             (std::abs(o2) <= 1e-12 && within_box(pd, pa, pb)) ||
                             (std::abs(o3) <= 1e-12 && within_box(pa, pc, pd)) ||
                             (std::abs(o4) <= 1e-12 && within_box(pb, pc, pd));
        if (touches)
          throw domain_error("degenerate drawing: edges " + edge_str(edges[e1]) +
                             " and " + edge_str(edges[e2]) + " touch without crossing");
        continue;
      }

      if ((o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0)) {
        SegmentCrossing x;
        x.edge_a = static_cast<int>(e1);
        x.edge_b = static_cast<int>(e2);
        x.param_a = o3 / (o3 - o4);
        const double denom = o1 - o2;
        x.param_b = o1 / denom;
        x.point = {pa[0] + x.param_a * (pb[0] - pa[0]),
                   pa[1] + x.param_a * (pb[1] - pa[1])};
        drawing.crossings.push_back(x);
        ++per_edge[e1];
        ++per_edge[e2];
      }
    }
  }

  for (size_t i = 0; i < drawing.crossings.size(); ++i)
    for (size_t j = i + 1; j < drawing.crossings.size(); ++j) {
      const auto &p = drawing.crossings[i].point, &r = drawing.crossings[j].point;
      if (std::abs(p[0] - r[0]) <= 1e-12 && std::abs(p[1] - r[1]) <= 1e-12)
        throw domain_error("degenerate drawing: two crossings share a point");
    }

  for (int c : per_edge) drawing.phi = std::max(drawing.phi, c);
  return drawing;
}

Planarization planarize(const Graph& g, const Drawing& drawing) {
  if (static_cast<int>(drawing.coords.size()) != g.n)
    throw validation_error("drawing has the wrong number of vertex points");
  for (const auto& x : drawing.crossings)
    if (x.edge_a < 0 || x.edge_a >= g.edge_count() || x.edge_b < 0 ||
        x.edge_b >= g.edge_count())
      throw validation_error("crossing references an unknown edge");

  Planarization out;
  out.original_vertices = g.n;
  out.planar.n = g.n + static_cast<int>(drawing.crossings.size());

  // Crossings per original edge, ordered along the edge.
  std::vector<std::vector<std::pair<double, int>>> on_edge(g.edge_count());
  for (size_t i = 0; i < drawing.crossings.size(); ++i) {
    const auto& x = drawing.crossings[i];
    on_edge[x.edge_a].emplace_back(x.param_a, g.n + static_cast<int>(i));
    on_edge[x.edge_b].emplace_back(x.param_b, g.n + static_cast<int>(i));
  }

  for (int e = 0; e < g.edge_count(); ++e) {
    auto& chain = on_edge[e];
    std::sort(chain.begin(), chain.end());
    int prev = g.edges[e].first;
    for (auto [t, mid] : chain) {
      out.planar.edges.emplace_back(prev, mid);
      out.segment_source.push_back(e);
      prev = mid;
    }
    out.planar.edges.emplace_back(prev, g.edges[e].second);
    out.segment_source.push_back(e);
  }
  return out;
}

namespace {

struct ChunkOutcome {
  Configuration cfg;
  double energy = 0.0;
  double dp_sum = 0.0;
  std::vector<int> widths;
};

ChunkOutcome solve_removal_offset(const Instance& inst, const Partition& part,
                                  const std::vector<int>& level, int k, int phi,
                                  int ell) {
  ChunkOutcome out;
  out.cfg.labels.assign(inst.n, 0);
  for (int v = 0; v < inst.n; ++v) out.cfg.labels[v] = inst.allowed_labels[v][0];

  // Offset of a level within the removal period: [0, phi) removed,
  // {phi, k-1} boundary, the rest interior.
  auto offset_of = [&](int lv) { return ((lv - ell) % k + k) % k; };
  std::vector<char> removed(inst.n, 0);
  std::map<int, std::vector<int>> chunks;  // chunk id -> original vertices
  for (int v = 0; v < inst.n; ++v) {
    if (offset_of(level[v]) < phi) {
      removed[v] = 1;
    } else {
      chunks[floor_div(level[v] - ell - phi, k)].push_back(v);
    }
  }

  for (auto& [chunk_id, verts] : chunks) {
    std::vector<char> in_chunk(inst.n, 0);
    for (int v : verts) in_chunk[v] = 1;
    std::vector<int> edge_idx;
    for (int e = 0; e < inst.edge_count(); ++e)
      if (in_chunk[inst.edges[e].first] && in_chunk[inst.edges[e].second])
        edge_idx.push_back(e);

    SubInstance sub = induce_subinstance(inst, part, verts, edge_idx);
    std::vector<int> local_u;
    for (int v : verts) {
      const int off = offset_of(level[v]);
      if (off > phi && off < k - 1) local_u.push_back(sub.to_local[v]);
    }
    std::sort(local_u.begin(), local_u.end());

    const TreeDecomposition td = build_td(sub.inst.graph());
    DpResult dp = dp_opt(sub.inst, td, sub.part, local_u, Objective::Max);
    out.dp_sum += dp.value;
    out.widths.push_back(td.width());
    for (size_t i = 0; i < sub.to_global.size(); ++i)
      out.cfg.labels[sub.to_global[i]] = dp.cfg.labels[i];
  }

  // Removed vertices: single greedy pass, each flipped to the label that is
  // locally best against the current labels of its neighbors.
  std::vector<std::vector<int>> incident(inst.n);
  for (int e = 0; e < inst.edge_count(); ++e) {
    incident[inst.edges[e].first].push_back(e);
    incident[inst.edges[e].second].push_back(e);
  }
  for (int v = 0; v < inst.n; ++v) {
    if (!removed[v]) continue;
    double best_val = 0.0;
    int best_label = inst.allowed_labels[v][0];
    bool first = true;
    for (int a : inst.allowed_labels[v]) {
      double val = inst.vpot(v, a);
      for (int e : incident[v]) {
        auto [x, y] = inst.edges[e];
        val += (x == v) ? inst.epot(e, a, out.cfg.labels[y])
                        : inst.epot(e, out.cfg.labels[x], a);
      }
      if (first || val > best_val) {
        best_val = val;
        best_label = a;
        first = false;
      }
    }
    out.cfg.labels[v] = best_label;
  }

  out.energy = energy(inst, out.cfg);
  return out;
}

}  // namespace

ApproxResult crossing_solve(const Instance& inst, const Drawing& drawing,
                            const Partition& part, int k, int threads) {
  inst.validate();
  part.validate(inst);
  if (inst.directed)
    throw parameter_error("crossing_solve runs on undirected instances");
  if (inst.has_negative_potential())
    throw domain_error("crossing_solve requires nonnegative potentials");
  const int phi = drawing.phi;
  if (k <= phi + 2)
    throw parameter_error("crossing_solve requires k > phi + 2 (phi = " +
                          std::to_string(phi) + ")");

  const Planarization plan = planarize(inst.graph(), drawing);
  // Original ids precede crossing ids, so the default BFS root rule (smallest
  // id per component) always roots at an original vertex.
  const LayerAssignment layers = bfs_layers(plan.planar);
  std::vector<int> level(layers.level.begin(), layers.level.begin() + inst.n);

  std::vector<ChunkOutcome> outcomes(k);
  parallel_for(k, threads, [&](int ell) {
    outcomes[ell] = solve_removal_offset(inst, part, level, k, phi, ell);
  });

  ApproxResult result;
  result.k = k;
  result.ratio_guarantee = static_cast<double>(k - phi - 2) / k;
  int best = 0;
  for (int ell = 0; ell < k; ++ell) {
    result.shift_energies.push_back(outcomes[ell].energy);
    if (ell > 0 && outcomes[ell].energy > outcomes[best].energy) best = ell;
  }
  result.cfg = outcomes[best].cfg;
  result.energy = outcomes[best].energy;
  result.dp_bound = outcomes[best].dp_sum;
  result.winning_shift = {best};
  result.achieved_widths = outcomes[best].widths;
  return result;
}

}  // namespace layercut
