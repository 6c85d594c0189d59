#ifndef LAYERCUT_CROSSING_HPP
#define LAYERCUT_CROSSING_HPP

#include <array>
#include <utility>
#include <vector>

#include "layercut/graph.hpp"
#include "layercut/shifting.hpp"

namespace layercut {

struct SegmentCrossing {
  int edge_a = -1;  // indices into the graph's edge list, edge_a < edge_b
  int edge_b = -1;
  std::array<double, 2> point{0.0, 0.0};
  double param_a = 0.0;  // position along each edge, in (0,1)
  double param_b = 0.0;
};

/// A straight-line drawing together with its proper edge crossings.
/// phi is the largest number of crossings on any single edge.
struct Drawing {
  std::vector<std::array<double, 2>> coords;
  std::vector<SegmentCrossing> crossings;
  int phi = 0;
};

/// All pairwise proper segment intersections of the drawn edges. Rejects
/// degenerate drawings: coincident vertices, a vertex interior to an edge,
/// collinear overlap, or two crossings at the same point.
Drawing compute_crossings(const std::vector<std::array<double, 2>>& coords,
                          const std::vector<std::pair<int, int>>& edges);

/// The planar graph obtained by replacing every crossing with a new vertex.
/// Original vertices keep their ids; crossing i becomes vertex n + i.
struct Planarization {
  Graph planar;
  int original_vertices = 0;
  std::vector<int> segment_source;  // per planar edge, originating edge index
};

Planarization planarize(const Graph& g, const Drawing& drawing);

/// Level-removal scheme for drawings with at most phi crossings per edge:
/// BFS-layer the planarized graph, drop phi consecutive level residues per
/// period of k, solve each surviving chunk's induced original subgraph on its
/// interior levels, and give removed vertices their locally best labels.
/// Requires k > phi + 2; the result is at least (k - phi - 2)/k of the
/// optimum.
ApproxResult crossing_solve(const Instance& inst, const Drawing& drawing,
                            const Partition& part, int k, int threads = 1);

}  // namespace layercut

#endif
