#ifndef LAYERCUT_GEOMETRY_HPP
#define LAYERCUT_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "layercut/graph.hpp"
#include "layercut/shifting.hpp"

namespace layercut {

enum class GeoMode { Intersection, Interference };

/// d-dimensional balls given by center and diameter.
struct BallSet {
  int d = 1;
  std::vector<std::vector<double>> centers;
  std::vector<double> diameters;

  int size() const { return static_cast<int>(centers.size()); }
  double d_max() const;
  void validate() const;
};

/// Axis-aligned grid over the centers. Cell size is d_max for intersection
/// graphs and d_max/2 for interference graphs, which confines every edge to
/// neighboring cells. A center within 1e-12 of a grid plane belongs to the
/// lower cell.
struct GridDecomposition {
  double cell_size = 1.0;
  std::vector<double> origin;
  std::vector<std::vector<long long>> cell_index;  // per ball, one index per axis
  int density = 0;                                 // max centers in one cell
};

/// Undirected edge (i,j) iff dist(i,j) <= (d_i + d_j)/2 (inclusive).
Graph intersection_graph(const BallSet& balls);

/// Directed arc i->j iff dist(i,j) <= d_i/2; edge list stores arcs. Merge via
/// to_undirected before solving.
Graph interference_graph(const BallSet& balls);

GridDecomposition grid_decompose(const BallSet& balls, GeoMode mode,
                                 const std::vector<double>* origin = nullptr);

/// Coordinate-descent origin search over the per-axis candidate offsets
/// {center coordinate mod cell_size}, minimizing density.
std::vector<double> search_origin(const BallSet& balls, GeoMode mode);

/// Smallest k whose (k/(k+2))^(d-1) guarantee reaches 1-epsilon.
int geo_k_for_epsilon(double epsilon, int d);

/// Multi-axis shifting scheme: for every shift tuple over the first d-1 grid
/// axes, delete edges crossing the shifted residue boundaries, solve each
/// tube with a slab-ordered path decomposition along the last axis, stitch,
/// and keep the best full energy. The max-sum result is at least
/// (k/(k+2))^(d-1) of the optimum.
ApproxResult geo_solve(const Instance& inst, const BallSet& balls,
                       const Partition& part, int k, Objective objective,
                       GeoMode mode = GeoMode::Intersection, int threads = 1,
                       const std::vector<double>* origin = nullptr);

}  // namespace layercut

#endif
