#include <doctest.h>

#include <cmath>
#include <random>

#include "layercut/errors.hpp"
#include "layercut/geometry.hpp"
#include "layercut/oracle.hpp"
#include "layercut/treedecomp.hpp"
#include "support/helpers.hpp"

using namespace layercut;
using testsupport::unit_cut_table;

namespace {

BallSet unit_disks(const std::vector<std::vector<double>>& centers) {
  BallSet balls;
  balls.d = 2;
  balls.centers = centers;
  balls.diameters.assign(centers.size(), 1.0);
  return balls;
}

Instance cut_instance_for(const Graph& g, int q = 2) {
  Instance inst = Instance::make(g.n, q);
  for (auto [u, v] : g.edges) inst.add_edge(u, v, unit_cut_table(q));
  return inst;
}

}  // namespace

TEST_CASE("intersection graph boundary is inclusive") {
  BallSet balls = unit_disks({{0.0, 0.0}, {0.9, 0.0}});
  CHECK(intersection_graph(balls).edge_count() == 1);

  balls = unit_disks({{0.0, 0.0}, {1.0, 0.0}});
  CHECK(intersection_graph(balls).edge_count() == 1);  // exactly touching

  balls = unit_disks({{0.0, 0.0}, {1.1, 0.0}});
  CHECK(intersection_graph(balls).edge_count() == 0);
}

TEST_CASE("interference graph is directional") {
  BallSet balls;
  balls.d = 2;
  balls.centers = {{0.0, 0.0}, {1.5, 0.0}};
  balls.diameters = {4.0, 1.0};
  const Graph g = interference_graph(balls);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges[0] == std::pair<int, int>{0, 1});  // 1.5 <= 2 but 1.5 > 0.5

  // Far apart: no arcs.
  balls.centers = {{0.0, 0.0}, {9.0, 0.0}};
  CHECK(interference_graph(balls).edge_count() == 0);

  // Coincident centers with distinct diameters: arcs both ways.
  balls.centers = {{0.0, 0.0}, {0.0, 0.0}};
  const Graph both = interference_graph(balls);
  CHECK(both.edge_count() == 2);
}

TEST_CASE("grid decomposition cell rule and density") {
  BallSet balls = unit_disks({{0.1, 0.0}, {1.5, 0.0}});
  GridDecomposition grid = grid_decompose(balls, GeoMode::Intersection);
  CHECK(grid.cell_size == 1.0);
  CHECK(grid.cell_index[0][0] == 0);
  CHECK(grid.cell_index[1][0] == 1);

  // A center exactly on a plane belongs to the lower cell.
  balls = unit_disks({{1.0, 0.5}});
  grid = grid_decompose(balls, GeoMode::Intersection);
  CHECK(grid.cell_index[0][0] == 0);
  CHECK(grid.cell_index[0][1] == 0);

  // Coincident centers pile into one cell.
  balls = unit_disks({{0.2, 0.2}, {0.2, 0.2}, {0.2, 0.2}, {0.2, 0.2}, {0.2, 0.2}});
  grid = grid_decompose(balls, GeoMode::Intersection);
  CHECK(grid.density == 5);

  // Interference mode halves the cell.
  BallSet mixed;
  mixed.d = 1;
  mixed.centers = {{0.0}, {3.0}};
  mixed.diameters = {4.0, 2.0};
  grid = grid_decompose(mixed, GeoMode::Interference);
  CHECK(grid.cell_size == 2.0);
}

TEST_CASE("grid locality: every edge joins same or neighboring cells") {
  std::mt19937 rng(191919);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (GeoMode mode : {GeoMode::Intersection, GeoMode::Interference}) {
    for (int trial = 0; trial < 20; ++trial) {
      BallSet balls;
      balls.d = 2;
      const int n = 3 + static_cast<int>(rng() % 10);
      for (int i = 0; i < n; ++i) {
        balls.centers.push_back({unit(rng) * 6, unit(rng) * 6});
        balls.diameters.push_back(0.5 + unit(rng));
      }
      const Graph g = mode == GeoMode::Intersection ? intersection_graph(balls)
                                                    : interference_graph(balls);
      const GridDecomposition grid = grid_decompose(balls, mode);
      for (auto [u, v] : g.edges)
        for (int a = 0; a < balls.d; ++a)
          CHECK(std::llabs(grid.cell_index[u][a] - grid.cell_index[v][a]) <= 1);
    }
  }
}

TEST_CASE("origin search does not worsen the density") {
  std::mt19937 rng(8080);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    BallSet balls;
    balls.d = 2;
    for (int i = 0; i < 8; ++i) {
      balls.centers.push_back({unit(rng) * 4, unit(rng) * 4});
      balls.diameters.push_back(1.0);
    }
    const int base = grid_decompose(balls, GeoMode::Intersection).density;
    const std::vector<double> origin = search_origin(balls, GeoMode::Intersection);
    const GridDecomposition tuned =
        grid_decompose(balls, GeoMode::Intersection, &origin);
    CHECK(tuned.density <= base);
  }
}

TEST_CASE("geo epsilon mapping and guarantee formula") {
  CHECK(geo_k_for_epsilon(0.19, 3) == 18);  // rho = 0.9
  CHECK(geo_k_for_epsilon(1 - 0.81, 3) == 18);
  CHECK_THROWS_AS(geo_k_for_epsilon(0.5, 1), parameter_error);

  BallSet balls = unit_disks({{0.0, 0.0}, {0.5, 0.0}});
  const Instance inst = cut_instance_for(intersection_graph(balls));
  const ApproxResult r =
      geo_solve(inst, balls, Partition::uniform(inst.edge_count()), 2, Objective::Max);
  CHECK(r.ratio_guarantee == doctest::Approx(0.5));  // (2/4)^(2-1)
}

TEST_CASE("geo_solve matches the oracle bound on random unit-disk fixtures") {
  std::mt19937 rng(60606);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6 + static_cast<int>(rng() % 7);
    std::vector<std::vector<double>> centers;
    for (int i = 0; i < n; ++i) centers.push_back({unit(rng) * 3, unit(rng) * 3});
    const BallSet balls = unit_disks(centers);
    const Graph g = intersection_graph(balls);

    Instance inst = Instance::make(n, 2);
    for (auto& vp : inst.vertex_potentials)
      for (auto& x : vp) x = unit(rng);
    for (auto [u, v] : g.edges) {
      std::vector<double> table(4);
      for (auto& x : table) x = unit(rng) * 2;
      inst.add_edge(u, v, table);
    }

    const Partition part = Partition::uniform(inst.edge_count());
    const ApproxResult r = geo_solve(inst, balls, part, 2, Objective::Max);
    const double opt = exact_opt(inst, Objective::Max).value;
    CHECK(r.energy >= 0.5 * opt - 1e-9);
    CHECK(r.energy <= opt + 1e-9);
    CHECK(r.energy >= r.dp_bound - 1e-9);
    CHECK(r.shift_energies.size() == 4);  // (k+2)^(d-1) tuples
    CHECK(r.winning_shift.size() == 1);

    // Tube path decompositions stay within the slab width bound.
    const GridDecomposition grid = grid_decompose(balls, GeoMode::Intersection);
    for (int w : r.achieved_widths)
      CHECK(w <= 2 * (2 + 2) * grid.density - 1);
  }
}

TEST_CASE("geo_solve handles d = 1 exactly") {
  BallSet balls;
  balls.d = 1;
  balls.centers = {{0.0}, {0.8}, {1.6}, {2.4}, {3.2}};
  balls.diameters.assign(5, 1.0);
  const Instance inst = cut_instance_for(intersection_graph(balls));
  const ApproxResult r =
      geo_solve(inst, balls, Partition::uniform(inst.edge_count()), 3, Objective::Max);
  CHECK(r.ratio_guarantee == doctest::Approx(1.0));
  CHECK(r.energy == doctest::Approx(exact_opt(inst, Objective::Max).value));
  CHECK(r.winning_shift.empty());
}

TEST_CASE("geo_solve consistency and precondition errors") {
  BallSet balls = unit_disks({{0.0, 0.0}, {0.5, 0.0}});
  Instance wrong = Instance::make(2, 2);  // missing the intersection edge
  CHECK_THROWS_AS(
      geo_solve(wrong, balls, Partition::uniform(0), 2, Objective::Max),
      validation_error);

  Instance inst = cut_instance_for(intersection_graph(balls));
  CHECK_THROWS_AS(
      geo_solve(inst, balls, Partition::uniform(inst.edge_count()), 0, Objective::Max),
      parameter_error);

  // MIN requires balance; pure cut tables are unbalanced.
  CHECK_THROWS_AS(
      geo_solve(inst, balls, Partition::uniform(inst.edge_count()), 2, Objective::Min),
      domain_error);
}

TEST_CASE("geo_solve interference mode round trip") {
  BallSet balls;
  balls.d = 2;
  balls.centers = {{0.0, 0.0}, {1.5, 0.0}, {5.0, 0.0}};
  balls.diameters = {4.0, 1.0, 4.0};
  const Graph arcs = interference_graph(balls);
  Instance directed = Instance::make(3, 2, true);
  for (auto [u, v] : arcs.edges) {
    std::vector<double> table(4, 0.0);
    table[2] = 1.0;  // dicut-style
    directed.add_edge(u, v, table);
  }
  const Instance merged = to_undirected(directed);
  const Partition part = Partition::uniform(merged.edge_count());
  const ApproxResult r =
      geo_solve(merged, balls, part, 2, Objective::Max, GeoMode::Interference);
  CHECK(r.energy == doctest::Approx(exact_opt(merged, Objective::Max).value));
}
