#include <doctest.h>

#include <random>

#include "layercut/dp.hpp"
#include "layercut/errors.hpp"
#include "layercut/oracle.hpp"
#include "support/helpers.hpp"

using namespace layercut;
using testsupport::random_instance;
using testsupport::random_partition;
using testsupport::unit_cut_table;

namespace {

std::vector<int> all_vertices(int n) {
  std::vector<int> u(n);
  for (int v = 0; v < n; ++v) u[v] = v;
  return u;
}

}  // namespace

TEST_CASE("dp on a path with unit cut tables") {
  Instance p4 = Instance::make(4, 2);
  p4.add_edge(0, 1, unit_cut_table(2));
  p4.add_edge(1, 2, unit_cut_table(2));
  p4.add_edge(2, 3, unit_cut_table(2));
  TreeDecomposition td;
  td.bags = {{0, 1}, {1, 2}, {2, 3}};
  td.tree_edges = {{0, 1}, {1, 2}};

  const DpResult r = dp_opt(p4, td, Partition::uniform(3), all_vertices(4),
                            Objective::Max);
  CHECK(r.value == doctest::Approx(3.0));
  CHECK(exact_opt(p4, Objective::Max).value == doctest::Approx(3.0));
}

TEST_CASE("dp degenerate cases") {
  Instance inst = Instance::make(3, 2);
  inst.vertex_potentials[1] = {0, 5};
  inst.add_edge(0, 1, {1, 2, 3, 4});
  inst.add_edge(1, 2, {0, 1, 1, 0});

  TreeDecomposition single;
  single.bags = {{0, 1, 2}};

  // Empty U: value 0, all-smallest-allowed configuration.
  DpResult r = dp_opt(inst, single, Partition::uniform(2), {}, Objective::Max);
  CHECK(r.value == 0.0);
  CHECK(r.cfg.labels == std::vector<int>{0, 0, 0});

  // One bag holding everything degenerates to brute force.
  const auto u = all_vertices(3);
  const Partition part = Partition::uniform(2);
  r = dp_opt(inst, single, part, u, Objective::Max);
  std::vector<int> uvec = u;
  const OracleResult oracle = exact_opt(inst, Objective::Max, &uvec, &part);
  CHECK(r.value == doctest::Approx(oracle.value));
}

TEST_CASE("dp rejects bad inputs") {
  Instance inst = Instance::make(3, 2);
  inst.add_edge(0, 2, unit_cut_table(2));
  TreeDecomposition broken;
  broken.bags = {{0, 1}, {2}};
  broken.tree_edges = {{0, 1}};
  CHECK_THROWS_AS(dp_opt(inst, broken, Partition::uniform(1), all_vertices(3),
                         Objective::Max),
                  validation_error);

  TreeDecomposition single;
  single.bags = {{0, 1, 2}};
  CHECK_THROWS_AS(dp_opt(inst, single, Partition::uniform(1), all_vertices(3),
                         Objective::Max, 4),
                  capacity_error);
  CHECK_THROWS_AS(dp_opt(inst, single, Partition::uniform(1), {9}, Objective::Max),
                  parameter_error);
}

TEST_CASE("dp equals the oracle on random instances") {
  std::mt19937 rng(160900);
  int trials = 0;
  while (trials < 100) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const int q = 2 + static_cast<int>(rng() % 2);
    Instance inst = random_instance(rng, n, q, 0.45, 4.0);
    const Partition part = random_partition(rng, inst.edge_count());

    std::vector<int> u;
    for (int v = 0; v < n; ++v)
      if (rng() % 2) u.push_back(v);

    const TreeDecomposition td = build_td(inst.graph());
    for (Objective obj : {Objective::Max, Objective::Min}) {
      const DpResult dp = dp_opt(inst, td, part, u, obj);
      const OracleResult oracle = exact_opt(inst, obj, &u, &part);
      CHECK(dp.value == doctest::Approx(oracle.value).epsilon(1e-9));
      // The returned configuration must realize the returned value.
      CHECK(folded_energy(inst, part, u, dp.cfg) ==
            doctest::Approx(dp.value).epsilon(1e-9));
    }
    ++trials;
  }
}

TEST_CASE("dp is monotone in U for nonnegative potentials") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    Instance inst = random_instance(rng, n, 2, 0.5, 2.0);
    const Partition part = random_partition(rng, inst.edge_count());
    const TreeDecomposition td = build_td(inst.graph());

    std::vector<int> small, large;
    for (int v = 0; v < n; ++v) {
      const int r = static_cast<int>(rng() % 3);
      if (r == 0) small.push_back(v);
      if (r <= 1) large.push_back(v);
    }
    for (int v : small) large.push_back(v);
    std::sort(large.begin(), large.end());
    large.erase(std::unique(large.begin(), large.end()), large.end());

    const double lo = dp_opt(inst, td, part, small, Objective::Max).value;
    const double hi = dp_opt(inst, td, part, large, Objective::Max).value;
    CHECK(lo <= hi + 1e-9);
  }
}

TEST_CASE("dp respects allowed labels and reruns identically") {
  std::mt19937 rng(777);
  Instance inst = random_instance(rng, 7, 3, 0.5, 3.0);
  inst.allowed_labels[2] = {1};
  inst.allowed_labels[5] = {0, 2};
  const Partition part = Partition::uniform(inst.edge_count());
  const TreeDecomposition td = build_td(inst.graph());
  const auto u = all_vertices(7);

  const DpResult a = dp_opt(inst, td, part, u, Objective::Max);
  const DpResult b = dp_opt(inst, td, part, u, Objective::Max);
  CHECK(a.value == b.value);
  CHECK(a.cfg.labels == b.cfg.labels);
  CHECK(a.cfg.labels[2] == 1);
  CHECK((a.cfg.labels[5] == 0 || a.cfg.labels[5] == 2));

  std::vector<int> uvec = u;
  CHECK(a.value == doctest::Approx(exact_opt(inst, Objective::Max, &uvec, &part).value));
}

TEST_CASE("generalized charges cover non-pairwise terms") {
  // A three-way parity reward needs its whole scope in one bag.
  Instance inst = Instance::make(3, 2);
  inst.add_edge(0, 1, std::vector<double>(4, 0.0));
  inst.add_edge(1, 2, std::vector<double>(4, 0.0));
  inst.add_edge(0, 2, std::vector<double>(4, 0.0));

  Charge parity;
  parity.scope = {0, 1, 2};
  parity.table.assign(8, 0.0);
  for (int code = 0; code < 8; ++code) {
    const int ones = ((code >> 2) & 1) + ((code >> 1) & 1) + (code & 1);
    if (ones % 2 == 1) parity.table[code] = 4.0;
  }

  TreeDecomposition td;
  td.bags = {{0, 1, 2}};
  const DpResult r = dp_charges(inst, td, {parity}, Objective::Max);
  CHECK(r.value == 4.0);
  const int ones = r.cfg.labels[0] + r.cfg.labels[1] + r.cfg.labels[2];
  CHECK(ones % 2 == 1);

  // On a path graph the same scope fits no bag of its path decomposition.
  Instance p3 = Instance::make(3, 2);
  p3.add_edge(0, 1, std::vector<double>(4, 0.0));
  p3.add_edge(1, 2, std::vector<double>(4, 0.0));
  TreeDecomposition path;
  path.bags = {{0, 1}, {1, 2}};
  path.tree_edges = {{0, 1}};
  CHECK_THROWS_AS(dp_charges(p3, path, {parity}, Objective::Max), capacity_error);
}
