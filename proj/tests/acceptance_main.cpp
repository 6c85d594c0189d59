// Acceptance suite: runs every guarantee the library promises, at the stated
// tolerances, and prints one PASS/FAIL line per criterion. Takes the CLI
// binary path as argv[1] for the criteria exercised through the tool.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "layercut/crossing.hpp"
#include "layercut/dp.hpp"
#include "layercut/errors.hpp"
#include "layercut/geometry.hpp"
#include "layercut/model.hpp"
#include "layercut/oracle.hpp"
#include "layercut/problems.hpp"
#include "layercut/shifting.hpp"
#include "layercut/treedecomp.hpp"
#include "support/helpers.hpp"

using namespace layercut;

namespace {

int g_failed = 0;
std::string g_detail;

void note(const std::string& s) {
  if (!g_detail.empty()) g_detail += "; ";
  g_detail += s;
}

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
  g_detail.clear();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note(std::string("exception: ") + e.what());
  }
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name;
  if (!ok && !g_detail.empty()) std::cout << " (" << g_detail << ")";
  std::cout << "\n";
  if (!ok) ++g_failed;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

// ---- shared fixture builders (all seeded, hence frozen) --------------------

Instance random_grid_instance(std::mt19937& rng, int rows, int cols) {
  Instance inst = Instance::make(rows * cols, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& vp : inst.vertex_potentials)
    for (auto& x : vp) x = unit(rng) * 3;
  auto id = [cols](int r, int c) { return r * cols + c; };
  auto table = [&]() {
    std::vector<double> t(4);
    for (auto& x : t) x = unit(rng) * 3;
    return t;
  };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) inst.add_edge(id(r, c), id(r, c + 1), table());
      if (r + 1 < rows) inst.add_edge(id(r, c), id(r + 1, c), table());
    }
  return inst;
}

struct DiskFixture {
  Instance inst;
  BallSet balls;
};

DiskFixture random_disk_fixture(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DiskFixture fx;
  fx.balls.d = 2;
  for (int i = 0; i < n; ++i) {
    fx.balls.centers.push_back({unit(rng) * 3, unit(rng) * 3});
    fx.balls.diameters.push_back(1.0);
  }
  const Graph g = intersection_graph(fx.balls);
  fx.inst = Instance::make(n, 2);
  for (auto& vp : fx.inst.vertex_potentials)
    for (auto& x : vp) x = unit(rng);
  for (auto [u, v] : g.edges) {
    std::vector<double> t(4);
    for (auto& x : t) x = unit(rng) * 2;
    fx.inst.add_edge(u, v, t);
  }
  return fx;
}

struct DrawingFixture {
  Instance inst;
  Drawing drawing;
};

Instance convex_k4_instance() {
  Instance inst = Instance::make(4, 2);
  const std::vector<double> cut{0, 1, 1, 0};
  for (auto [u, v] : std::vector<std::pair<int, int>>{
           {0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}})
    inst.add_edge(u, v, cut);
  inst.coords = std::vector<std::array<double, 2>>{
      {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  return inst;
}

std::vector<DrawingFixture> near_planar_fixtures(int count) {
  std::mt19937 rng(90210);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<DrawingFixture> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = 7 + static_cast<int>(rng() % 3);
    std::vector<std::array<double, 2>> pts(n);
    for (auto& p : pts) p = {unit(rng) * 10, unit(rng) * 10};
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const double dx = pts[u][0] - pts[v][0], dy = pts[u][1] - pts[v][1];
        if (dx * dx + dy * dy < 16.0) edges.emplace_back(u, v);
      }
    DrawingFixture fx;
    fx.inst = Instance::make(n, 2);
    std::uniform_real_distribution<double> pot(0.0, 2.0);
    for (auto& vp : fx.inst.vertex_potentials)
      for (auto& x : vp) x = pot(rng);
    for (auto [u, v] : edges) {
      std::vector<double> t(4);
      for (auto& x : t) x = pot(rng);
      fx.inst.add_edge(u, v, t);
    }
    fx.inst.coords = pts;
    try {
      fx.drawing = compute_crossings(pts, edges);
    } catch (const layercut::domain_error&) {
      continue;
    }
    if (fx.drawing.phi > 5) continue;
    out.push_back(std::move(fx));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "DP matches the oracle on 100 random instances within 1e-9 in < 10 s", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(1001);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 9);
      const int q = 2 + static_cast<int>(rng() % 2);
      Instance inst = testsupport::random_instance(rng, n, q, 0.45, 4.0);
      const Partition part = testsupport::random_partition(rng, inst.edge_count());
      std::vector<int> u;
      for (int v = 0; v < n; ++v)
        if (rng() % 2) u.push_back(v);
      const TreeDecomposition td = build_td(inst.graph());
      for (Objective obj : {Objective::Max, Objective::Min}) {
        const double dp = dp_opt(inst, td, part, u, obj).value;
        const double oracle = exact_opt(inst, obj, &u, &part).value;
        if (std::abs(dp - oracle) > 1e-9) {
          note("trial " + std::to_string(trial) + " dp " + std::to_string(dp) +
               " vs oracle " + std::to_string(oracle));
          return false;
        }
      }
    }
    const double dt = seconds_since(t0);
    if (dt >= 10.0) {
      note("took " + std::to_string(dt) + " s");
      return false;
    }
    return true;
  });

  criterion(2, "baker_max is at least k/(k+2) optimal on 20 planar fixtures in < 30 s", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(2002);
    for (int trial = 0; trial < 20; ++trial) {
      const int rows = 2 + static_cast<int>(rng() % 3);
      const int cols = 2 + static_cast<int>(rng() % 3);
      const Instance inst = random_grid_instance(rng, rows, cols);
      const Partition part = Partition::uniform(inst.edge_count());
      const double opt = exact_opt(inst, Objective::Max).value;
      for (int k : {1, 2, 4}) {
        const ApproxResult r = baker_max(inst, part, k);
        if (r.energy < (static_cast<double>(k) / (k + 2)) * opt - 1e-9) {
          note("fixture " + std::to_string(trial) + " k " + std::to_string(k));
          return false;
        }
      }
    }
    const double dt = seconds_since(t0);
    if (dt >= 30.0) {
      note("took " + std::to_string(dt) + " s");
      return false;
    }
    return true;
  });

  criterion(3, "baker_min_balanced meets 1 + 2(a-1)/(k+2) on 20 balanced fixtures", [] {
    std::mt19937 rng(3003);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const int rows = 2, cols = 2 + static_cast<int>(rng() % 5);
      Instance inst = Instance::make(rows * cols, 2);
      for (auto& vp : inst.vertex_potentials)
        for (auto& x : vp) x = 1.0 + 0.4 * unit(rng);
      auto id = [cols](int r, int c) { return r * cols + c; };
      auto table = [&]() {
        std::vector<double> t(4);
        for (auto& x : t) x = 0.1 * unit(rng);
        return t;
      };
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          if (c + 1 < cols) inst.add_edge(id(r, c), id(r, c + 1), table());
          if (r + 1 < rows) inst.add_edge(id(r, c), id(r + 1, c), table());
        }
      const Partition part = Partition::uniform(inst.edge_count());
      const BalanceReport report = balance_report(inst, part);
      if (!report.balanced() || *report.alpha_star > 2.0) {
        note("fixture " + std::to_string(trial) + " not in the target balance range");
        return false;
      }
      const double opt = exact_opt(inst, Objective::Min).value;
      for (int k : {2, 4}) {
        const ApproxResult r = baker_min_balanced(inst, part, k);
        const double bound = 1.0 + 2.0 * (*report.alpha_star - 1.0) / (k + 2);
        if (r.energy > bound * opt * (1 + 1e-9)) {
          note("fixture " + std::to_string(trial) + " k " + std::to_string(k));
          return false;
        }
      }
    }
    return true;
  });

  criterion(4, "geo_solve reaches 0.5 optimal on 10 unit-disk fixtures with the width bound", [] {
    std::mt19937 rng(4004);
    for (int trial = 0; trial < 10; ++trial) {
      DiskFixture fx = random_disk_fixture(rng, 6 + static_cast<int>(rng() % 7));
      const Partition part = Partition::uniform(fx.inst.edge_count());
      const GridDecomposition grid = grid_decompose(fx.balls, GeoMode::Intersection);

      const Graph g = fx.inst.graph();
      for (auto [u, v] : g.edges)
        for (int a = 0; a < 2; ++a)
          if (std::llabs(grid.cell_index[u][a] - grid.cell_index[v][a]) > 1) {
            note("grid locality broken on fixture " + std::to_string(trial));
            return false;
          }

      const ApproxResult r = geo_solve(fx.inst, fx.balls, part, 2, Objective::Max);
      const double opt = exact_opt(fx.inst, Objective::Max).value;
      if (r.energy < 0.5 * opt - 1e-9) {
        note("fixture " + std::to_string(trial) + " below 0.5 of optimum");
        return false;
      }
      for (int w : r.achieved_widths)
        if (w > 2 * 4 * grid.density - 1) {
          note("width " + std::to_string(w) + " above the slab bound");
          return false;
        }
    }
    return true;
  });

  criterion(5, "crossing_solve reaches (k-phi-2)/k optimal; planarized K4 has 5 vertices", [] {
    Instance k4 = convex_k4_instance();
    const Drawing dk4 = compute_crossings(*k4.coords, k4.edges);
    if (planarize(k4.graph(), dk4).planar.n != 5) {
      note("planarized convex K4 vertex count");
      return false;
    }
    const double opt_k4 = exact_opt(k4, Objective::Max).value;
    const ApproxResult rk4 =
        crossing_solve(k4, dk4, Partition::uniform(k4.edge_count()), 8);
    if (rk4.energy < ((8.0 - dk4.phi - 2.0) / 8.0) * opt_k4 - 1e-9) {
      note("convex K4 below the bound");
      return false;
    }

    for (const DrawingFixture& fx : near_planar_fixtures(5)) {
      const Partition part = Partition::uniform(fx.inst.edge_count());
      const ApproxResult r = crossing_solve(fx.inst, fx.drawing, part, 8);
      const double opt = exact_opt(fx.inst, Objective::Max).value;
      if (r.energy < ((8.0 - fx.drawing.phi - 2.0) / 8.0) * opt - 1e-9) {
        note("random drawing below the bound");
        return false;
      }
    }
    return true;
  });

  criterion(6, "encodings: K3/C4 cuts, triangle 3-cut, Edwards-Anderson ground states", [] {
    const Instance k3 = encode_maxcut(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
    if (exact_opt(k3, Objective::Max).value != 2.0) {
      note("K3 max-cut");
      return false;
    }
    const Instance c4 = encode_maxcut(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
    if (exact_opt(c4, Objective::Max).value != 4.0) {
      note("C4 max-cut");
      return false;
    }
    MaxKCutOptions opt;
    opt.k_cut = 3;
    if (solve_maxkcut(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}, opt).value != 3.0) {
      note("triangle max 3-cut");
      return false;
    }
    auto [cube, c_cube] = encode_edwards_anderson({2, 2, 2}, {1.0}, 0.0);
    if (c_cube - 2 * exact_opt(cube, Objective::Max).value != -12.0) {
      note("2x2x2 ground energy");
      return false;
    }

    std::mt19937 rng(6006);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> couplings(lattice_edge_count({3, 3}));
    for (auto& j : couplings) j = 0.05 + unit(rng);
    auto [ea, c_sum] = encode_edwards_anderson({3, 3}, couplings, 0.0);
    double best = 0.0;
    Configuration cfg;
    cfg.labels.assign(9, 0);
    for (int code = 0; code < (1 << 9); ++code) {
      for (int v = 0; v < 9; ++v) cfg.labels[v] = (code >> v) & 1;
      const std::vector<int> spins = spins_from_labels(cfg);
      double ising = 0.0;
      for (int e = 0; e < ea.edge_count(); ++e)
        ising += couplings[e] * spins[ea.edges[e].first] * spins[ea.edges[e].second];
      best = std::min(best, ising);
    }
    const double ground = c_sum - 2 * exact_opt(ea, Objective::Max).value;
    if (std::abs(ground - best) > 1e-9) {
      note("3x3 random-J ground energy vs spin enumeration");
      return false;
    }
    return true;
  });

  criterion(7, "ratio arithmetic surfaced by ratio-table: k=18 -> 0.9, eps=0.1 -> 18, geo d=3", [&] {
    if (cli.empty()) {
      note("no CLI path supplied");
      return false;
    }
    if (run_cli(cli + " ratio-table --scheme baker --k-range 18..18") !=
        "k=18 ratio=0.9\n") {
      note("k=18 row");
      return false;
    }
    if (run_cli(cli + " ratio-table --scheme baker --epsilon 0.1") !=
        "epsilon=0.1 k=18 ratio=0.9\n") {
      note("epsilon row");
      return false;
    }
    const std::string geo = run_cli(cli + " ratio-table --scheme geo --d 3 --epsilon 0.19");
    if (geo.find(" k=18 ") == std::string::npos) {
      note("geo row: " + geo);
      return false;
    }
    return true;
  });

  criterion(8, "determinism: identical values and configurations across reruns and thread counts", [] {
    std::mt19937 rng(8008);
    bool ok = true;

    const Instance grid = random_grid_instance(rng, 3, 4);
    const Partition gpart = Partition::uniform(grid.edge_count());
    for (int k : {1, 2, 4}) {
      const ApproxResult a = baker_max(grid, gpart, k, 1);
      const ApproxResult b = baker_max(grid, gpart, k, 4);
      const ApproxResult c = baker_max(grid, gpart, k, 1);
      ok = ok && a.energy == b.energy && a.cfg.labels == b.cfg.labels &&
           a.energy == c.energy && a.cfg.labels == c.cfg.labels &&
           a.winning_shift == b.winning_shift;
    }
    if (!ok) {
      note("baker_max");
      return false;
    }

    DiskFixture fx = random_disk_fixture(rng, 10);
    const Partition dpart = Partition::uniform(fx.inst.edge_count());
    const ApproxResult ga = geo_solve(fx.inst, fx.balls, dpart, 2, Objective::Max,
                                      GeoMode::Intersection, 1);
    const ApproxResult gb = geo_solve(fx.inst, fx.balls, dpart, 2, Objective::Max,
                                      GeoMode::Intersection, 4);
    if (ga.energy != gb.energy || ga.cfg.labels != gb.cfg.labels ||
        ga.winning_shift != gb.winning_shift) {
      note("geo_solve");
      return false;
    }

    Instance k4 = convex_k4_instance();
    const Drawing d = compute_crossings(*k4.coords, k4.edges);
    const Partition kpart = Partition::uniform(k4.edge_count());
    const ApproxResult ca = crossing_solve(k4, d, kpart, 8, 1);
    const ApproxResult cb = crossing_solve(k4, d, kpart, 8, 3);
    if (ca.energy != cb.energy || ca.cfg.labels != cb.cfg.labels) {
      note("crossing_solve");
      return false;
    }

    const TreeDecomposition td = build_td(grid.graph());
    std::vector<int> all(grid.n);
    for (int v = 0; v < grid.n; ++v) all[v] = v;
    const DpResult da = dp_opt(grid, td, gpart, all, Objective::Max);
    const DpResult db = dp_opt(grid, td, gpart, all, Objective::Max);
    if (da.value != db.value || da.cfg.labels != db.cfg.labels) {
      note("dp_opt");
      return false;
    }
    const OracleResult oa = exact_opt(grid, Objective::Max);
    const OracleResult ob = exact_opt(grid, Objective::Max);
    if (oa.value != ob.value || oa.cfg.labels != ob.cfg.labels) {
      note("oracle");
      return false;
    }
    return true;
  });

  if (g_failed == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failed << " criterion(s) failed\n";
  return 1;
}
