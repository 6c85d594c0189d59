// layercut command-line tool: instance validation, exact and approximate
// solving, problem encoders, and guarantee tables.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "layercut/crossing.hpp"
#include "layercut/dp.hpp"
#include "layercut/errors.hpp"
#include "layercut/geometry.hpp"
#include "layercut/io.hpp"
#include "layercut/model.hpp"
#include "layercut/oracle.hpp"
#include "layercut/problems.hpp"
#include "layercut/shifting.hpp"
#include "layercut/treedecomp.hpp"

namespace {

using nlohmann::json;
using namespace layercut;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

struct SolveReport {
  std::string scheme;
  std::string objective = "max";
  const Instance* inst = nullptr;
  double value = 0.0;
  double dp_bound = 0.0;
  double ratio = 1.0;
  int k = 0;
  bool has_k = false;
  std::vector<int> winning_shift;
  std::vector<int> widths;
  std::vector<double> shift_energies;
  Configuration cfg;
  std::optional<double> adjusted_value;  // value minus a recorded encoder shift
};

void print_report(const SolveReport& r, bool as_json) {
  if (as_json) {
    json j;
    j["scheme"] = r.scheme;
    j["objective"] = r.objective;
    j["n"] = r.inst->n;
    j["q"] = r.inst->q;
    j["value"] = r.value;
    j["dp_bound"] = r.dp_bound;
    j["ratio_guarantee"] = r.ratio;
    if (r.has_k) j["k"] = r.k;
    j["winning_shift"] = r.winning_shift;
    j["achieved_widths"] = r.widths;
    j["shift_energies"] = r.shift_energies;
    j["configuration"] = r.cfg.labels;
    if (r.adjusted_value) j["adjusted_value"] = *r.adjusted_value;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "scheme: " << r.scheme << "\n";
  std::cout << "objective: " << r.objective << "\n";
  std::cout << "n: " << r.inst->n << "\n";
  std::cout << "q: " << r.inst->q << "\n";
  if (r.has_k) std::cout << "k: " << r.k << "\n";
  std::cout << "ratio_guarantee: " << fmt(r.ratio) << "\n";
  std::cout << "value: " << fmt(r.value) << "\n";
  std::cout << "dp_bound: " << fmt(r.dp_bound) << "\n";
  if (!r.winning_shift.empty())
    std::cout << "winning_shift: " << join_ints(r.winning_shift) << "\n";
  if (!r.widths.empty())
    std::cout << "achieved_widths: " << join_ints(r.widths) << "\n";
  if (!r.shift_energies.empty()) {
    std::cout << "shift_energies:";
    for (double e : r.shift_energies) std::cout << " " << fmt(e);
    std::cout << "\n";
  }
  if (r.adjusted_value) std::cout << "adjusted_value: " << fmt(*r.adjusted_value) << "\n";
  std::cout << "configuration: " << join_ints(r.cfg.labels) << "\n";
}

Partition make_partition(const std::string& spec, const Instance& inst) {
  if (spec.empty() || spec == "uniform") return Partition::uniform(inst.edge_count());
  return partition_from_json(load_json(spec), inst);
}

std::pair<int, int> parse_range(const std::string& range) {
  const auto pos = range.find("..");
  if (pos == std::string::npos) {
    const int k = std::stoi(range);
    return {k, k};
  }
  return {std::stoi(range.substr(0, pos)), std::stoi(range.substr(pos + 2))};
}

int run_validate(const std::string& path) {
  const Instance inst = load_instance(path);
  std::cout << "ok: " << inst.n << " vertices, " << inst.edge_count()
            << " edges, q=" << inst.q << (inst.directed ? ", directed" : "") << "\n";
  return 0;
}

int run_oracle(const std::string& path, bool minimize, bool as_json,
               std::uint64_t cap) {
  const Instance inst = load_instance(path);
  const OracleResult r =
      exact_opt(inst, minimize ? Objective::Min : Objective::Max, nullptr, nullptr, cap);
  if (as_json) {
    json j;
    j["objective"] = minimize ? "min" : "max";
    j["value"] = r.value;
    j["configuration"] = r.cfg.labels;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "objective: " << (minimize ? "min" : "max") << "\n";
    std::cout << "value: " << fmt(r.value) << "\n";
    std::cout << "configuration: " << join_ints(r.cfg.labels) << "\n";
  }
  return 0;
}

struct SolveArgs {
  std::string file;
  std::string scheme;
  int k = 0;
  double epsilon = 0.0;
  bool has_k = false;
  bool has_epsilon = false;
  bool minimize = false;
  bool product = false;
  std::string partition;
  std::string balls_file;
  std::string td_file;
  bool as_json = false;
  bool origin_search = false;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
};

int run_solve(const SolveArgs& args) {
  const json raw = load_json(args.file);
  const Instance inst = instance_from_json(raw);
  const Partition part = make_partition(args.partition, inst);
  if (args.threads < 1)
    throw parameter_error("--threads must be at least 1");

  SolveReport report;
  report.scheme = args.scheme;
  report.inst = &inst;
  report.objective = args.product ? "max-product" : (args.minimize ? "min" : "max");

  BallFile bf;
  const bool is_geo = args.scheme == "geo";
  if (is_geo) {
    if (args.balls_file.empty())
      throw parameter_error("--scheme geo requires --balls <file>");
    bf = load_ballset(args.balls_file);
    if (args.origin_search) bf.origin = search_origin(bf.balls, bf.mode);
  }

  int k = args.k;
  if (args.has_epsilon) {
    if (args.scheme == "baker")
      k = baker_k_for_epsilon(args.epsilon);
    else if (is_geo)
      k = geo_k_for_epsilon(args.epsilon, bf.balls.d);
    else
      throw parameter_error("--epsilon applies only to baker and geo schemes");
  } else if (!args.has_k && args.scheme != "td") {
    throw parameter_error("choose either --k or --epsilon");
  }

  if (args.product && args.scheme != "baker")
    throw parameter_error("--product applies only to the baker scheme");

  if (args.scheme == "td") {
    if (inst.directed && !args.partition.empty() && args.partition != "uniform")
      throw parameter_error("custom partitions need an undirected instance; "
                            "merging arcs would reorder the edge list");
    Instance solved = inst.directed ? to_undirected(inst) : inst;
    Partition spart =
        inst.directed ? Partition::uniform(solved.edge_count()) : part;
    const TreeDecomposition td =
        args.td_file.empty() ? build_td(solved.graph()) : load_td(args.td_file);
    std::vector<int> all(solved.n);
    for (int v = 0; v < solved.n; ++v) all[v] = v;
    const DpResult r = dp_opt(solved, td, spart, all,
                              args.minimize ? Objective::Min : Objective::Max);
    report.value = r.value;
    report.dp_bound = r.value;
    report.cfg = r.cfg;
    report.widths = {td.width()};
  } else if (args.scheme == "baker") {
    ApproxResult r;
    if (args.product)
      r = max_product(inst, part, k, args.threads);
    else if (args.minimize)
      r = baker_min_balanced(inst, part, k, args.threads);
    else
      r = baker_max(inst, part, k, args.threads);
    report.value = r.energy;
    report.dp_bound = r.dp_bound;
    report.ratio = r.ratio_guarantee;
    report.k = r.k;
    report.has_k = true;
    report.winning_shift = r.winning_shift;
    report.widths = r.achieved_widths;
    report.shift_energies = r.shift_energies;
    report.cfg = r.cfg;
  } else if (is_geo) {
    const ApproxResult r = geo_solve(inst, bf.balls, part, k,
                                     args.minimize ? Objective::Min : Objective::Max,
                                     bf.mode, args.threads,
                                     bf.origin ? &*bf.origin : nullptr);
    report.value = r.energy;
    report.dp_bound = r.dp_bound;
    report.ratio = r.ratio_guarantee;
    report.k = r.k;
    report.has_k = true;
    report.winning_shift = r.winning_shift;
    report.widths = r.achieved_widths;
    report.shift_energies = r.shift_energies;
    report.cfg = r.cfg;
  } else if (args.scheme == "crossing") {
    if (args.minimize)
      throw parameter_error("the crossing scheme supports maximization only");
    if (!inst.coords)
      throw parameter_error("--scheme crossing requires instance coords");
    const Drawing drawing = drawing_from_instance_json(raw, inst);
    const ApproxResult r = crossing_solve(inst, drawing, part, k, args.threads);
    report.value = r.energy;
    report.dp_bound = r.dp_bound;
    report.ratio = r.ratio_guarantee;
    report.k = r.k;
    report.has_k = true;
    report.winning_shift = r.winning_shift;
    report.widths = r.achieved_widths;
    report.shift_energies = r.shift_energies;
    report.cfg = r.cfg;
  } else {
    throw parameter_error("unknown scheme: " + args.scheme);
  }

  if (raw.contains("metadata") && raw["metadata"].contains("shift_total"))
    report.adjusted_value = report.value - raw["metadata"]["shift_total"].get<double>();

  print_report(report, args.as_json);
  return 0;
}

int run_encode(const std::string& kind, const std::string& in_path,
               const std::string& out_path) {
  const json in = load_json(in_path);
  json metadata;
  Instance inst;

  if (kind == "maxcut" || kind == "dicut") {
    const int n = in.at("num_vertices").get<int>();
    std::vector<WeightedEdge> edges;
    for (const auto& e : in.at(kind == "maxcut" ? "edges" : "arcs")) {
      WeightedEdge we;
      we.u = e[0].get<int>();
      we.v = e[1].get<int>();
      we.w = e.size() > 2 ? e[2].get<double>() : 1.0;
      edges.push_back(we);
    }
    inst = kind == "maxcut" ? encode_maxcut(n, edges) : encode_maxdicut(n, edges);
    metadata["kind"] = kind;
  } else if (kind == "csp") {
    const int q = in.at("q").get<int>();
    const int n = in.at("num_variables").get<int>();
    std::vector<Csp2Constraint> constraints;
    for (const auto& c : in.at("constraints")) {
      Csp2Constraint cc;
      cc.u = c.at("u").get<int>();
      cc.v = c.at("v").get<int>();
      cc.weight = c.contains("weight") ? c.at("weight").get<double>() : 1.0;
      for (const auto& row : c.at("satisfied"))
        for (const auto& x : row) cc.satisfied.push_back(x.get<bool>() ? 1 : 0);
      constraints.push_back(std::move(cc));
    }
    inst = encode_max2csp(q, n, constraints);
    metadata["kind"] = "max2csp";
  } else if (kind == "ea") {
    const auto dims = in.at("dims").get<std::vector<int>>();
    std::vector<double> couplings;
    if (in.at("couplings").is_number())
      couplings = {in.at("couplings").get<double>()};
    else
      couplings = in.at("couplings").get<std::vector<double>>();
    const double field = in.contains("field") ? in.at("field").get<double>() : 0.0;
    auto [ea, c_total] = encode_edwards_anderson(dims, couplings, field);
    inst = std::move(ea);
    metadata["kind"] = "edwards_anderson";
    metadata["coupling_sum"] = c_total;
    std::cerr << "ground-state energy = " << fmt(c_total)
              << " - 2 * (max-cut value)\n";
  } else if (kind == "vision") {
    const int q = in.at("q").get<int>();
    const auto dims = in.at("dims").get<std::vector<int>>();
    const auto pixels = in.at("pixels").get<std::vector<double>>();
    auto [lattice, c_total] = encode_edwards_anderson(dims, {1.0}, 0.0);
    (void)c_total;
    inst = Instance::make(lattice.n, q);
    inst.edges = lattice.edges;
    if (static_cast<int>(pixels.size()) != inst.n)
      throw validation_error("vision input needs one pixel value per lattice site");

    const auto& smooth = in.at("smoothness");
    const std::string skind = smooth.at("kind").get<std::string>();
    std::vector<double> table;
    if (skind == "potts")
      table = potts_table(q, smooth.at("w").get<double>());
    else if (skind == "trunc_abs")
      table = truncated_abs_table(q, smooth.at("kappa").get<double>());
    else if (skind == "trunc_quad")
      table = truncated_quad_table(q, smooth.at("kappa").get<double>());
    else
      throw validation_error("smoothness kind must be potts, trunc_abs or trunc_quad");
    inst.edge_potentials.assign(inst.edge_count(), table);
    for (int v = 0; v < inst.n; ++v)
      inst.vertex_potentials[v] = data_term(q, pixels[v]);

    // Min-sum balance needs positive balancers; lift data terms so every
    // vertex potential is at least 1, and record the lift for reporting.
    double low = inst.vertex_potentials[0].empty() ? 0.0 : inst.vertex_potentials[0][0];
    for (const auto& vp : inst.vertex_potentials)
      for (double x : vp) low = std::min(low, x);
    metadata["kind"] = "vision";
    if (low < 1.0) {
      const double shift = 1.0 - low;
      for (auto& vp : inst.vertex_potentials)
        for (double& x : vp) x += shift;
      metadata["shift_per_vertex"] = shift;
      metadata["shift_total"] = shift * inst.n;
      std::cerr << "applied data-term shift " << fmt(shift) << " per vertex (total "
                << fmt(shift * inst.n) << "); reports carry adjusted_value\n";
    }
    inst.validate();
  } else if (kind == "geometric") {
    const BallFile bf = ballset_from_json(in);
    Graph g = bf.mode == GeoMode::Intersection ? intersection_graph(bf.balls)
                                               : interference_graph(bf.balls);
    if (bf.mode == GeoMode::Intersection) {
      std::vector<WeightedEdge> edges;
      for (auto [u, v] : g.edges) edges.push_back({u, v, 1.0});
      inst = encode_maxcut(g.n, edges);
    } else {
      std::vector<WeightedEdge> arcs;
      for (auto [u, v] : g.edges) arcs.push_back({u, v, 1.0});
      inst = to_undirected(encode_maxdicut(g.n, arcs));
    }
    metadata["kind"] = "geometric";
    metadata["mode"] = bf.mode == GeoMode::Intersection ? "intersection" : "interference";
  } else {
    throw parameter_error("unknown encode kind: " + kind);
  }

  save_json(out_path, instance_to_json(inst, metadata));
  std::cout << "wrote " << out_path << ": " << inst.n << " vertices, "
            << inst.edge_count() << " edges, q=" << inst.q << "\n";
  return 0;
}

int run_ratio_table(const std::string& scheme, const std::string& k_range,
                    double epsilon, bool has_epsilon, int d, int phi) {
  auto ratio_for = [&](int k) -> double {
    if (scheme == "baker") return static_cast<double>(k) / (k + 2);
    if (scheme == "geo") return std::pow(static_cast<double>(k) / (k + 2), d - 1);
    if (scheme == "crossing") {
      if (k <= phi + 2)
        throw parameter_error("crossing ratios need k > phi + 2");
      return static_cast<double>(k - phi - 2) / k;
    }
    throw parameter_error("unknown scheme: " + scheme);
  };

  if (has_epsilon) {
    if (scheme == "crossing")
      throw parameter_error("the crossing scheme has no epsilon mode (the "
                            "guarantee depends on phi); use --k-range");
    const int k = scheme == "geo" ? geo_k_for_epsilon(epsilon, d)
                                  : baker_k_for_epsilon(epsilon);
    std::cout << "epsilon=" << epsilon << " k=" << k << " ratio=" << ratio_for(k)
              << "\n";
    return 0;
  }
  if (k_range.empty()) throw parameter_error("choose either --k-range or --epsilon");
  auto [a, b] = parse_range(k_range);
  if (a < 1 || b < a) throw parameter_error("bad k range");
  for (int k = a; k <= b; ++k)
    std::cout << "k=" << k << " ratio=" << ratio_for(k) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy optimization on labeled graphs: exact tree-decomposition "
               "DP and layer-shifting approximation schemes"};
  app.require_subcommand(1);

  std::string path, scheme, k_range, kind, out_path;
  bool minimize = false, as_json = false;
  std::uint64_t oracle_cap = 10000000;
  SolveArgs solve_args;
  double epsilon = 0.0;
  int d = 2, phi = 0;

  auto* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("file", path)->required();

  auto* oracle = app.add_subcommand("oracle", "exhaustive exact optimum");
  oracle->add_option("file", path)->required();
  oracle->add_flag("--min", minimize, "minimize instead of maximize");
  oracle->add_flag("--json", as_json, "machine-readable report");
  oracle->add_option("--cap", oracle_cap, "configuration cap");

  auto* solve = app.add_subcommand("solve", "solve with a chosen scheme");
  solve->add_option("file", solve_args.file)->required();
  solve->add_option("--scheme", solve_args.scheme, "td | baker | geo | crossing")
      ->required();
  auto* kopt = solve->add_option("--k", solve_args.k, "shifting parameter");
  auto* eopt = solve->add_option("--epsilon", solve_args.epsilon,
                                 "target error; picks k");
  solve->add_flag("--min", solve_args.minimize, "minimize instead of maximize");
  solve->add_flag("--product", solve_args.product, "maximize the product of f_i");
  solve->add_option("--partition", solve_args.partition,
                    "uniform (default) or a partition file");
  solve->add_option("--balls", solve_args.balls_file, "ball-set file (geo scheme)");
  solve->add_flag("--origin-search", solve_args.origin_search,
                  "pick the grid origin minimizing density (geo scheme)");
  solve->add_option("--td", solve_args.td_file,
                    "use a supplied decomposition file (td scheme)");
  solve->add_flag("--json", solve_args.as_json, "machine-readable report");
  solve->add_option("--threads", solve_args.threads, "worker threads");

  auto* encode = app.add_subcommand("encode", "encode a named problem");
  encode->add_option("kind", kind, "maxcut | dicut | csp | ea | vision | geometric")
      ->required();
  encode->add_option("input", path)->required();
  encode->add_option("output", out_path)->required();

  auto* table = app.add_subcommand("ratio-table", "guarantee ratios per k");
  table->add_option("--scheme", scheme, "baker | geo | crossing")->required();
  table->add_option("--k-range", k_range, "a..b");
  auto* teps = table->add_option("--epsilon", epsilon, "target error; picks k");
  table->add_option("--d", d, "dimension (geo)");
  table->add_option("--phi", phi, "crossing parameter (crossing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 64;
  }

  const auto started = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (validate->parsed()) {
      rc = run_validate(path);
    } else if (oracle->parsed()) {
      rc = run_oracle(path, minimize, as_json, oracle_cap);
    } else if (solve->parsed()) {
      solve_args.has_k = kopt->count() > 0;
      solve_args.has_epsilon = eopt->count() > 0;
      rc = run_solve(solve_args);
    } else if (encode->parsed()) {
      rc = run_encode(kind, path, out_path);
    } else if (table->parsed()) {
      rc = run_ratio_table(scheme, k_range, epsilon, teps->count() > 0, d, phi);
    }
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    rc = 2;
  } catch (const capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    rc = 3;
  } catch (const domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    rc = 4;
  } catch (const parameter_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    rc = 4;
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "elapsed_ms: " << elapsed.count() << "\n";
  return rc;
}
