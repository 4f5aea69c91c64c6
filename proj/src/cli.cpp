#include "nearforest/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nearforest/bench.hpp"
#include "nearforest/dqf_engine.hpp"
#include "nearforest/errors.hpp"
#include "nearforest/forest_metrics.hpp"
#include "nearforest/generators.hpp"
#include "nearforest/graph_io.hpp"
#include "nearforest/oracle.hpp"
#include "nearforest/rpf_engine.hpp"
#include "nearforest/rpf_kernel.hpp"

namespace nearforest {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitInvariant = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json one_indexed(const VertexSet& s) {
  json arr = json::array();
  for (VertexId v : s) arr.push_back(v + 1);
  return arr;
}

VertexSet parse_witness(const std::string& text, const MultiGraph& g) {
  VertexSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long id = 0;
    try {
      id = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || id < 1 || !g.contains(static_cast<VertexId>(id - 1)))
      throw UsageError("bad witness vertex '" + item + "'");
    out.insert(static_cast<VertexId>(id - 1));
  }
  return out;
}

struct ProblemArgs {
  std::string problem;
  std::string input;
  int k = -1;
  int r = -1;
  int d = -1;

  // The parameter matching the problem, which must have been given.
  int param() const {
    const int value = problem == "rpf" ? r : d;
    if (value < 0) throw UsageError(problem == "rpf" ? "rpf needs -r" : "dqf needs -d");
    return value;
  }
  const char* param_name() const { return problem == "rpf" ? "r" : "d"; }
};

void add_problem(CLI::App* cmd, ProblemArgs& args) {
  cmd->add_option("problem", args.problem, "rpf or dqf")->required()->check(CLI::IsMember({"rpf", "dqf"}));
  cmd->add_option("-i,--input", args.input, "graph file")->required();
  cmd->add_option("-r", args.r, "excess bound")->check(CLI::NonNegativeNumber);
  cmd->add_option("-d", args.d, "feedback bound per component")->check(CLI::NonNegativeNumber);
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solvers for r-pseudoforest and d-quasi-forest vertex deletion", "nearforest"};
  app.require_subcommand(1);

  ProblemArgs solve_args;
  bool fallback = false;
  bool trace = false;
  auto* solve = app.add_subcommand("solve", "decide whether k deletions suffice");
  add_problem(solve, solve_args);
  solve->add_option("-k", solve_args.k, "deletion budget")->required()->check(CLI::NonNegativeNumber);
  solve->add_flag("--fallback", fallback, "dqf: exhaustive branching instead of the staged pipeline");
  solve->add_flag("--trace", trace, "one line per search node on stderr");

  ProblemArgs verify_args;
  std::string witness_text;
  auto* verify = app.add_subcommand("verify", "check a deletion set");
  add_problem(verify, verify_args);
  verify->add_option("--witness", witness_text, "comma separated 1-indexed vertices")->required();

  ProblemArgs oracle_args;
  std::size_t cap = oracle::kDefaultVertexCap;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force optimum");
  add_problem(oracle_cmd, oracle_args);
  oracle_cmd->add_option("--cap", cap, "refuse graphs with more vertices");

  std::string family;
  std::uint64_t seed = 0;
  std::string gen_output;
  int gen_n = 10, gen_m = -1, gen_k = 1, gen_r = 1, gen_d = 0, gen_degree = 5, gen_copies = -1;
  auto* gen = app.add_subcommand("gen", "write a generated instance");
  gen->add_option("family", family, "planted-rpf, dup-tree-dqf or random")
      ->required()
      ->check(CLI::IsMember({"planted-rpf", "dup-tree-dqf", "random"}));
  gen->add_option("--seed", seed, "generator seed")->required();
  gen->add_option("-o,--output", gen_output, "graph file to write")->required();
  gen->add_option("--n", gen_n, "vertices");
  gen->add_option("--m", gen_m, "edges (random; default 2n)");
  gen->add_option("--k", gen_k, "planted deletions");
  gen->add_option("--r", gen_r, "excess bound");
  gen->add_option("--d", gen_d, "feedback bound");
  gen->add_option("--max-degree", gen_degree, "degree cap");
  gen->add_option("--copies", gen_copies, "trees of the duplicated type (default k+d+3)");

  std::string kernel_input, kernel_output;
  int kernel_k = 0, kernel_r = 0, degree_cap = 0;
  auto* kernelize = app.add_subcommand("kernelize", "reduce to minimum degree 3 and check the size bounds");
  kernelize->add_option("-i,--input", kernel_input, "graph file")->required();
  kernelize->add_option("-k", kernel_k, "deletion budget")->required()->check(CLI::NonNegativeNumber);
  kernelize->add_option("-r", kernel_r, "excess bound")->required()->check(CLI::NonNegativeNumber);
  kernelize->add_option("--degree-cap", degree_cap, "maximum degree")->required()->check(CLI::PositiveNumber);
  kernelize->add_option("-o,--output", kernel_output, "write the reduced graph here");

  std::string grid, bench_output;
  int jobs = 1;
  auto* bench = app.add_subcommand("bench", "run a parameter sweep");
  bench->add_option("--grid", grid, "e.g. family=planted-rpf;n=10;k=1..4;r=1;seeds=0..4")->required();
  bench->add_option("-o,--output", bench_output, "JSON lines file")->required();
  bench->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and usage text are diagnostics; stdout carries JSON only.
    int code = app.exit(e, err, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) {
      const int param = solve_args.param();
      if (fallback && solve_args.problem != "dqf") throw UsageError("--fallback applies to dqf only");
      MultiGraph g = read_graph_file(solve_args.input);
      const auto start = std::chrono::steady_clock::now();
      Solution sol;
      std::uint64_t nodes = 0;
      if (solve_args.problem == "rpf") {
        rpf::Stats stats;
        rpf::Options options;
        if (trace) options.trace = &err;
        sol = rpf::solve({g, solve_args.k, param}, &stats, options);
        nodes = stats.nodes_expanded;
      } else {
        dqf::Stats stats;
        dqf::Options options;
        options.fallback = fallback;
        if (trace) options.trace = &err;
        sol = dqf::solve_dqf({g, solve_args.k, param}, &stats, options);
        nodes = stats.nodes_expanded;
      }
      const double elapsed = ms_since(start);
      json j;
      j["status"] = sol.yes() ? "yes" : "no";
      j["witness"] = one_indexed(sol.witness);
      j["k"] = solve_args.k;
      j[solve_args.param_name()] = param;
      j["nodes_expanded"] = nodes;
      j["elapsed_ms"] = elapsed;
      out << j.dump() << '\n';
    } else if (*verify) {
      const int param = verify_args.param();
      MultiGraph g = read_graph_file(verify_args.input);
      VertexSet x = parse_witness(witness_text, g);
      const MultiGraph rest = g.without(x);
      const bool ok = verify_args.problem == "rpf" ? is_r_pseudoforest(rest, param) : is_d_quasi_forest(rest, param);
      json j;
      j["valid"] = ok;
      j["witness"] = one_indexed(x);
      j["size"] = x.size();
      j[verify_args.param_name()] = param;
      out << j.dump() << '\n';
    } else if (*oracle_cmd) {
      const int param = oracle_args.param();
      MultiGraph g = read_graph_file(oracle_args.input);
      oracle::Options options;
      options.vertex_cap = cap;
      auto res = oracle_args.problem == "rpf" ? oracle::min_rpf(g, param, options) : oracle::min_dqf(g, param, options);
      json j;
      j["opt"] = res.opt_size ? json(*res.opt_size) : json(nullptr);
      j["witness"] = one_indexed(res.one_witness);
      j["node_budget_hit"] = res.node_budget_hit;
      j[oracle_args.param_name()] = param;
      out << j.dump() << '\n';
    } else if (*gen) {
      json j;
      j["family"] = family;
      j["seed"] = seed;
      j["rng"] = Rng::algorithm;
      j["output"] = gen_output;
      MultiGraph g;
      if (family == "planted-rpf") {
        PlantedInstance p = gen_planted_rpf(gen_n, gen_k, gen_r, gen_degree, seed);
        g = std::move(p.g);
        j["planted"] = one_indexed(p.planted);
      } else if (family == "dup-tree-dqf") {
        const int copies = gen_copies < 0 ? gen_k + gen_d + 3 : gen_copies;
        dqf::DisjointInstance inst = gen_dup_tree_dqf(gen_k, gen_d, copies, seed);
        g = std::move(inst.g);
        j["z"] = one_indexed(inst.z);
      } else {
        g = gen_random_multigraph(gen_n, gen_m < 0 ? 2 * gen_n : gen_m, seed);
      }
      write_graph_file(gen_output, g);
      j["n"] = g.vertex_count();
      j["m"] = g.edge_count();
      out << j.dump() << '\n';
    } else if (*kernelize) {
      MultiGraph g = rpf::reduce_to_min_degree3(read_graph_file(kernel_input));
      rpf::KernelReport report = rpf::certify_bounds(g, kernel_k, kernel_r, degree_cap);
      if (!kernel_output.empty()) write_graph_file(kernel_output, g);
      json j;
      j["n"] = report.n;
      j["m"] = report.m;
      j["k"] = report.k;
      j["r"] = report.r;
      j["degree_cap"] = report.degree_cap;
      j["vertex_bound"] = report.vertex_bound;
      j["edge_bound"] = report.edge_bound;
      j["within_bounds"] = report.within_bounds;
      switch (report.verdict) {
        case rpf::KernelVerdict::within_bounds: j["verdict"] = "within_bounds"; break;
        case rpf::KernelVerdict::certified_no_or_violation: j["verdict"] = "certified_no_or_violation"; break;
        case rpf::KernelVerdict::uncertified: j["verdict"] = "uncertified"; break;
      }
      out << j.dump() << '\n';
    } else if (*bench) {
      std::vector<GridPoint> points;
      try {
        points = parse_grid(grid);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::ofstream file(bench_output, std::ios::binary);
      if (!file) throw UsageError("cannot write " + bench_output);
      const std::size_t records = bench_sweep(points, file, jobs);
      json j;
      j["records"] = records;
      j["output"] = bench_output;
      out << j.dump() << '\n';
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace nearforest
