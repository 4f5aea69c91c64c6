#include "nearforest/bench.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "nearforest/dqf_engine.hpp"
#include "nearforest/forest_metrics.hpp"
#include "nearforest/generators.hpp"
#include "nearforest/oracle.hpp"
#include "nearforest/rpf_engine.hpp"

namespace nearforest {

long GridPoint::get(const std::string& key, long fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

long to_long(std::string_view s) {
  s = trim(s);
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(std::string(s), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw std::invalid_argument("grid: bad integer '" + std::string(s) + "'");
  return value;
}

std::vector<long> parse_values(std::string_view list) {
  std::vector<long> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view item = trim(list.substr(start, comma - start));
    start = comma + 1;
    std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(to_long(item));
      continue;
    }
    long lo = to_long(item.substr(0, dots));
    long hi = to_long(item.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("grid: empty range '" + std::string(item) + "'");
    for (long v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

struct Axis {
  std::string key;
  std::vector<std::string> families;
  std::vector<long> values;
  std::size_t size() const { return key == "family" ? families.size() : values.size(); }
};

}  // namespace

std::vector<GridPoint> parse_grid(std::string_view spec) {
  std::vector<Axis> axes;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t semi = spec.find(';', start);
    if (semi == std::string_view::npos) semi = spec.size();
    std::string_view part = trim(spec.substr(start, semi - start));
    start = semi + 1;
    if (part.empty()) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("grid: expected key=values in '" + std::string(part) + "'");
    Axis axis{std::string(trim(part.substr(0, eq))), {}, {}};
    if (axis.key.empty()) throw std::invalid_argument("grid: empty key in '" + std::string(part) + "'");
    if (axis.key == "seeds") axis.key = "seed";
    for (const auto& seen : axes)
      if (seen.key == axis.key) throw std::invalid_argument("grid: key '" + axis.key + "' given twice");
    std::string_view rhs = part.substr(eq + 1);
    if (axis.key == "family") {
      std::size_t s = 0;
      while (s <= rhs.size()) {
        std::size_t comma = rhs.find(',', s);
        if (comma == std::string_view::npos) comma = rhs.size();
        axis.families.emplace_back(trim(rhs.substr(s, comma - s)));
        s = comma + 1;
      }
    } else {
      axis.values = parse_values(rhs);
    }
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) return {};

  std::vector<GridPoint> points;
  std::vector<std::size_t> at(axes.size(), 0);
  while (true) {
    GridPoint p{"planted-rpf", {}};
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (axes[i].key == "family")
        p.family = axes[i].families[at[i]];
      else
        p.params[axes[i].key] = axes[i].values[at[i]];
    }
    points.push_back(std::move(p));
    std::size_t i = axes.size();
    while (i > 0) {
      --i;
      if (++at[i] < axes[i].size()) break;
      at[i] = 0;
      if (i == 0) return points;
    }
  }
}

namespace {

constexpr std::size_t kOracleVertexCap = 12;

std::vector<std::uint32_t> one_indexed(const VertexSet& s) {
  std::vector<std::uint32_t> out;
  for (VertexId v : s) out.push_back(v + 1);
  return out;
}

const char* status_text(bool yes) { return yes ? "yes" : "no"; }

}  // namespace

RunRecord run_point(const GridPoint& point) {
  RunRecord rec;
  rec.seed = static_cast<std::uint64_t>(point.get("seed", 0));
  rec.rng = Rng::algorithm;
  rec.k = static_cast<int>(point.get("k", 1));
  rec.instance = point.family + ":seed=" + std::to_string(rec.seed);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (point.family == "dup-tree-dqf") {
      rec.problem = "dqf";
      rec.param = static_cast<int>(point.get("d", 0));
      const int copies = static_cast<int>(point.get("copies", rec.k + rec.param + 3));
      dqf::DisjointInstance inst = gen_dup_tree_dqf(rec.k, rec.param, copies, rec.seed);
      dqf::Stats stats;
      Solution sol = dqf::solve_disjoint(inst, &stats);
      if (sol.yes() && !is_d_quasi_forest(inst.g.without(sol.witness), rec.param))
        throw std::logic_error("witness failed re-verification");
      rec.status = status_text(sol.yes());
      rec.witness = one_indexed(sol.witness);
      rec.nodes_expanded = stats.nodes_expanded;
      if (inst.g.vertex_count() <= kOracleVertexCap) {
        oracle::Options opt;
        opt.undeletable = inst.z;
        auto res = oracle::min_dqf(inst.g, rec.param, opt);
        if (res.opt_size) rec.oracle_status = status_text(*res.opt_size <= rec.k);
        else if (!res.node_budget_hit) rec.oracle_status = "no";
      }
    } else {
      MultiGraph g;
      if (point.family == "planted-rpf") {
        rec.problem = "rpf";
        rec.param = static_cast<int>(point.get("r", 1));
        g = gen_planted_rpf(static_cast<int>(point.get("n", 10)), rec.k, rec.param,
                            static_cast<int>(point.get("max_degree", 5)), rec.seed).g;
      } else if (point.family == "random") {
        const bool dqf = point.params.count("d") > 0;
        rec.problem = dqf ? "dqf" : "rpf";
        rec.param = static_cast<int>(dqf ? point.get("d", 0) : point.get("r", 1));
        const int n = static_cast<int>(point.get("n", 8));
        g = gen_random_multigraph(n, static_cast<int>(point.get("m", 2 * n)), rec.seed);
      } else {
        throw std::invalid_argument("unknown family '" + point.family + "'");
      }

      Solution sol;
      if (rec.problem == "rpf") {
        rpf::Stats stats;
        sol = rpf::solve({g, rec.k, rec.param}, &stats);
        if (sol.yes() && !is_r_pseudoforest(g.without(sol.witness), rec.param))
          throw std::logic_error("witness failed re-verification");
        rec.nodes_expanded = stats.nodes_expanded;
        rec.measure_root = stats.max_root_measure;
      } else {
        dqf::Stats stats;
        sol = dqf::solve_dqf({g, rec.k, rec.param}, &stats);
        if (sol.yes() && !is_d_quasi_forest(g.without(sol.witness), rec.param))
          throw std::logic_error("witness failed re-verification");
        rec.nodes_expanded = stats.nodes_expanded;
      }
      rec.status = status_text(sol.yes());
      rec.witness = one_indexed(sol.witness);
      if (g.vertex_count() <= kOracleVertexCap) {
        auto res = rec.problem == "rpf" ? oracle::min_rpf(g, rec.param) : oracle::min_dqf(g, rec.param);
        if (res.opt_size) rec.oracle_status = status_text(*res.opt_size <= rec.k);
      }
    }
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.witness.clear();
    rec.error = e.what();
  }
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::string to_json_line(const RunRecord& rec) {
  nlohmann::json j;
  j["instance"] = rec.instance;
  j["seed"] = rec.seed;
  j["rng"] = rec.rng;
  j["problem"] = rec.problem;
  j["k"] = rec.k;
  j[rec.problem == "dqf" ? "d" : "r"] = rec.param;
  j["status"] = rec.status;
  j["witness"] = rec.witness;
  j["nodes_expanded"] = rec.nodes_expanded;
  j["elapsed_ms"] = rec.elapsed_ms;
  if (rec.measure_root) j["measure_root"] = *rec.measure_root;
  if (rec.oracle_status) j["oracle_status"] = *rec.oracle_status;
  if (!rec.error.empty()) j["error"] = rec.error;
  return j.dump();
}

std::size_t bench_sweep(const std::vector<GridPoint>& points, std::ostream& out, int jobs) {
  std::mutex write_lock;
  auto emit = [&](const RunRecord& rec) {
    std::string line = to_json_line(rec) + '\n';
    std::lock_guard<std::mutex> guard(write_lock);
    out << line << std::flush;
  };
  if (jobs <= 1) {
    for (const auto& p : points) emit(run_point(p));
    return points.size();
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < points.size(); i = next++) emit(run_point(points[i]));
    });
  }
  for (auto& w : workers) w.join();
  return points.size();
}

}  // namespace nearforest
