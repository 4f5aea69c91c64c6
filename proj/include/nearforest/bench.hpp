#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nearforest {

// One assignment of grid keys to values. The family is kept as text.
struct GridPoint {
  std::string family;
  std::map<std::string, long> params;

  long get(const std::string& key, long fallback) const;
};

// "family=planted-rpf;n=10;k=1..4;r=1,2;seeds=0..4". Each key takes a
// comma list whose items are integers or inclusive a..b ranges; the points
// are the cartesian product in key order. An empty or blank spec yields
// no points. Throws std::invalid_argument on malformed input.
std::vector<GridPoint> parse_grid(std::string_view spec);

struct RunRecord {
  std::string instance;
  std::uint64_t seed = 0;
  std::string rng = "mt19937_64";
  std::string problem;  // rpf | dqf
  int k = 0;
  int param = 0;        // r for rpf, d for dqf
  std::string status;   // yes | no | error
  std::vector<std::uint32_t> witness;  // 1-indexed
  std::uint64_t nodes_expanded = 0;
  double elapsed_ms = 0;
  std::optional<long> measure_root;     // rpf only
  std::optional<std::string> oracle_status;
  std::string error;
};

// Families: planted-rpf (n, k, r, max_degree), random (n, m, k and r or
// d), dup-tree-dqf (k, d, copies). Generation and solver failures become a
// record with status "error".
RunRecord run_point(const GridPoint& point);

std::string to_json_line(const RunRecord& record);

// Writes one JSON line per point, each line under a lock so concurrent
// workers never interleave. jobs > 1 runs points on that many threads and
// gives up the input order of lines. Returns the number of records.
std::size_t bench_sweep(const std::vector<GridPoint>& points, std::ostream& out, int jobs = 1);

}  // namespace nearforest
