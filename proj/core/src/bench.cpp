#include "maxmin/bench.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "maxmin/errors.hpp"
#include "maxmin/g2b2.hpp"
#include "maxmin/gb2.hpp"
#include "maxmin/instance.hpp"
#include "maxmin/rng.hpp"
#include "maxmin/warmstart.hpp"

namespace maxmin {

namespace {

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const char* field) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ParseError(std::string("bad numeric field ") + field);
  return v;
}

}  // namespace

std::string report_csv_row(const RunReport& r) {
  std::ostringstream out;
  out << r.id << ',' << r.dim << ',' << r.k << ',' << format_double(r.rw_time_s) << ','
      << format_double(r.rw_lb) << ',' << format_double(r.obj) << ','
      << (r.gap_pct ? format_double(*r.gap_pct) : std::string("NA")) << ','
      << format_double(r.cpu_s) << ',' << format_double(r.sep_time_pct) << ',' << r.nodes;
  return out.str();
}

RunReport report_from_csv_row(const std::string& row) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : row) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  if (fields.size() != 10) throw ParseError("report row must have 10 fields");

  RunReport r;
  r.id = fields[0];
  r.dim = static_cast<int>(parse_double(fields[1], "dim"));
  r.k = static_cast<int>(parse_double(fields[2], "k"));
  r.rw_time_s = parse_double(fields[3], "rw_time_s");
  r.rw_lb = parse_double(fields[4], "rw_lb");
  r.obj = parse_double(fields[5], "obj");
  if (fields[6] != "NA") r.gap_pct = parse_double(fields[6], "gap_pct");
  r.cpu_s = parse_double(fields[7], "cpu_s");
  r.sep_time_pct = parse_double(fields[8], "sep_time_pct");
  r.nodes = static_cast<std::uint64_t>(parse_double(fields[9], "nodes"));
  r.warm_start_value = r.rw_lb;
  return r;
}

void write_reports_csv(std::span<const RunReport> reports, std::ostream& out) {
  out << kReportCsvHeader << '\n';
  for (const RunReport& r : reports) out << report_csv_row(r) << '\n';
}

std::vector<BenchEntry> table1_spec() {
  std::vector<BenchEntry> entries;
  std::uint64_t seed = 1;
  for (int dim : {2, 3})
    for (int k = 5; k <= 50; k += 5) entries.push_back({dim, k, seed++});
  for (int dim : {5, 10, 20})
    for (int k : {50, 100, 200}) entries.push_back({dim, k, seed++});
  return entries;
}

std::vector<BenchEntry> load_bench_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open bench spec: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bench spec is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("bench spec must be a JSON array");
  std::vector<BenchEntry> entries;
  for (const auto& row : j) {
    if (!row.contains("dim") || !row.contains("k"))
      throw ParseError("bench spec entries need dim and k");
    entries.push_back({row["dim"].get<int>(), row["k"].get<int>(),
                       row.value("seed", std::uint64_t{0})});
  }
  return entries;
}

std::vector<RunReport> run_benchmark(std::span<const BenchEntry> entries,
                                     const BenchOptions& options, std::ostream* progress) {
  std::vector<RunReport> reports;
  for (const BenchEntry& entry : entries) {
    if (options.max_dim && entry.dim > *options.max_dim) continue;

    const Instance inst = generate_instance(entry.dim, entry.k, entry.seed);
    RunReport report;
    report.id = inst.id;
    report.dim = entry.dim;
    report.k = entry.k;
    report.algorithm = options.algorithm;
    report.oracle = std::string(oracle_name(options.oracle));

    const auto row_start = std::chrono::steady_clock::now();
    try {
      const RobustObjective objective = inst.objective();
      const Polytope domain = inst.domain();

      WalkConfig walk;
      walk.seed = SplitMix64::derive_stream(options.seed, "bench-walk") ^ entry.seed;
      if (options.warmstart_proposals)
        walk.proposal_budget = options.warmstart_proposals;
      else
        walk.time_budget_s = options.warmstart_time_s;
      const WalkResult warm = random_walk(objective, domain, walk);
      report.rw_time_s = warm.wall_s;
      report.rw_lb = warm.value;
      report.warm_start_value = warm.value;

      const double solver_budget = std::max(0.0, options.time_limit_s - warm.wall_s);
      if (options.algorithm == "gb2") {
        GbOptions gb;
        gb.tolerance = options.tolerance;
        gb.seed = options.seed ^ entry.seed;
        gb.time_limit_s = solver_budget;
        gb.initial_lower = warm.value;
        gb.initial_point = warm.point;
        const GbResult res = solve_gb2(objective, domain, gb);
        report.obj = res.value;
        report.gap_pct = std::max(0.0, res.stats.gap) /
                         std::max(std::abs(res.upper_bound), 1.0) * 100.0;
        report.nodes = res.stats.nodes_created;
      } else if (options.algorithm == "g2b2") {
        G2Options g2;
        g2.epsilon = options.epsilon;
        g2.oracle = options.oracle;
        g2.seed = options.seed ^ entry.seed;
        g2.time_limit_s = solver_budget;
        g2.initial_lower = warm.value;
        g2.initial_point = warm.point;
        const G2Result res = solve_g2b2(objective, domain, g2);
        report.obj = res.value;
        if (res.stats.certified)
          report.gap_pct = std::max(0.0, res.stats.gap) /
                           std::max(std::abs(res.upper_bound), 1.0) * 100.0;
        report.nodes = res.stats.nodes_created;
        const double solve_wall = res.stats.wall_s;
        report.sep_time_pct =
            solve_wall > 0.0 ? res.stats.separation_s / solve_wall * 100.0 : 0.0;
      } else {
        throw std::invalid_argument("unknown algorithm: " + options.algorithm);
      }
    } catch (const std::exception& e) {
      // Best-effort row: keep whatever the warm start found, no gap claim.
      report.obj = report.rw_lb;
      report.gap_pct = std::nullopt;
      if (progress != nullptr)
        *progress << report.id << ": failed (" << e.what() << ")\n";
    }
    report.cpu_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - row_start).count();
    if (progress != nullptr)
      *progress << report.id << ": obj=" << format_double(report.obj) << " gap="
                << (report.gap_pct ? format_double(*report.gap_pct) : std::string("NA"))
                << " nodes=" << report.nodes << " cpu=" << format_double(report.cpu_s)
                << "s\n";
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace maxmin
