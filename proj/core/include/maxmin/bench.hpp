#ifndef MAXMIN_BENCH_HPP
#define MAXMIN_BENCH_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxmin/separation.hpp"

namespace maxmin {

/// One benchmark row. gap_pct is empty (printed NA) when the oracle cannot
/// certify an upper bound; otherwise (U - L) / max(|U|, 1) * 100.
struct RunReport {
  std::string id;
  int dim = 0;
  int k = 0;
  std::string algorithm;
  std::string oracle;
  double rw_time_s = 0.0;
  double rw_lb = 0.0;
  double obj = 0.0;
  std::optional<double> gap_pct;
  double cpu_s = 0.0;
  double sep_time_pct = 0.0;
  std::uint64_t nodes = 0;
  double warm_start_value = 0.0;
};

inline constexpr const char* kReportCsvHeader =
    "id,dim,k,rw_time_s,rw_lb,obj,gap_pct,cpu_s,sep_time_pct,nodes";

std::string report_csv_row(const RunReport& report);
/// Parses a data row produced by report_csv_row (used by the loss-free
/// round-trip checks). Throws ParseError on malformed rows.
RunReport report_from_csv_row(const std::string& row);
void write_reports_csv(std::span<const RunReport> reports, std::ostream& out);

struct BenchEntry {
  int dim = 0;
  int k = 0;
  std::uint64_t seed = 0;
};

/// The 29-entry benchmark grid (dims 2,3 x K in {5,...,50}, and dims 5,10,20
/// x K in {50,100,200}), seeded by row number. Randomly generated, so
/// objective values are not comparable to any external table.
std::vector<BenchEntry> table1_spec();

/// JSON list of {dim, k, seed} objects.
std::vector<BenchEntry> load_bench_spec(const std::filesystem::path& path);

struct BenchOptions {
  std::string algorithm = "g2b2";  // "gb2" | "g2b2"
  OracleKind oracle = OracleKind::kBox;
  double epsilon = 1e-4;
  double tolerance = 1e-6;  // gb2 gap tolerance
  double time_limit_s = 60.0;
  std::optional<std::uint64_t> warmstart_proposals;
  double warmstart_time_s = 0.0;
  /// Keep only entries with dim <= max_dim when set (desk-scale runs).
  std::optional<int> max_dim;
  std::uint64_t seed = 0;
};

/// Runs warm start + solver per entry; failures are recorded in the row and
/// the run continues. Progress lines go to `progress` when non-null.
std::vector<RunReport> run_benchmark(std::span<const BenchEntry> entries,
                                     const BenchOptions& options,
                                     std::ostream* progress = nullptr);

}  // namespace maxmin

#endif  // MAXMIN_BENCH_HPP
