// Command line front end: instance generation, solving, benchmarking, and
// maximin-distance instance construction.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "maxmin/bench.hpp"
#include "maxmin/errors.hpp"
#include "maxmin/g2b2.hpp"
#include "maxmin/gb2.hpp"
#include "maxmin/instance.hpp"
#include "maxmin/rng.hpp"
#include "maxmin/warmstart.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

struct SolveArgs {
  std::string file;
  std::string algorithm = "g2b2";
  std::string oracle = "box";
  std::string policy = "random";
  std::string report = "text";
  double epsilon = 1e-4;
  double tolerance = 1e-6;
  double time_limit = 60.0;
  std::uint64_t warmstart_proposals = 0;
  double warmstart_time = 0.0;
  std::uint64_t seed = 0;
};

int run_solve(const SolveArgs& args) {
  const maxmin::Instance inst = maxmin::load_instance(args.file);
  const maxmin::RobustObjective objective = inst.objective();
  const maxmin::Polytope domain = inst.domain();

  maxmin::WalkConfig walk;
  walk.seed = maxmin::SplitMix64::derive_stream(args.seed, "cli-walk");
  if (args.warmstart_proposals > 0)
    walk.proposal_budget = args.warmstart_proposals;
  else
    walk.time_budget_s = args.warmstart_time;
  const maxmin::WalkResult warm = maxmin::random_walk(objective, domain, walk);
  const double solver_budget = std::max(0.0, args.time_limit - warm.wall_s);

  maxmin::RunReport report;
  report.id = inst.id;
  report.dim = inst.dim;
  report.k = inst.num_candidates();
  report.algorithm = args.algorithm;
  report.oracle = args.oracle;
  report.rw_time_s = warm.wall_s;
  report.rw_lb = warm.value;
  report.warm_start_value = warm.value;

  double upper = maxmin::kInfinity;
  Eigen::VectorXd point;
  bool solved = false;

  if (args.algorithm == "gb2") {
    maxmin::GbOptions options;
    options.tolerance = args.tolerance;
    options.seed = args.seed;
    options.time_limit_s = solver_budget;
    options.initial_lower = warm.value;
    options.initial_point = warm.point;
    options.policy = args.policy == "minmax"
                         ? maxmin::FunctionSelectionPolicy::kMinMax
                         : maxmin::FunctionSelectionPolicy::kRandomSeeded;
    const maxmin::GbResult res = maxmin::solve_gb2(objective, domain, options);
    report.obj = res.value;
    report.nodes = res.stats.nodes_created;
    report.cpu_s = warm.wall_s + res.stats.wall_s;
    report.gap_pct = std::max(0.0, res.stats.gap) /
                     std::max(std::abs(res.upper_bound), 1.0) * 100.0;
    upper = res.upper_bound;
    point = res.point;
    solved = res.stats.status == maxmin::SolveStatus::kGapClosed ||
             res.stats.status == maxmin::SolveStatus::kNoLeaves;
  } else if (args.algorithm == "g2b2") {
    const auto oracle = maxmin::oracle_from_name(args.oracle);
    if (!oracle) throw std::invalid_argument("unknown oracle: " + args.oracle);
    maxmin::G2Options options;
    options.epsilon = args.epsilon;
    options.oracle = *oracle;
    options.seed = args.seed;
    options.time_limit_s = solver_budget;
    options.initial_lower = warm.value;
    options.initial_point = warm.point;
    options.initial_planes = inst.initial_planes;
    const maxmin::G2Result res = maxmin::solve_g2b2(objective, domain, options);
    report.obj = res.value;
    report.nodes = res.stats.nodes_created;
    report.cpu_s = warm.wall_s + res.stats.wall_s;
    report.sep_time_pct = res.stats.wall_s > 0.0
                              ? res.stats.separation_s / res.stats.wall_s * 100.0
                              : 0.0;
    if (res.stats.certified)
      report.gap_pct = std::max(0.0, res.stats.gap) /
                       std::max(std::abs(res.upper_bound), 1.0) * 100.0;
    upper = res.upper_bound;
    point = res.point;
    solved = res.stats.certified &&
             (res.stats.status == maxmin::SolveStatus::kGapClosed ||
              res.stats.status == maxmin::SolveStatus::kNoLeaves);
  } else {
    throw std::invalid_argument("unknown algorithm: " + args.algorithm);
  }

  if (args.report == "csv") {
    std::vector<maxmin::RunReport> rows{report};
    maxmin::write_reports_csv(rows, std::cout);
  } else {
    std::cout << "instance:   " << report.id << " (dim=" << report.dim
              << ", K=" << report.k << ")\n"
              << "algorithm:  " << report.algorithm;
    if (report.algorithm == "g2b2") std::cout << " / oracle " << report.oracle;
    std::cout << "\nwarm start: " << report.rw_lb << " (" << report.rw_time_s << " s)\n"
              << "objective:  " << report.obj << "\n"
              << "upper bound: " << upper << "\n"
              << "gap %:      ";
    if (report.gap_pct)
      std::cout << *report.gap_pct;
    else
      std::cout << "NA (heuristic oracle, bound not certified)";
    std::cout << "\nnodes:      " << report.nodes << "\n"
              << "cpu s:      " << report.cpu_s << "\n";
    if (point.size() > 0) {
      std::cout << "point:      [";
      for (int i = 0; i < point.size(); ++i)
        std::cout << (i > 0 ? ", " : "") << point[i];
      std::cout << "]\n";
    }
  }
  return solved ? kExitSolved : kExitBudget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust max-min solver: maximize the minimum of convex candidates over a box-bounded polytope"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random quadratic instance");
  int gen_dim = 2;
  int gen_k = 5;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--dim", gen_dim, "Dimension")->required();
  gen->add_option("--k", gen_k, "Number of candidate functions")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output instance file")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  SolveArgs solve_args;
  solve->add_option("file", solve_args.file, "Instance file")->required();
  solve->add_option("--algorithm", solve_args.algorithm, "gb2 | g2b2")
      ->check(CLI::IsMember({"gb2", "g2b2"}));
  solve->add_option("--oracle", solve_args.oracle, "box | lc1 | lc2 | exact")
      ->check(CLI::IsMember({"box", "lc1", "lc2", "exact"}));
  solve->add_option("--policy", solve_args.policy, "gb2 branching candidate policy")
      ->check(CLI::IsMember({"random", "minmax"}));
  solve->add_option("--epsilon", solve_args.epsilon, "g2b2 accuracy tolerance");
  solve->add_option("--tolerance", solve_args.tolerance, "gb2 gap tolerance");
  solve->add_option("--time-limit", solve_args.time_limit, "Seconds, warm start included");
  solve->add_option("--warmstart-proposals", solve_args.warmstart_proposals,
                    "Random-walk proposal budget (deterministic)");
  solve->add_option("--warmstart-time", solve_args.warmstart_time,
                    "Random-walk wall-clock budget in seconds");
  solve->add_option("--seed", solve_args.seed, "Seed for all randomized pieces");
  solve->add_option("--report", solve_args.report, "text | csv")
      ->check(CLI::IsMember({"text", "csv"}));

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark spec and write CSV");
  std::string bench_spec = "table1";
  std::string bench_out;
  int bench_max_dim = 0;
  maxmin::BenchOptions bench_options;
  std::uint64_t bench_proposals = 0;
  bench->add_option("--spec", bench_spec, "table1 or a JSON spec file");
  bench->add_option("--out", bench_out, "Output CSV path")->required();
  bench->add_option("--algorithm", bench_options.algorithm, "gb2 | g2b2")
      ->check(CLI::IsMember({"gb2", "g2b2"}));
  std::string bench_oracle = "box";
  bench->add_option("--oracle", bench_oracle, "box | lc1 | lc2 | exact")
      ->check(CLI::IsMember({"box", "lc1", "lc2", "exact"}));
  bench->add_option("--epsilon", bench_options.epsilon, "g2b2 accuracy tolerance");
  bench->add_option("--time-limit", bench_options.time_limit_s, "Per-instance seconds");
  bench->add_option("--warmstart-proposals", bench_proposals,
                    "Random-walk proposal budget per instance");
  bench->add_option("--warmstart-time", bench_options.warmstart_time_s,
                    "Random-walk seconds per instance");
  bench->add_option("--max-dim", bench_max_dim, "Skip instances above this dimension");
  bench->add_option("--seed", bench_options.seed, "Benchmark-level seed");

  // maximin
  auto* maximin = app.add_subcommand(
      "maximin", "Build a maximin p-norm distance instance from anchor points");
  std::string mm_points;
  std::string mm_p = "inf";
  std::string mm_out;
  std::vector<double> mm_box;
  maximin->add_option("--points", mm_points, "JSON file: array of points")->required();
  maximin->add_option("--p", mm_p, "1 | inf")->check(CLI::IsMember({"1", "inf"}));
  maximin->add_option("--box", mm_box,
                      "Either lo hi (applied to every coordinate) or lo hi per coordinate")
      ->expected(-2);
  maximin->add_option("--out", mm_out, "Output instance file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      maxmin::save_instance(maxmin::generate_instance(gen_dim, gen_k, gen_seed), gen_out);
      std::cout << "wrote " << gen_out << "\n";
      return kExitSolved;
    }
    if (solve->parsed()) return run_solve(solve_args);
    if (bench->parsed()) {
      const std::vector<maxmin::BenchEntry> entries =
          bench_spec == "table1" ? maxmin::table1_spec()
                                 : maxmin::load_bench_spec(bench_spec);
      bench_options.oracle = *maxmin::oracle_from_name(bench_oracle);
      if (bench_max_dim > 0) bench_options.max_dim = bench_max_dim;
      if (bench_proposals > 0) bench_options.warmstart_proposals = bench_proposals;
      const std::vector<maxmin::RunReport> reports =
          maxmin::run_benchmark(entries, bench_options, &std::cerr);
      std::ofstream out(bench_out);
      if (!out) throw std::runtime_error("cannot open for writing: " + bench_out);
      maxmin::write_reports_csv(reports, out);
      std::cout << "wrote " << bench_out << " (" << reports.size() << " rows)\n";
      return kExitSolved;
    }
    if (maximin->parsed()) {
      std::ifstream in(mm_points);
      if (!in) throw maxmin::ParseError("cannot open points file: " + mm_points);
      nlohmann::json j;
      in >> j;
      if (!j.is_array() || j.empty())
        throw maxmin::ParseError("points file must be a nonempty JSON array of points");
      std::vector<Eigen::VectorXd> points;
      for (const auto& row : j) {
        Eigen::VectorXd p(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) p[static_cast<int>(i)] = row[i];
        points.push_back(std::move(p));
      }
      const int dim = static_cast<int>(points.front().size());
      maxmin::Box box = maxmin::Box::cube(dim, -10.0, 10.0);
      if (mm_box.size() == 2) {
        box = maxmin::Box::cube(dim, mm_box[0], mm_box[1]);
      } else if (mm_box.size() == static_cast<std::size_t>(2 * dim)) {
        std::vector<std::pair<double, double>> bounds;
        for (int i = 0; i < dim; ++i) bounds.emplace_back(mm_box[2 * i], mm_box[2 * i + 1]);
        box = maxmin::Box(std::move(bounds));
      } else if (!mm_box.empty()) {
        throw std::invalid_argument("--box needs 2 or 2*dim values");
      }
      const maxmin::NormKind p =
          mm_p == "1" ? maxmin::NormKind::kOne : maxmin::NormKind::kInf;
      maxmin::save_instance(maxmin::generate_maximin_instance(points, p, box), mm_out);
      std::cout << "wrote " << mm_out << "\n";
      return kExitSolved;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
