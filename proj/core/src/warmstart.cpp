#include "maxmin/warmstart.hpp"

#include <chrono>

#include "maxmin/rng.hpp"

namespace maxmin {

WalkResult random_walk(const RobustObjective& objective, const Polytope& domain,
                       const WalkConfig& config, bool record_history) {
  const int n = domain.dim();
  Eigen::VectorXd initial = domain.box().center();
  if (!domain.contains(initial)) initial = chebyshev_center(domain);

  const double step_cap = config.step_scale * domain.box().diagonal();
  const int restarts = std::max(config.restarts, 1);
  SplitMix64 rng(SplitMix64::derive_stream(config.seed, "random-walk"));

  WalkResult result;
  result.point = initial;
  result.value = objective.value(initial);

  const auto start_time = std::chrono::steady_clock::now();
  auto elapsed = [&start_time] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
        .count();
  };

  const bool counted = config.proposal_budget.has_value();
  const std::uint64_t per_restart_proposals =
      counted ? *config.proposal_budget / static_cast<std::uint64_t>(restarts) : 0;
  std::uint64_t counted_remainder =
      counted ? *config.proposal_budget % static_cast<std::uint64_t>(restarts) : 0;
  const double per_restart_seconds = config.time_budget_s / restarts;

  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd x = initial;
    std::uint64_t budget = per_restart_proposals;
    if (counted_remainder > 0) {  // spread an uneven budget over the first restarts
      ++budget;
      --counted_remainder;
    }
    const double deadline = (r + 1) * per_restart_seconds;
    while (counted ? budget > 0 : elapsed() < deadline) {
      if (counted) --budget;
      const Eigen::VectorXd u = rng.next_unit_vector(n);
      const double step = rng.next_unit() * step_cap;
      const Eigen::VectorXd proposal = x + step * u;
      ++result.proposals;
      if (domain.contains(proposal)) {
        x = proposal;
        ++result.accepted;
        const double v = objective.value(x);
        if (v > result.value) {
          result.value = v;
          result.point = x;
        }
      }
      if (record_history) result.best_history.push_back(result.value);
    }
  }
  result.wall_s = elapsed();
  return result;
}

}  // namespace maxmin
