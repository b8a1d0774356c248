#ifndef MAXMIN_WARMSTART_HPP
#define MAXMIN_WARMSTART_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "maxmin/functions.hpp"
#include "maxmin/geometry.hpp"

namespace maxmin {

/// Feasible random-walk search used to seed the solvers with a lower bound.
struct WalkConfig {
  /// Wall-clock budget, used when proposal_budget is unset. The conventional
  /// scaling is 180 s per dimension, split across restarts.
  double time_budget_s = 0.0;
  /// Deterministic alternative: total number of proposals across restarts.
  std::optional<std::uint64_t> proposal_budget;
  int restarts = 10;
  /// Step length is uniform in (0, step_scale * box diagonal].
  double step_scale = 0.05;
  std::uint64_t seed = 0;
};

struct WalkResult {
  double value = 0.0;
  Eigen::VectorXd point;
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  double wall_s = 0.0;
  /// Best value after each proposal; filled only when requested. Running max,
  /// so non-decreasing by construction.
  std::vector<double> best_history;
};

/// Repeated feasible steps x' = x + r * u (u uniform direction, r uniform in
/// (0, step_scale * diagonal]); infeasible proposals are discarded and count
/// against the budget. Each restart begins again at the initial point (box
/// center when feasible, else Chebyshev center). Deterministic per seed when
/// a proposal budget is used.
WalkResult random_walk(const RobustObjective& objective, const Polytope& domain,
                       const WalkConfig& config, bool record_history = false);

}  // namespace maxmin

#endif  // MAXMIN_WARMSTART_HPP
