#ifndef MAXMIN_GB2_HPP
#define MAXMIN_GB2_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "maxmin/functions.hpp"
#include "maxmin/geometry.hpp"
#include "maxmin/lp.hpp"
#include "maxmin/rng.hpp"
#include "maxmin/trace.hpp"

namespace maxmin {

/// How the next candidate to branch on is chosen at a node.
///  - kRandomSeeded: uniform among unused candidates (deterministic per seed).
///  - kMinMax: the unused candidate with the smallest maximum over the root
///    domain (maxima precomputed once per solve).
enum class FunctionSelectionPolicy { kRandomSeeded, kMinMax };

enum class SolveStatus {
  kGapClosed,        // bounds met the tolerance
  kNoLeaves,         // search tree exhausted (bounds coincide)
  kBudgetExhausted,  // time or iteration budget hit first
  kStalled,          // remaining leaves cannot be refined further
};

/// Ordered branching history of a node: which piece of which candidate is
/// dominant. A candidate appears at most once per path.
struct NodeLabel {
  std::vector<std::pair<int, int>> entries;

  bool contains_candidate(int k) const {
    for (const auto& [ck, i] : entries)
      if (ck == k) return true;
    return false;
  }
  bool full(int num_candidates) const {
    return static_cast<int>(entries.size()) == num_candidates;
  }
};

struct GbNode {
  NodeLabel label;
  Polytope polytope;
  double upper = kInfinity;
  double lower = -kInfinity;
  std::optional<Eigen::VectorXd> incumbent;
};

struct GbNodeBounds {
  double lower = 0.0;
  double upper = 0.0;
  Eigen::VectorXd point;
};

struct GbOptions {
  double tolerance = 1e-6;
  FunctionSelectionPolicy policy = FunctionSelectionPolicy::kRandomSeeded;
  std::uint64_t seed = 0;
  double time_limit_s = kInfinity;
  std::size_t max_iterations = 1'000'000;
  /// Warm-start value/point folded into the global lower bound.
  double initial_lower = -kInfinity;
  std::optional<Eigen::VectorXd> initial_point;
  SolveTrace* trace = nullptr;
};

struct GbStats {
  SolveStatus status = SolveStatus::kGapClosed;
  std::size_t iterations = 0;
  std::size_t nodes_created = 0;
  std::size_t nodes_pruned = 0;
  std::size_t empty_children = 0;
  std::size_t lp_solves = 0;
  double gap = 0.0;
  double wall_s = 0.0;
};

struct GbResult {
  double value = -kInfinity;
  Eigen::VectorXd point;
  double upper_bound = kInfinity;
  GbStats stats;
};

/// Bounds of one node: the node LP maximizes theta subject to
/// theta <= a . x + b for every labelled piece and x in the node polytope.
/// upper = LP value, point = LP argmax, lower = f(point). Returns nullopt
/// when the polytope is empty (LP infeasible).
std::optional<GbNodeBounds> gb_node_bounds(const NodeLabel& label, const Polytope& polytope,
                                           const RobustObjective& objective);

/// Leaf with the largest upper bound; ties go to the earliest entry.
const GbNode* select_leaf(std::span<const GbNode> leaves);

/// Maximum of each candidate over the domain (one LP per linear piece).
/// Input to the kMinMax selection policy.
std::vector<double> candidate_domain_maxima(const RobustObjective& objective,
                                            const Polytope& domain);

/// Next candidate to branch on at a node whose label is not yet full.
/// `domain_maxima` is consulted only by kMinMax.
int select_function(const NodeLabel& label, int num_candidates,
                    FunctionSelectionPolicy policy, SplitMix64& rng,
                    std::span<const double> domain_maxima = {});

/// Children of `node` after branching on candidate k: one child per linear
/// piece, restricted to that piece's dominance region. Empty children are
/// discarded (their labels are reported through `discarded` when non-null).
/// Bounds are not computed here.
std::vector<GbNode> branch_gb(const GbNode& node, int k, const RobustObjective& objective,
                              std::vector<NodeLabel>* discarded = nullptr);

/// Exact geometric branch-and-bound for piecewise-linear candidates.
/// Throws std::invalid_argument unless every candidate is piecewise-linear
/// and the domain is nonempty.
GbResult solve_gb2(const RobustObjective& objective, const Polytope& domain,
                   const GbOptions& options = {});

}  // namespace maxmin

#endif  // MAXMIN_GB2_HPP
