#ifndef MAXMIN_G2B2_HPP
#define MAXMIN_G2B2_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "maxmin/functions.hpp"
#include "maxmin/gb2.hpp"
#include "maxmin/geometry.hpp"
#include "maxmin/separation.hpp"
#include "maxmin/trace.hpp"

namespace maxmin {

struct G2Options {
  double epsilon = 1e-4;
  OracleKind oracle = OracleKind::kBox;
  std::uint64_t seed = 0;
  double time_limit_s = kInfinity;
  std::size_t max_iterations = 100'000;
  double initial_lower = -kInfinity;
  std::optional<Eigen::VectorXd> initial_point;
  /// One affine approximation per candidate. Defaults to the tangent plane at
  /// the box center of the domain.
  std::optional<std::vector<AffinePiece>> initial_planes;
  int multistart_count = 100;
  SolveTrace* trace = nullptr;
};

struct G2Stats {
  SolveStatus status = SolveStatus::kGapClosed;
  std::size_t iterations = 0;
  std::size_t nodes_created = 0;
  std::size_t nodes_pruned = 0;
  std::size_t empty_children = 0;
  std::size_t separation_calls = 0;
  std::size_t cuts_added = 0;
  std::size_t stalled_nodes = 0;
  /// True when the oracle certifies upper bounds (box / exact); the reported
  /// gap is meaningful only in that case.
  bool certified = false;
  double gap = kInfinity;
  double wall_s = 0.0;
  double separation_s = 0.0;
};

struct G2Result {
  double value = -kInfinity;
  Eigen::VectorXd point;
  double upper_bound = kInfinity;
  G2Stats stats;
};

/// One separation solve: maximize candidate - plane over the polytope with
/// the chosen oracle.
SeparationResult node_separation(const Polytope& polytope, const CandidateFunction& candidate,
                                 const AffinePiece& plane, OracleKind oracle,
                                 std::uint64_t seed, int multistart_count = 100);

struct G2NodeLp {
  Eigen::VectorXd point;
  double theta = 0.0;
};

/// Node relaxation LP: maximize theta subject to
///   theta <= plane_k(x) + sep_value_k + epsilon   (k not epsilon-accurate)
///   theta <= plane_k(x) + epsilon                 (k epsilon-accurate)
/// over the polytope. Returns nullopt when the polytope is empty.
std::optional<G2NodeLp> g2_node_lp(const Polytope& polytope,
                                   const std::vector<AffinePiece>& planes,
                                   const std::vector<double>& sep_values,
                                   const std::vector<bool>& accurate, double epsilon);

/// Candidate to refine next: the inaccurate index with the largest separation
/// value, ties to the smallest index. nullopt when everything is accurate
/// (the caller prunes such a node).
std::optional<int> pick_refinement_target(const std::vector<double>& sep_values,
                                          const std::vector<bool>& accurate);

struct G2Branch {
  AffinePiece cut;  // tangent of the candidate at the anchor
  /// Side where the current plane stays dominant; nullopt when empty.
  std::optional<Polytope> keep_side;
  /// Side where the cut dominates (the child that replaces its plane).
  std::optional<Polytope> cut_side;
  /// Cut coincides with the current plane; no branch was made.
  bool degenerate = false;
};

/// Splits `polytope` along {current_plane >= tangent-at-anchor}. The anchor
/// may lie outside the polytope (box-oracle separation points); the tangent
/// is a global underestimator of the candidate either way.
G2Branch branch_g2(const Polytope& polytope, const AffinePiece& current_plane,
                   const CandidateFunction& candidate, const Eigen::VectorXd& anchor);

/// Tangent-plane refinement branch-and-bound for general convex candidates.
/// Returns an epsilon-optimal solution when the oracle certifies upper
/// bounds; otherwise runs to budget and reports an uncertified bound.
G2Result solve_g2b2(const RobustObjective& objective, const Polytope& domain,
                    const G2Options& options = {});

}  // namespace maxmin

#endif  // MAXMIN_G2B2_HPP
