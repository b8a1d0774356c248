#ifndef MAXMIN_SEPARATION_HPP
#define MAXMIN_SEPARATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include <Eigen/Core>

#include "maxmin/functions.hpp"
#include "maxmin/geometry.hpp"

namespace maxmin {

/// Maximize candidate(x) - affine(x) over a polytope. The objective is convex,
/// so its maximum sits on a vertex of the polytope.
struct SeparationTask {
  Polytope polytope;
  CandidateFunction candidate;
  AffinePiece affine;

  double objective(const Eigen::VectorXd& x) const {
    return candidate.value(x) - affine.value(x);
  }
  Eigen::VectorXd objective_subgradient(const Eigen::VectorXd& x) const {
    return candidate.subgradient(x) - affine.a;
  }
};

struct SeparationResult {
  Eigen::VectorXd point;
  double value = 0.0;
  /// True when value is guaranteed >= the true maximum (box / exact oracles);
  /// false for the ascent heuristics, whose value is only a lower bound.
  bool certified_upper = false;
};

enum class OracleKind { kBox, kLc1, kLc2, kExact };

std::optional<OracleKind> oracle_from_name(std::string_view name);
std::string_view oracle_name(OracleKind kind);
/// Box and exact oracles certify upper bounds; the ascent heuristics do not.
bool oracle_certifies(OracleKind kind);

/// Circumscribed-box oracle: bounding_box(P) via 2n LPs, objective evaluated
/// at all box corners. Certified since box >= P and the max of a convex
/// function over the box is at a corner. The returned point may lie outside
/// P. Throws CapabilityError above the vertex cap.
SeparationResult oracle_box(const SeparationTask& task, int dim_cap = kBoxVertexDimCap);

/// Exact oracle: enumerate the polytope's vertices (dim <= 4) and pick the
/// best. Certified and tight. Throws CapabilityError above the cap.
SeparationResult oracle_exact(const SeparationTask& task, int dim_cap = kExactVertexDimCap);

/// Conditional-gradient ascent from a feasible start: repeatedly move to the
/// LP maximizer of the current subgradient direction until the linear model
/// stops improving (1e-9) or 100 steps. Objective values are non-decreasing
/// along the iterates. Uncertified.
SeparationResult oracle_linearization_ascent(const SeparationTask& task,
                                             const Eigen::VectorXd& start);

/// Ascents from n_starts hit-and-run samples of P; returns the best.
/// Deterministic per seed. Uncertified.
SeparationResult oracle_multistart(const SeparationTask& task, int n_starts,
                                   std::uint64_t seed);

/// Dispatch by kind: kLc1 = single ascent from the seed's first sample,
/// kLc2 = multistart with `multistart_count` starts.
SeparationResult run_oracle(OracleKind kind, const SeparationTask& task,
                            std::uint64_t seed, int multistart_count = 100);

namespace detail {
/// Best objective value over an explicit point set (shared by the box and
/// exact oracles and by the solvers' batched per-node separation).
SeparationResult maximize_over_points(const SeparationTask& task,
                                      std::span<const Eigen::VectorXd> points,
                                      bool certified);
}  // namespace detail

}  // namespace maxmin

#endif  // MAXMIN_SEPARATION_HPP
