#ifndef MAXMIN_INSTANCE_HPP
#define MAXMIN_INSTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "maxmin/functions.hpp"
#include "maxmin/geometry.hpp"

namespace maxmin {

/// A solvable problem: box domain plus candidate functions, with optional
/// initial planes for the refinement solver and generator metadata.
struct Instance {
  std::string id;
  int dim = 0;
  Box box;
  std::vector<CandidateFunction> candidates;
  std::optional<std::vector<AffinePiece>> initial_planes;
  std::optional<std::uint64_t> seed;
  std::string family;

  RobustObjective objective() const { return RobustObjective(candidates); }
  Polytope domain() const { return Polytope(box); }
  int num_candidates() const { return static_cast<int>(candidates.size()); }
};

/// Random quadratic instance: K candidates x' Q'Q x + b . x + c with Q
/// entries uniform in [-3, 3], b and c entries uniform in [0, 20], over
/// X = [-10, 10]^dim. Deterministic per (dim, k, seed); the PRNG is
/// SplitMix64 with per-candidate streams.
Instance generate_instance(int dim, int k, std::uint64_t seed);

enum class NormKind { kOne, kInf };

/// Maximin-distance instance: one piecewise-linear candidate per anchor point
/// encoding ||x - d||_p. The inf-norm uses 2n pieces; the 1-norm uses 2^n
/// sign-pattern pieces and is capped at dimension 10.
Instance generate_maximin_instance(const std::vector<Eigen::VectorXd>& points, NormKind p,
                                   const Box& box);

/// JSON on disk; round-trips field-for-field. Throws ParseError with field
/// context on malformed input.
void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

}  // namespace maxmin

#endif  // MAXMIN_INSTANCE_HPP
