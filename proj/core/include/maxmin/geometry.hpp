#ifndef MAXMIN_GEOMETRY_HPP
#define MAXMIN_GEOMETRY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace maxmin {

/// Absolute tolerance on constraint residuals for membership and emptiness.
inline constexpr double kFeasibilityTol = 1e-7;
/// Euclidean distance below which two enumerated vertices are merged.
inline constexpr double kVertexDedupTol = 1e-6;
/// Hard cap on box-vertex enumeration (2^20 vertices is the practical wall).
inline constexpr int kBoxVertexDimCap = 20;
/// Exact polytope vertex enumeration is reserved for small dimension.
inline constexpr int kExactVertexDimCap = 4;

/// Closed halfspace {x : normal . x <= offset}.
struct Halfspace {
  Eigen::VectorXd normal;
  double offset = 0.0;

  double residual(const Eigen::VectorXd& x) const { return normal.dot(x) - offset; }
};

/// Axis-aligned box given by per-coordinate [lo, hi] intervals.
struct Box {
  std::vector<std::pair<double, double>> bounds;

  Box() = default;
  explicit Box(std::vector<std::pair<double, double>> b);
  static Box cube(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(bounds.size()); }
  Eigen::VectorXd center() const;
  double diagonal() const;
  bool contains(const Eigen::VectorXd& x, double tol = kFeasibilityTol) const;
};

/// Polytope in halfspace form: a bounding box plus extra halfspaces. The box
/// is part of the constraint set; it is never dropped, so every polytope is
/// bounded by construction. Instances are immutable after construction and
/// safe to share across threads.
class Polytope {
 public:
  explicit Polytope(Box box);
  Polytope(Box box, std::vector<Halfspace> halfspaces);
  static Polytope cube(int dim, double lo, double hi);

  int dim() const { return box_.dim(); }
  const Box& box() const { return box_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  /// True when construction already proved emptiness (a zero-normal row with
  /// negative offset). is_empty() also covers the general LP case.
  bool known_empty() const { return forced_empty_; }

  bool contains(const Eigen::VectorXd& x, double tol = kFeasibilityTol) const;

  /// Largest violation of any constraint at x (<= 0 means feasible).
  double max_residual(const Eigen::VectorXd& x) const;

 private:
  friend Polytope intersect(const Polytope& p, const Halfspace& h);

  Box box_;
  std::vector<Halfspace> halfspaces_;
  bool forced_empty_ = false;
};

/// Returns p restricted by h. Tautological rows (zero normal, offset >= 0)
/// are dropped; contradictory rows (zero normal, offset < 0) mark the result
/// empty. p itself is unchanged.
Polytope intersect(const Polytope& p, const Halfspace& h);

/// Decides emptiness with one phase-1 LP at kFeasibilityTol.
bool is_empty(const Polytope& p);

/// Per-coordinate min/max hull of p, from 2*dim LP solves. Throws
/// std::invalid_argument when p is empty (caller should have pruned).
Box bounding_box(const Polytope& p);

/// All 2^dim corner points of b, in mask order (bit i selects hi for
/// coordinate i). Collapsed intervals produce duplicate points, which are
/// kept. Throws CapabilityError above the dimension cap.
std::vector<Eigen::VectorXd> enumerate_box_vertices(const Box& b, int dim_cap = kBoxVertexDimCap);

/// Visits box vertices lazily in the same order without materializing them.
template <typename Visitor>
void for_each_box_vertex(const Box& b, Visitor&& visit) {
  const int n = b.dim();
  Eigen::VectorXd v(n);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (int i = 0; i < n; ++i)
      v[i] = (mask >> i) & 1 ? b.bounds[i].second : b.bounds[i].first;
    visit(static_cast<const Eigen::VectorXd&>(v));
  }
}

/// Exact vertex enumeration for desk-scale dimensions: every point where dim
/// linearly independent constraints are tight and all constraints hold,
/// deduplicated at kVertexDedupTol. Throws CapabilityError above the cap.
std::vector<Eigen::VectorXd> enumerate_vertices(const Polytope& p, int dim_cap = kExactVertexDimCap);

/// Chebyshev center of p (deepest point w.r.t. Euclidean constraint
/// distance), computed by one LP. Throws std::invalid_argument on empty p.
/// Used as a deterministic interior starting point for samplers.
Eigen::VectorXd chebyshev_center(const Polytope& p);

/// Hit-and-run samples from p: `burn_in` warm-up steps from the Chebyshev
/// center, then one sample per step. Deterministic per seed.
std::vector<Eigen::VectorXd> sample_hit_and_run(const Polytope& p, int count,
                                                std::uint64_t seed, int burn_in = 50);

}  // namespace maxmin

#endif  // MAXMIN_GEOMETRY_HPP
