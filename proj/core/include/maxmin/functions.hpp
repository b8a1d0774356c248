#ifndef MAXMIN_FUNCTIONS_HPP
#define MAXMIN_FUNCTIONS_HPP

#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "maxmin/geometry.hpp"

namespace maxmin {

/// Affine function x -> a . x + b.
struct AffinePiece {
  Eigen::VectorXd a;
  double b = 0.0;

  double value(const Eigen::VectorXd& x) const { return a.dot(x) + b; }
  int dim() const { return static_cast<int>(a.size()); }
};

/// Convex piecewise-linear function: the pointwise max of its affine pieces.
class PiecewiseLinearConvex {
 public:
  explicit PiecewiseLinearConvex(std::vector<AffinePiece> pieces);

  int dim() const { return pieces_.front().dim(); }
  int num_pieces() const { return static_cast<int>(pieces_.size()); }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const AffinePiece& piece(int i) const { return pieces_[i]; }

  double value(const Eigen::VectorXd& x) const;
  /// Smallest piece index attaining the max at x.
  int active_piece(const Eigen::VectorXd& x) const;
  /// Gradient of the active piece; a valid subgradient everywhere.
  Eigen::VectorXd subgradient(const Eigen::VectorXd& x) const;

 private:
  std::vector<AffinePiece> pieces_;
};

/// Convex quadratic x -> x' M x + b . x + c with M symmetric positive
/// semidefinite. M is symmetrized on construction; PSD is enforced up to a
/// -1e-8 eigenvalue slack.
class ConvexQuadratic {
 public:
  ConvexQuadratic(Eigen::MatrixXd m, Eigen::VectorXd b, double c);

  int dim() const { return static_cast<int>(b_.size()); }
  const Eigen::MatrixXd& m() const { return m_; }
  const Eigen::VectorXd& b() const { return b_; }
  double c() const { return c_; }

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;  // 2 M x + b

 private:
  Eigen::MatrixXd m_;
  Eigen::VectorXd b_;
  double c_ = 0.0;
};

/// One candidate objective: piecewise-linear or quadratic, exposing value and
/// a canonical subgradient.
class CandidateFunction {
 public:
  CandidateFunction(PiecewiseLinearConvex f) : impl_(std::move(f)) {}
  CandidateFunction(ConvexQuadratic f) : impl_(std::move(f)) {}

  int dim() const;
  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd subgradient(const Eigen::VectorXd& x) const;

  bool is_piecewise_linear() const {
    return std::holds_alternative<PiecewiseLinearConvex>(impl_);
  }
  const PiecewiseLinearConvex& as_piecewise_linear() const;
  const ConvexQuadratic& as_quadratic() const;

 private:
  std::variant<PiecewiseLinearConvex, ConvexQuadratic> impl_;
};

/// The robust objective f(x) = min over candidates of f_k(x).
class RobustObjective {
 public:
  explicit RobustObjective(std::vector<CandidateFunction> candidates);

  int dim() const { return candidates_.front().dim(); }
  int num_candidates() const { return static_cast<int>(candidates_.size()); }
  const CandidateFunction& candidate(int k) const { return candidates_[k]; }
  const std::vector<CandidateFunction>& candidates() const { return candidates_; }

  /// Minimum over candidates and the smallest attaining index.
  std::pair<double, int> value_and_argmin(const Eigen::VectorXd& x) const;
  double value(const Eigen::VectorXd& x) const { return value_and_argmin(x).first; }

 private:
  std::vector<CandidateFunction> candidates_;
};

/// Region of X where piece i of f dominates every other piece:
/// X intersected with (a_j - a_i) . x <= b_i - b_j for all j != i.
/// May be empty. The regions over all i cover X.
Polytope dominance_region(const PiecewiseLinearConvex& f, int piece, const Polytope& domain);

}  // namespace maxmin

#endif  // MAXMIN_FUNCTIONS_HPP
