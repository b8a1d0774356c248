#include "maxmin/functions.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace maxmin {

PiecewiseLinearConvex::PiecewiseLinearConvex(std::vector<AffinePiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty())
    throw std::invalid_argument("piecewise-linear function needs at least one piece");
  const int n = pieces_.front().dim();
  for (const AffinePiece& p : pieces_) {
    if (p.dim() != n) throw std::invalid_argument("piece dimension mismatch");
    if (!p.a.allFinite() || !std::isfinite(p.b))
      throw std::invalid_argument("piece with non-finite coefficients");
  }
}

double PiecewiseLinearConvex::value(const Eigen::VectorXd& x) const {
  double best = pieces_.front().value(x);
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    best = std::max(best, pieces_[i].value(x));
  return best;
}

int PiecewiseLinearConvex::active_piece(const Eigen::VectorXd& x) const {
  int best = 0;
  double best_value = pieces_.front().value(x);
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const double v = pieces_[i].value(x);
    if (v > best_value) {
      best_value = v;
      best = static_cast<int>(i);
    }
  }
  return best;
}

Eigen::VectorXd PiecewiseLinearConvex::subgradient(const Eigen::VectorXd& x) const {
  return pieces_[active_piece(x)].a;
}

ConvexQuadratic::ConvexQuadratic(Eigen::MatrixXd m, Eigen::VectorXd b, double c)
    : m_(std::move(m)), b_(std::move(b)), c_(c) {
  if (m_.rows() != m_.cols() || m_.rows() != b_.size())
    throw std::invalid_argument("quadratic shape mismatch");
  m_ = 0.5 * (m_ + m_.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-8)
    throw std::invalid_argument("quadratic matrix is not positive semidefinite");
}

double ConvexQuadratic::value(const Eigen::VectorXd& x) const {
  return x.dot(m_ * x) + b_.dot(x) + c_;
}

Eigen::VectorXd ConvexQuadratic::gradient(const Eigen::VectorXd& x) const {
  return 2.0 * (m_ * x) + b_;
}

int CandidateFunction::dim() const {
  return std::visit([](const auto& f) { return f.dim(); }, impl_);
}

double CandidateFunction::value(const Eigen::VectorXd& x) const {
  return std::visit([&x](const auto& f) { return f.value(x); }, impl_);
}

Eigen::VectorXd CandidateFunction::subgradient(const Eigen::VectorXd& x) const {
  if (const auto* pl = std::get_if<PiecewiseLinearConvex>(&impl_)) return pl->subgradient(x);
  return std::get<ConvexQuadratic>(impl_).gradient(x);
}

const PiecewiseLinearConvex& CandidateFunction::as_piecewise_linear() const {
  if (!is_piecewise_linear())
    throw std::invalid_argument("candidate is not piecewise-linear");
  return std::get<PiecewiseLinearConvex>(impl_);
}

const ConvexQuadratic& CandidateFunction::as_quadratic() const {
  if (is_piecewise_linear()) throw std::invalid_argument("candidate is not quadratic");
  return std::get<ConvexQuadratic>(impl_);
}

RobustObjective::RobustObjective(std::vector<CandidateFunction> candidates)
    : candidates_(std::move(candidates)) {
  if (candidates_.empty())
    throw std::invalid_argument("robust objective needs at least one candidate");
  const int n = candidates_.front().dim();
  for (const CandidateFunction& c : candidates_)
    if (c.dim() != n) throw std::invalid_argument("candidate dimension mismatch");
}

std::pair<double, int> RobustObjective::value_and_argmin(const Eigen::VectorXd& x) const {
  double best = candidates_.front().value(x);
  int arg = 0;
  for (std::size_t k = 1; k < candidates_.size(); ++k) {
    const double v = candidates_[k].value(x);
    if (v < best) {
      best = v;
      arg = static_cast<int>(k);
    }
  }
  return {best, arg};
}

Polytope dominance_region(const PiecewiseLinearConvex& f, int piece, const Polytope& domain) {
  if (piece < 0 || piece >= f.num_pieces())
    throw std::invalid_argument("piece index out of range");
  Polytope region = domain;
  const AffinePiece& winner = f.piece(piece);
  for (int j = 0; j < f.num_pieces(); ++j) {
    if (j == piece) continue;
    const AffinePiece& other = f.piece(j);
    region = intersect(region, {other.a - winner.a, winner.b - other.b});
  }
  return region;
}

}  // namespace maxmin
