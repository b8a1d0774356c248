#include "maxmin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "maxmin/errors.hpp"
#include "maxmin/lp.hpp"
#include "maxmin/rng.hpp"

namespace maxmin {

namespace {

bool is_zero_normal(const Eigen::VectorXd& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) return false;
  return true;
}

// Feasibility LP over the polytope's constraints with a zero objective.
LinearProgram feasibility_lp(const Polytope& p) {
  LinearProgram lp(p.dim());
  for (int j = 0; j < p.dim(); ++j)
    lp.set_bounds(j, p.box().bounds[j].first, p.box().bounds[j].second);
  for (const Halfspace& h : p.halfspaces()) lp.add_row(h.normal, h.offset);
  return lp;
}

}  // namespace

Box::Box(std::vector<std::pair<double, double>> b) : bounds(std::move(b)) {
  for (const auto& [lo, hi] : bounds)
    if (!(lo <= hi)) throw std::invalid_argument("box interval with lo > hi");
}

Box Box::cube(int dim, double lo, double hi) {
  return Box(std::vector<std::pair<double, double>>(static_cast<std::size_t>(dim), {lo, hi}));
}

Eigen::VectorXd Box::center() const {
  Eigen::VectorXd c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = 0.5 * (bounds[i].first + bounds[i].second);
  return c;
}

double Box::diagonal() const {
  double s = 0.0;
  for (const auto& [lo, hi] : bounds) s += (hi - lo) * (hi - lo);
  return std::sqrt(s);
}

bool Box::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (x[i] < bounds[i].first - tol || x[i] > bounds[i].second + tol) return false;
  return true;
}

Polytope::Polytope(Box box) : box_(std::move(box)) {
  if (box_.dim() == 0) throw std::invalid_argument("polytope needs positive dimension");
}

Polytope::Polytope(Box box, std::vector<Halfspace> halfspaces) : Polytope(std::move(box)) {
  for (Halfspace& h : halfspaces) {
    if (h.normal.size() != dim())
      throw std::invalid_argument("halfspace dimension mismatch");
    if (is_zero_normal(h.normal)) {
      if (h.offset < 0.0) forced_empty_ = true;
      continue;  // tautology otherwise
    }
    halfspaces_.push_back(std::move(h));
  }
}

Polytope Polytope::cube(int dim, double lo, double hi) {
  return Polytope(Box::cube(dim, lo, hi));
}

bool Polytope::contains(const Eigen::VectorXd& x, double tol) const {
  if (forced_empty_) return false;
  if (!box_.contains(x, tol)) return false;
  for (const Halfspace& h : halfspaces_)
    if (h.residual(x) > tol) return false;
  return true;
}

double Polytope::max_residual(const Eigen::VectorXd& x) const {
  double worst = -kInfinity;
  for (int i = 0; i < dim(); ++i) {
    worst = std::max(worst, box_.bounds[i].first - x[i]);
    worst = std::max(worst, x[i] - box_.bounds[i].second);
  }
  for (const Halfspace& h : halfspaces_) worst = std::max(worst, h.residual(x));
  return worst;
}

Polytope intersect(const Polytope& p, const Halfspace& h) {
  if (h.normal.size() != p.dim())
    throw std::invalid_argument("halfspace dimension mismatch");
  Polytope out = p;
  if (is_zero_normal(h.normal)) {
    if (h.offset < 0.0) out.forced_empty_ = true;
    return out;
  }
  out.halfspaces_.push_back(h);
  return out;
}

bool is_empty(const Polytope& p) {
  if (p.known_empty()) return true;
  if (p.halfspaces().empty()) return false;  // a box is nonempty by invariant
  return solve_lp(feasibility_lp(p)).status == LpStatus::kInfeasible;
}

Box bounding_box(const Polytope& p) {
  if (p.known_empty()) throw std::invalid_argument("bounding_box of empty polytope");
  const int n = p.dim();
  std::vector<std::pair<double, double>> bounds(static_cast<std::size_t>(n));
  LinearProgram lp = feasibility_lp(p);
  for (int k = 0; k < n; ++k) {
    lp.objective.setZero();
    lp.objective[k] = -1.0;  // minimize x_k
    LpOutcome lo = solve_lp(lp);
    if (lo.status != LpStatus::kOptimal)
      throw std::invalid_argument("bounding_box of empty polytope");
    lp.objective[k] = 1.0;
    LpOutcome hi = solve_lp(lp);
    bounds[k] = {-lo.value, hi.value};
    if (bounds[k].first > bounds[k].second)  // LP round-off on a flat polytope
      bounds[k].first = bounds[k].second = 0.5 * (bounds[k].first + bounds[k].second);
  }
  return Box(std::move(bounds));
}

std::vector<Eigen::VectorXd> enumerate_box_vertices(const Box& b, int dim_cap) {
  if (b.dim() > dim_cap)
    throw CapabilityError("box vertex enumeration over dimension cap " +
                          std::to_string(dim_cap));
  std::vector<Eigen::VectorXd> out;
  out.reserve(std::size_t{1} << b.dim());
  for_each_box_vertex(b, [&out](const Eigen::VectorXd& v) { out.push_back(v); });
  return out;
}

std::vector<Eigen::VectorXd> enumerate_vertices(const Polytope& p, int dim_cap) {
  const int n = p.dim();
  if (n > dim_cap)
    throw CapabilityError("polytope vertex enumeration over dimension cap " +
                          std::to_string(dim_cap));
  if (p.known_empty()) return {};

  // All constraints as rows a . x <= c, box facets first.
  std::vector<Halfspace> rows;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = 1.0;
    rows.push_back({e, p.box().bounds[i].second});
    rows.push_back({-e, -p.box().bounds[i].first});
  }
  for (const Halfspace& h : p.halfspaces()) rows.push_back(h);

  const int m = static_cast<int>(rows.size());
  std::vector<Eigen::VectorXd> vertices;
  std::vector<int> pick(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pick[i] = i;

  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd c(n);
  while (true) {
    for (int i = 0; i < n; ++i) {
      a.row(i) = rows[pick[i]].normal.transpose();
      c[i] = rows[pick[i]].offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.isInvertible()) {
      Eigen::VectorXd x = lu.solve(c);
      if (p.max_residual(x) <= kFeasibilityTol) {
        bool duplicate = false;
        for (const Eigen::VectorXd& v : vertices)
          if ((v - x).norm() <= kVertexDedupTol) {
            duplicate = true;
            break;
          }
        if (!duplicate) vertices.push_back(std::move(x));
      }
    }
    // Next n-combination of row indices.
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return vertices;
}

Eigen::VectorXd chebyshev_center(const Polytope& p) {
  if (p.known_empty()) throw std::invalid_argument("chebyshev_center of empty polytope");
  const int n = p.dim();
  // Variables (x, r): maximize r with every constraint pushed in by r times
  // its normal's length.
  LinearProgram lp(n + 1);
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(n + 1);
  obj[n] = 1.0;
  lp.objective = obj;
  lp.set_bounds(n, 0.0, p.box().diagonal());
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n + 1);
    row[i] = 1.0;
    row[n] = 1.0;
    lp.add_row(row, p.box().bounds[i].second);
    row[i] = -1.0;
    lp.add_row(row, -p.box().bounds[i].first);
  }
  for (const Halfspace& h : p.halfspaces()) {
    Eigen::VectorXd row(n + 1);
    row.head(n) = h.normal;
    row[n] = h.normal.norm();
    lp.add_row(row, h.offset);
  }
  LpOutcome out = solve_lp(lp);
  if (out.status != LpStatus::kOptimal)
    throw std::invalid_argument("chebyshev_center of empty polytope");
  return out.point.head(n);
}

std::vector<Eigen::VectorXd> sample_hit_and_run(const Polytope& p, int count,
                                                std::uint64_t seed, int burn_in) {
  const int n = p.dim();
  Eigen::VectorXd x = chebyshev_center(p);
  SplitMix64 rng(SplitMix64::derive_stream(seed, "hit-and-run"));
  std::vector<Eigen::VectorXd> samples;
  samples.reserve(static_cast<std::size_t>(std::max(count, 0)));

  const int total = burn_in + std::max(count, 0);
  for (int step = 0; step < total; ++step) {
    const Eigen::VectorXd u = rng.next_unit_vector(n);
    double t_lo = -kInfinity;
    double t_hi = kInfinity;
    auto tighten = [&](double dir, double slack) {
      // Move along u stays feasible while dir * t <= slack.
      if (dir > 1e-14)
        t_hi = std::min(t_hi, slack / dir);
      else if (dir < -1e-14)
        t_lo = std::max(t_lo, slack / dir);
    };
    for (int i = 0; i < n; ++i) {
      tighten(u[i], p.box().bounds[i].second - x[i]);
      tighten(-u[i], x[i] - p.box().bounds[i].first);
    }
    for (const Halfspace& h : p.halfspaces())
      tighten(h.normal.dot(u), h.offset - h.normal.dot(x));
    if (t_hi > t_lo) {
      t_lo = std::max(t_lo, -p.box().diagonal());
      t_hi = std::min(t_hi, p.box().diagonal());
      x += rng.next_in(t_lo, t_hi) * u;
      for (int i = 0; i < n; ++i)  // shave round-off against the box
        x[i] = std::clamp(x[i], p.box().bounds[i].first, p.box().bounds[i].second);
    }
    if (step >= burn_in) samples.push_back(x);
  }
  return samples;
}

}  // namespace maxmin
