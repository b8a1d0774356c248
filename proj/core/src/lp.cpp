#include "maxmin/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "maxmin/errors.hpp"

namespace maxmin {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr std::size_t kPivotCap = 1'000'000;

// Internal standard form: maximize cs . s subject to As . s (<=|=) bs, s >= 0.
// Built from the public program by shifting lower-bounded variables, negating
// upper-bounded-only variables and splitting free ones.
struct StandardForm {
  // Column c maps to original variable var[c] with coefficient sign[c].
  std::vector<int> var;
  std::vector<double> sign;
  Eigen::VectorXd shift;     // per original variable
  Eigen::MatrixXd a;         // structural + slack columns
  Eigen::VectorXd b;
  Eigen::VectorXd cost;      // over all columns (maximization)
  int num_structural = 0;
  int num_cols = 0;          // structural + slacks
  int num_rows = 0;
};

StandardForm build_standard_form(const LinearProgram& lp) {
  const int n = lp.num_vars();
  StandardForm sf;
  sf.shift = Eigen::VectorXd::Zero(n);

  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (std::isfinite(lo)) {
      sf.shift[j] = lo;
      sf.var.push_back(j);
      sf.sign.push_back(1.0);
    } else if (std::isfinite(hi)) {
      sf.shift[j] = hi;
      sf.var.push_back(j);
      sf.sign.push_back(-1.0);
    } else {
      sf.var.push_back(j);
      sf.sign.push_back(1.0);
      sf.var.push_back(j);
      sf.sign.push_back(-1.0);
    }
  }
  sf.num_structural = static_cast<int>(sf.var.size());

  // Rows: original constraints, then range rows for doubly-bounded variables.
  int extra_rows = 0;
  for (int j = 0; j < n; ++j)
    if (std::isfinite(lp.lower[j]) && std::isfinite(lp.upper[j])) ++extra_rows;
  const int m = lp.num_rows() + extra_rows;
  sf.num_rows = m;
  sf.num_cols = sf.num_structural + m;

  sf.a = Eigen::MatrixXd::Zero(m, sf.num_cols);
  sf.b = Eigen::VectorXd::Zero(m);
  sf.cost = Eigen::VectorXd::Zero(sf.num_cols);

  for (int c = 0; c < sf.num_structural; ++c)
    sf.cost[c] = lp.objective[sf.var[c]] * sf.sign[c];

  for (int r = 0; r < lp.num_rows(); ++r) {
    const Eigen::VectorXd& row = lp.row_coeffs[r];
    for (int c = 0; c < sf.num_structural; ++c)
      sf.a(r, c) = row[sf.var[c]] * sf.sign[c];
    sf.b[r] = lp.row_rhs[r] - row.dot(sf.shift);
  }
  int r = lp.num_rows();
  for (int j = 0; j < n; ++j) {
    if (!(std::isfinite(lp.lower[j]) && std::isfinite(lp.upper[j]))) continue;
    for (int c = 0; c < sf.num_structural; ++c)
      if (sf.var[c] == j) sf.a(r, c) = sf.sign[c];
    sf.b[r] = lp.upper[j] - lp.lower[j];
    ++r;
  }
  // Slack columns.
  for (int i = 0; i < m; ++i) sf.a(i, sf.num_structural + i) = 1.0;
  return sf;
}

struct Tableau {
  Eigen::MatrixXd a;          // m x total columns (B^-1 A form)
  Eigen::VectorXd rhs;        // >= 0 throughout
  Eigen::VectorXd cost_row;   // reduced costs of the current phase
  std::vector<int> basic;     // column basic in each row
  int num_legal = 0;          // columns eligible to enter (excludes artificials)
  std::size_t pivots = 0;
};

void pivot(Tableau& t, int row, int col) {
  const double piv = t.a(row, col);
  t.a.row(row) /= piv;
  t.rhs[row] /= piv;
  const int m = static_cast<int>(t.rhs.size());
  for (int i = 0; i < m; ++i) {
    if (i == row) continue;
    const double f = t.a(i, col);
    if (f == 0.0) continue;
    t.a.row(i) -= f * t.a.row(row);
    t.rhs[i] -= f * t.rhs[row];
    if (t.rhs[i] < 0.0 && t.rhs[i] > -1e-11) t.rhs[i] = 0.0;
  }
  const double f0 = t.cost_row[col];
  if (f0 != 0.0) t.cost_row -= f0 * t.a.row(row).transpose();
  t.basic[row] = col;
  ++t.pivots;
}

enum class IterateResult { kOptimal, kUnbounded };

// Minimizing simplex with Bland's rule: enter the smallest-index column with
// a negative reduced cost; leave on the min ratio, ties to the smallest basic
// variable index.
IterateResult iterate(Tableau& t) {
  const int m = static_cast<int>(t.rhs.size());
  while (true) {
    int enter = -1;
    for (int c = 0; c < t.num_legal; ++c) {
      if (t.cost_row[c] < -kLpOptTol) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return IterateResult::kOptimal;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      const double aic = t.a(i, enter);
      if (aic <= kPivotTol) continue;
      const double ratio = t.rhs[i] / aic;
      if (leave < 0 || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && t.basic[i] < t.basic[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return IterateResult::kUnbounded;
    pivot(t, leave, enter);
    if (t.pivots > kPivotCap)
      throw NumericalError("simplex pivot cap exceeded");
  }
}

double basic_cost(const Tableau& t, const Eigen::VectorXd& cost) {
  double z = 0.0;
  for (std::size_t i = 0; i < t.basic.size(); ++i) z += cost[t.basic[i]] * t.rhs[i];
  return z;
}

Eigen::VectorXd extract_point(const LinearProgram& lp, const StandardForm& sf,
                              const Tableau& t) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(sf.num_cols);
  for (std::size_t i = 0; i < t.basic.size(); ++i)
    if (t.basic[i] < sf.num_cols) s[t.basic[i]] = t.rhs[i];
  Eigen::VectorXd y = sf.shift;
  for (int c = 0; c < sf.num_structural; ++c) y[sf.var[c]] += sf.sign[c] * s[c];
  // Clamp round-off excursions back into the declared bounds.
  for (int j = 0; j < lp.num_vars(); ++j)
    y[j] = std::min(std::max(y[j], lp.lower[j]), lp.upper[j]);
  return y;
}

bool try_warm_start(const StandardForm& sf, const LpBasisHint& hint, Tableau& t) {
  if (!hint.valid() || hint.num_rows != sf.num_rows ||
      hint.num_structural != sf.num_structural)
    return false;
  for (int c : hint.basic)
    if (c < 0 || c >= sf.num_cols) return false;

  Eigen::MatrixXd basis(sf.num_rows, sf.num_rows);
  for (int i = 0; i < sf.num_rows; ++i) basis.col(i) = sf.a.col(hint.basic[i]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
  if (!lu.isInvertible()) return false;
  Eigen::VectorXd xb = lu.solve(sf.b);
  if ((xb.array() < -kLpFeasTol).any()) return false;  // hint no longer feasible

  t.a = lu.solve(sf.a);
  t.rhs = xb.cwiseMax(0.0);
  t.basic = hint.basic;
  t.num_legal = sf.num_cols;
  return true;
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp, LpBasisHint* hint) {
  for (const Eigen::VectorXd& row : lp.row_coeffs)
    if (row.size() != lp.objective.size())
      throw std::invalid_argument("lp row length does not match objective");

  const StandardForm sf = build_standard_form(lp);
  const int m = sf.num_rows;

  Tableau t;
  bool warm = hint != nullptr && try_warm_start(sf, *hint, t);

  if (!warm) {
    // Cold start: flip negative-rhs rows and give them artificial columns.
    std::vector<int> art_rows;
    for (int i = 0; i < m; ++i)
      if (sf.b[i] < 0.0) art_rows.push_back(i);

    const int total = sf.num_cols + static_cast<int>(art_rows.size());
    t.a = Eigen::MatrixXd::Zero(m, total);
    t.a.leftCols(sf.num_cols) = sf.a;
    t.rhs = sf.b;
    t.basic.assign(m, 0);
    t.num_legal = sf.num_cols;
    for (int i = 0; i < m; ++i) t.basic[i] = sf.num_structural + i;

    for (std::size_t k = 0; k < art_rows.size(); ++k) {
      const int i = art_rows[k];
      t.a.row(i) = -t.a.row(i);
      t.rhs[i] = -t.rhs[i];
      const int art_col = sf.num_cols + static_cast<int>(k);
      t.a(i, art_col) = 1.0;
      t.basic[i] = art_col;
    }

    if (!art_rows.empty()) {
      // Phase 1: minimize the sum of artificials.
      Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
      for (int c = sf.num_cols; c < total; ++c) phase1[c] = 1.0;
      t.cost_row = phase1;
      for (int i = 0; i < m; ++i)
        if (t.basic[i] >= sf.num_cols) t.cost_row -= t.a.row(i).transpose();

      if (iterate(t) == IterateResult::kUnbounded)
        throw NumericalError("phase-1 simplex reported unbounded");
      if (basic_cost(t, phase1) > kLpFeasTol) return {LpStatus::kInfeasible, {}, 0.0};

      // Drive zero-level artificials out of the basis where possible; rows
      // that cannot pivot are redundant and stay inert.
      for (int i = 0; i < m; ++i) {
        if (t.basic[i] < sf.num_cols) continue;
        for (int c = 0; c < sf.num_cols; ++c) {
          if (std::abs(t.a(i, c)) > kPivotTol) {
            pivot(t, i, c);
            break;
          }
        }
      }
    }
  }

  // Phase 2: minimize -cost over the legal columns.
  const int total = static_cast<int>(t.a.cols());
  t.cost_row = Eigen::VectorXd::Zero(total);
  t.cost_row.head(sf.num_cols) = -sf.cost;
  for (int i = 0; i < m; ++i) {
    const double cb = t.basic[i] < sf.num_cols ? -sf.cost[t.basic[i]] : 0.0;
    if (cb != 0.0) t.cost_row -= cb * t.a.row(i).transpose();
  }

  if (iterate(t) == IterateResult::kUnbounded) return {LpStatus::kUnbounded, {}, 0.0};

  LpOutcome out;
  out.status = LpStatus::kOptimal;
  out.point = extract_point(lp, sf, t);
  out.value = lp.objective.dot(out.point);

  if (hint != nullptr) {
    hint->basic = t.basic;
    hint->num_structural = sf.num_structural;
    hint->num_rows = sf.num_rows;
    // A basis containing an artificial column cannot seed a later solve.
    for (int c : hint->basic)
      if (c >= sf.num_cols) {
        hint->basic.clear();
        hint->num_rows = 0;
        break;
      }
  }
  return out;
}

}  // namespace maxmin
