#ifndef MAXMIN_LP_HPP
#define MAXMIN_LP_HPP

#include <limits>
#include <vector>

#include <Eigen/Core>

namespace maxmin {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// LP feasibility tolerance (constraint residuals).
inline constexpr double kLpFeasTol = 1e-7;
/// Reduced-cost tolerance; kept below the feasibility tolerance so a false
/// Optimal cannot slip through on the optimality side.
inline constexpr double kLpOptTol = 1e-9;

/// Dense linear program: maximize objective . y subject to row . y <= rhs for
/// every row, with optional per-variable bounds (+-inf when absent).
struct LinearProgram {
  explicit LinearProgram(int num_vars)
      : objective(Eigen::VectorXd::Zero(num_vars)),
        lower(Eigen::VectorXd::Constant(num_vars, -kInfinity)),
        upper(Eigen::VectorXd::Constant(num_vars, kInfinity)) {}

  void add_row(Eigen::VectorXd coeffs, double rhs) {
    row_coeffs.push_back(std::move(coeffs));
    row_rhs.push_back(rhs);
  }
  void set_bounds(int var, double lo, double hi) {
    lower[var] = lo;
    upper[var] = hi;
  }
  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(row_rhs.size()); }

  Eigen::VectorXd objective;
  std::vector<Eigen::VectorXd> row_coeffs;
  std::vector<double> row_rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd point;  // valid when Optimal
  double value = 0.0;     // valid when Optimal
};

/// Optional basis-reuse hook. When passed to solve_lp the final basis is
/// recorded, and a recorded basis is tried as the starting point of the next
/// solve. Reuse only applies when the standard-form shape matches and the
/// basis is still primal feasible; otherwise the solve silently starts cold.
/// Off by default everywhere: no solver path in this library passes one
/// unless explicitly configured.
struct LpBasisHint {
  std::vector<int> basic;  // standard-form column index per row
  int num_structural = 0;
  int num_rows = 0;
  bool valid() const { return num_rows > 0 && static_cast<int>(basic.size()) == num_rows; }
};

/// Two-phase dense simplex with Bland's anti-cycling pivot rule. Deterministic:
/// the same program yields the same outcome bit-for-bit within one build.
/// Throws NumericalError if the pivot cap (1e6) is hit.
LpOutcome solve_lp(const LinearProgram& lp, LpBasisHint* hint = nullptr);

}  // namespace maxmin

#endif  // MAXMIN_LP_HPP
