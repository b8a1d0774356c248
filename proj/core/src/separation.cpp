#include "maxmin/separation.hpp"

#include <stdexcept>

#include "maxmin/errors.hpp"
#include "maxmin/lp.hpp"

namespace maxmin {

std::optional<OracleKind> oracle_from_name(std::string_view name) {
  if (name == "box") return OracleKind::kBox;
  if (name == "lc1") return OracleKind::kLc1;
  if (name == "lc2") return OracleKind::kLc2;
  if (name == "exact") return OracleKind::kExact;
  return std::nullopt;
}

std::string_view oracle_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::kBox: return "box";
    case OracleKind::kLc1: return "lc1";
    case OracleKind::kLc2: return "lc2";
    case OracleKind::kExact: return "exact";
  }
  return "unknown";
}

bool oracle_certifies(OracleKind kind) {
  return kind == OracleKind::kBox || kind == OracleKind::kExact;
}

namespace detail {

SeparationResult maximize_over_points(const SeparationTask& task,
                                      std::span<const Eigen::VectorXd> points,
                                      bool certified) {
  if (points.empty()) throw std::invalid_argument("no points to maximize over");
  SeparationResult best{points[0], task.objective(points[0]), certified};
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double v = task.objective(points[i]);
    if (v > best.value) {
      best.value = v;
      best.point = points[i];
    }
  }
  return best;
}

}  // namespace detail

SeparationResult oracle_box(const SeparationTask& task, int dim_cap) {
  if (task.polytope.dim() > dim_cap)
    throw CapabilityError("box oracle over vertex-enumeration dimension cap");
  const Box box = bounding_box(task.polytope);
  bool first = true;
  SeparationResult best;
  best.certified_upper = true;
  for_each_box_vertex(box, [&](const Eigen::VectorXd& v) {
    const double val = task.objective(v);
    if (first || val > best.value) {
      best.value = val;
      best.point = v;
      first = false;
    }
  });
  return best;
}

SeparationResult oracle_exact(const SeparationTask& task, int dim_cap) {
  std::vector<Eigen::VectorXd> vertices = enumerate_vertices(task.polytope, dim_cap);
  if (vertices.empty()) throw std::invalid_argument("exact oracle on empty polytope");
  return detail::maximize_over_points(task, vertices, /*certified=*/true);
}

SeparationResult oracle_linearization_ascent(const SeparationTask& task,
                                             const Eigen::VectorXd& start) {
  if (task.polytope.max_residual(start) > 1e-6)
    throw std::invalid_argument("ascent start is not inside the polytope");

  LinearProgram lp(task.polytope.dim());
  for (int j = 0; j < task.polytope.dim(); ++j)
    lp.set_bounds(j, task.polytope.box().bounds[j].first,
                  task.polytope.box().bounds[j].second);
  for (const Halfspace& h : task.polytope.halfspaces()) lp.add_row(h.normal, h.offset);

  Eigen::VectorXd x = start;
  for (int step = 0; step < 100; ++step) {
    lp.objective = task.objective_subgradient(x);
    const LpOutcome out = solve_lp(lp);
    if (out.status != LpStatus::kOptimal)
      throw std::invalid_argument("ascent LP on empty polytope");
    // Convexity: moving to the subgradient LP maximizer never decreases the
    // objective; stop once the linear model stops improving.
    if (out.value - lp.objective.dot(x) <= 1e-9) break;
    x = out.point;
  }
  return {x, task.objective(x), /*certified_upper=*/false};
}

SeparationResult oracle_multistart(const SeparationTask& task, int n_starts,
                                   std::uint64_t seed) {
  if (n_starts < 1) throw std::invalid_argument("multistart needs at least one start");
  const std::vector<Eigen::VectorXd> starts =
      sample_hit_and_run(task.polytope, n_starts, seed);
  SeparationResult best;
  bool first = true;
  for (const Eigen::VectorXd& s : starts) {
    SeparationResult r = oracle_linearization_ascent(task, s);
    if (first || r.value > best.value) {
      best = std::move(r);
      first = false;
    }
  }
  return best;
}

SeparationResult run_oracle(OracleKind kind, const SeparationTask& task,
                            std::uint64_t seed, int multistart_count) {
  switch (kind) {
    case OracleKind::kBox: return oracle_box(task);
    case OracleKind::kExact: return oracle_exact(task);
    case OracleKind::kLc1: return oracle_multistart(task, 1, seed);
    case OracleKind::kLc2: return oracle_multistart(task, multistart_count, seed);
  }
  throw std::invalid_argument("unknown oracle kind");
}

}  // namespace maxmin
