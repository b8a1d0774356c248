#include "maxmin/g2b2.hpp"

#include <chrono>
#include <deque>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "maxmin/errors.hpp"
#include "maxmin/lp.hpp"

namespace maxmin {

SeparationResult node_separation(const Polytope& polytope, const CandidateFunction& candidate,
                                 const AffinePiece& plane, OracleKind oracle,
                                 std::uint64_t seed, int multistart_count) {
  SeparationTask task{polytope, candidate, plane};
  return run_oracle(oracle, task, seed, multistart_count);
}

std::optional<G2NodeLp> g2_node_lp(const Polytope& polytope,
                                   const std::vector<AffinePiece>& planes,
                                   const std::vector<double>& sep_values,
                                   const std::vector<bool>& accurate, double epsilon) {
  if (planes.size() != sep_values.size() || planes.size() != accurate.size())
    throw std::invalid_argument("node LP input sizes disagree");
  const int n = polytope.dim();
  const int num_candidates = static_cast<int>(planes.size());

  LinearProgram lp(n + 1);
  lp.objective = Eigen::VectorXd::Zero(n + 1);
  lp.objective[n] = 1.0;
  for (int j = 0; j < n; ++j)
    lp.set_bounds(j, polytope.box().bounds[j].first, polytope.box().bounds[j].second);
  for (const Halfspace& h : polytope.halfspaces()) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n + 1);
    row.head(n) = h.normal;
    lp.add_row(row, h.offset);
  }
  for (int k = 0; k < num_candidates; ++k) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n + 1);
    row.head(n) = -planes[k].a;
    row[n] = 1.0;
    const double cap = accurate[k] ? planes[k].b + epsilon
                                   : planes[k].b + sep_values[k] + epsilon;
    lp.add_row(row, cap);
  }

  const LpOutcome out = solve_lp(lp);
  if (out.status == LpStatus::kInfeasible) return std::nullopt;
  if (out.status != LpStatus::kOptimal)
    throw NumericalError("node relaxation LP unbounded");
  return G2NodeLp{out.point.head(n), out.value};
}

std::optional<int> pick_refinement_target(const std::vector<double>& sep_values,
                                          const std::vector<bool>& accurate) {
  std::optional<int> best;
  for (std::size_t k = 0; k < sep_values.size(); ++k) {
    if (accurate[k]) continue;
    if (!best || sep_values[k] > sep_values[*best]) best = static_cast<int>(k);
  }
  return best;
}

namespace {

AffinePiece tangent_cut(const CandidateFunction& candidate, const Eigen::VectorXd& anchor) {
  const Eigen::VectorXd s = candidate.subgradient(anchor);
  return {s, candidate.value(anchor) - s.dot(anchor)};
}

bool cut_matches_plane(const AffinePiece& cut, const AffinePiece& plane) {
  return (cut.a - plane.a).lpNorm<Eigen::Infinity>() <= 1e-9 &&
         std::abs(cut.b - plane.b) <= 1e-9;
}

}  // namespace

G2Branch branch_g2(const Polytope& polytope, const AffinePiece& current_plane,
                   const CandidateFunction& candidate, const Eigen::VectorXd& anchor) {
  G2Branch branch;
  branch.cut = tangent_cut(candidate, anchor);
  if (cut_matches_plane(branch.cut, current_plane)) {
    branch.degenerate = true;
    return branch;
  }
  // Keep side: current plane >= cut. Cut side: cut >= current plane.
  Polytope keep = intersect(
      polytope, {branch.cut.a - current_plane.a, current_plane.b - branch.cut.b});
  if (!keep.known_empty() && !is_empty(keep)) branch.keep_side = std::move(keep);
  Polytope cut_side = intersect(
      polytope, {current_plane.a - branch.cut.a, branch.cut.b - current_plane.b});
  if (!cut_side.known_empty() && !is_empty(cut_side)) branch.cut_side = std::move(cut_side);
  return branch;
}

namespace {

struct G2StoredNode {
  G2StoredNode(Polytope p, std::vector<AffinePiece> pl)
      : polytope(std::move(p)), planes(std::move(pl)) {}

  Polytope polytope;
  std::vector<AffinePiece> planes;
  std::vector<SeparationResult> separation;  // one per candidate
  std::vector<bool> accurate;                // separation value <= epsilon
  std::vector<bool> converged;               // refinement cannot move this plane
  double upper = kInfinity;
  double lower = -kInfinity;
  Eigen::VectorXd incumbent;
  bool alive = true;
};

struct HeapEntry {
  double upper;
  std::uint64_t seq;
  std::size_t index;
};
struct HeapCompare {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.upper != b.upper) return a.upper < b.upper;
    return a.seq > b.seq;
  }
};

bool power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Per-node separation with the geometry (box corners / vertex list /
// ascent starts) computed once and shared by all candidates. Results match
// the single-task oracles called with the same seed.
class NodeSeparator {
 public:
  NodeSeparator(OracleKind kind, int multistart_count)
      : kind_(kind), multistart_count_(multistart_count) {}

  std::vector<SeparationResult> separate_all(const Polytope& polytope,
                                             const std::vector<AffinePiece>& planes,
                                             const RobustObjective& objective,
                                             std::uint64_t seed) const {
    std::vector<SeparationResult> results;
    results.reserve(planes.size());
    switch (kind_) {
      case OracleKind::kBox: {
        const Box box = bounding_box(polytope);
        if (box.dim() > kBoxVertexDimCap)
          throw CapabilityError("box oracle over vertex-enumeration dimension cap");
        const std::vector<Eigen::VectorXd> corners = enumerate_box_vertices(box);
        for (std::size_t k = 0; k < planes.size(); ++k) {
          SeparationTask task{polytope, objective.candidate(static_cast<int>(k)), planes[k]};
          results.push_back(detail::maximize_over_points(task, corners, true));
        }
        break;
      }
      case OracleKind::kExact: {
        const std::vector<Eigen::VectorXd> vertices = enumerate_vertices(polytope);
        if (vertices.empty())
          throw std::invalid_argument("exact separation on empty polytope");
        for (std::size_t k = 0; k < planes.size(); ++k) {
          SeparationTask task{polytope, objective.candidate(static_cast<int>(k)), planes[k]};
          results.push_back(detail::maximize_over_points(task, vertices, true));
        }
        break;
      }
      case OracleKind::kLc1:
      case OracleKind::kLc2: {
        const int starts = kind_ == OracleKind::kLc1 ? 1 : multistart_count_;
        const std::vector<Eigen::VectorXd> samples =
            sample_hit_and_run(polytope, starts, seed);
        for (std::size_t k = 0; k < planes.size(); ++k) {
          SeparationTask task{polytope, objective.candidate(static_cast<int>(k)), planes[k]};
          SeparationResult best;
          bool first = true;
          for (const Eigen::VectorXd& s : samples) {
            SeparationResult r = oracle_linearization_ascent(task, s);
            if (first || r.value > best.value) {
              best = std::move(r);
              first = false;
            }
          }
          results.push_back(std::move(best));
        }
        break;
      }
    }
    return results;
  }

 private:
  OracleKind kind_;
  int multistart_count_;
};

// Largest violation of the cut over the current plane across the polytope;
// nonpositive means the cut would not split the region.
double cut_advantage(const Polytope& polytope, const AffinePiece& plane,
                     const AffinePiece& cut) {
  const int n = polytope.dim();
  LinearProgram lp(n);
  lp.objective = cut.a - plane.a;
  for (int j = 0; j < n; ++j)
    lp.set_bounds(j, polytope.box().bounds[j].first, polytope.box().bounds[j].second);
  for (const Halfspace& h : polytope.halfspaces()) lp.add_row(h.normal, h.offset);
  const LpOutcome out = solve_lp(lp);
  if (out.status != LpStatus::kOptimal) return -kInfinity;
  return out.value + (cut.b - plane.b);
}

// Last point of the segment interior -> anchor that still lies in the
// polytope (closed form over the halfspace residuals). Falls back to the
// interior point when the segment leaves immediately.
Eigen::VectorXd clip_to_polytope(const Polytope& polytope, const Eigen::VectorXd& interior,
                                 const Eigen::VectorXd& anchor) {
  const Eigen::VectorXd d = anchor - interior;
  double t = 1.0;
  for (int i = 0; i < polytope.dim(); ++i) {
    const double lo = polytope.box().bounds[i].first;
    const double hi = polytope.box().bounds[i].second;
    if (d[i] > 1e-14) t = std::min(t, (hi - interior[i]) / d[i]);
    if (d[i] < -1e-14) t = std::min(t, (lo - interior[i]) / d[i]);
  }
  for (const Halfspace& h : polytope.halfspaces()) {
    const double dir = h.normal.dot(d);
    if (dir > 1e-14) t = std::min(t, (h.offset - h.normal.dot(interior)) / dir);
  }
  t = std::clamp(t, 0.0, 1.0);
  return interior + t * d;
}

}  // namespace

G2Result solve_g2b2(const RobustObjective& objective, const Polytope& domain,
                    const G2Options& options) {
  if (options.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (objective.dim() != domain.dim())
    throw std::invalid_argument("objective/domain dimension mismatch");
  if (is_empty(domain)) throw std::invalid_argument("empty domain");

  const auto start_time = std::chrono::steady_clock::now();
  auto elapsed = [&start_time] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
        .count();
  };

  const int num_candidates = objective.num_candidates();
  const double epsilon = options.epsilon;
  const bool certified = oracle_certifies(options.oracle);
  const NodeSeparator separator(options.oracle, options.multistart_count);

  std::vector<AffinePiece> root_planes;
  if (options.initial_planes) {
    if (static_cast<int>(options.initial_planes->size()) != num_candidates)
      throw std::invalid_argument("one initial plane per candidate required");
    root_planes = *options.initial_planes;
    for (const AffinePiece& p : root_planes)
      if (p.dim() != domain.dim())
        throw std::invalid_argument("initial plane dimension mismatch");
  } else {
    const Eigen::VectorXd anchor = domain.box().center();
    for (int k = 0; k < num_candidates; ++k)
      root_planes.push_back(tangent_cut(objective.candidate(k), anchor));
  }

  G2Result result;
  G2Stats& stats = result.stats;
  stats.certified = certified;

  double global_lower = options.initial_lower;
  Eigen::VectorXd best_point;
  if (options.initial_point) best_point = *options.initial_point;
  double stalled_upper = -kInfinity;
  double separation_seconds = 0.0;

  std::deque<G2StoredNode> arena;
  std::unordered_set<std::size_t> live;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> heap;
  std::uint64_t seq = 0;
  std::vector<Polytope> retired;  // only filled when tracing

  SolveTrace* trace = options.trace;
  auto record_node = [&](const G2StoredNode& n) {
    if (trace != nullptr) trace->nodes.push_back({{}, n.polytope, n.lower, n.upper});
  };
  auto record_retired = [&](const Polytope& p) {
    if (trace != nullptr) retired.push_back(p);
  };
  auto record_snapshot = [&](bool force) {
    if (trace == nullptr) return;
    if (!force && !power_of_two(stats.iterations)) return;
    TraceLeafSnapshot snap;
    snap.iteration = stats.iterations;
    for (std::size_t idx : live) snap.live.push_back(arena[idx].polytope);
    snap.retired = retired;
    trace->snapshots.push_back(std::move(snap));
  };

  // Bounds one node: separation for every candidate against its current
  // plane, accuracy split, then the relaxation LP. Returns false when the
  // LP proves the polytope empty.
  auto bound_node = [&](G2StoredNode& node, double parent_upper) -> bool {
    const auto sep_start = std::chrono::steady_clock::now();
    const std::uint64_t node_seed =
        SplitMix64::derive_stream(options.seed, "g2b2-separation") + seq;
    node.separation =
        separator.separate_all(node.polytope, node.planes, objective, node_seed);
    separation_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - sep_start).count();
    stats.separation_calls += node.separation.size();

    node.accurate.assign(node.separation.size(), false);
    node.converged.assign(node.separation.size(), false);
    std::vector<double> values(node.separation.size());
    for (std::size_t k = 0; k < node.separation.size(); ++k) {
      values[k] = node.separation[k].value;
      node.accurate[k] = values[k] <= epsilon;
    }

    std::optional<G2NodeLp> lp =
        g2_node_lp(node.polytope, node.planes, values, node.accurate, epsilon);
    if (!lp) return false;
    node.upper = std::min(lp->theta, parent_upper);
    node.incumbent = lp->point;
    node.lower = objective.value(node.incumbent);
    if (node.lower > global_lower) {
      global_lower = node.lower;
      best_point = node.incumbent;
    }
    return true;
  };

  {
    G2StoredNode root(domain, root_planes);
    if (!bound_node(root, kInfinity))
      throw NumericalError("root relaxation infeasible on a nonempty domain");
    record_node(root);
    arena.push_back(std::move(root));
    live.insert(0);
    heap.push({arena[0].upper, seq++, 0});
    stats.nodes_created = 1;
  }

  double global_upper = kInfinity;
  while (true) {
    while (!heap.empty()) {
      const HeapEntry top = heap.top();
      G2StoredNode& sn = arena[top.index];
      if (!sn.alive) {
        heap.pop();
        continue;
      }
      if (top.upper <= global_lower) {
        heap.pop();
        sn.alive = false;
        live.erase(top.index);
        record_retired(sn.polytope);
        ++stats.nodes_pruned;
        continue;
      }
      break;
    }

    const double leaf_upper = heap.empty() ? -kInfinity : heap.top().upper;
    global_upper = std::max({global_lower, leaf_upper, stalled_upper});
    if (trace != nullptr) trace->bounds.push_back({global_lower, global_upper});
    record_snapshot(false);

    if (heap.empty()) {
      stats.status = stalled_upper > global_lower + epsilon ? SolveStatus::kStalled
                                                            : SolveStatus::kNoLeaves;
      break;
    }
    if (certified && global_upper - global_lower <= epsilon) {
      stats.status = SolveStatus::kGapClosed;
      break;
    }
    if (stats.iterations >= options.max_iterations || elapsed() >= options.time_limit_s) {
      stats.status = SolveStatus::kBudgetExhausted;
      break;
    }

    const std::size_t current = heap.top().index;
    heap.pop();
    G2StoredNode& node = arena[current];

    std::vector<double> values(node.separation.size());
    std::vector<bool> selectable(node.separation.size());
    for (std::size_t k = 0; k < node.separation.size(); ++k) {
      values[k] = node.separation[k].value;
      selectable[k] = node.accurate[k] || node.converged[k];
    }
    const std::optional<int> target = pick_refinement_target(values, selectable);

    if (!target) {
      // Every candidate is either epsilon-accurate (bounds already tight and
      // folded into the global state) or cannot be refined further here.
      node.alive = false;
      live.erase(current);
      record_retired(node.polytope);
      ++stats.nodes_pruned;
      bool all_accurate = true;
      for (std::size_t k = 0; k < node.accurate.size(); ++k)
        if (!node.accurate[k] && node.converged[k]) all_accurate = false;
      if (!all_accurate) {
        stalled_upper = std::max(stalled_upper, node.upper);
        ++stats.stalled_nodes;
      }
      continue;
    }

    const int k_star = *target;
    const CandidateFunction& candidate = objective.candidate(k_star);
    const AffinePiece& plane = node.planes[k_star];
    Eigen::VectorXd anchor = node.separation[k_star].point;

    AffinePiece cut = tangent_cut(candidate, anchor);
    if (cut_matches_plane(cut, plane)) {
      node.converged[k_star] = true;
      heap.push({node.upper, seq++, current});
      continue;
    }
    // A cut anchored outside the polytope (box oracle) may sit below the
    // current plane on the whole region; re-anchor it on the boundary along
    // the LP incumbent before giving up on this candidate here.
    if (cut_advantage(node.polytope, plane, cut) <= 1e-9) {
      anchor = clip_to_polytope(node.polytope, node.incumbent, anchor);
      cut = tangent_cut(candidate, anchor);
      if (cut_matches_plane(cut, plane) ||
          cut_advantage(node.polytope, plane, cut) <= 1e-9) {
        node.converged[k_star] = true;
        heap.push({node.upper, seq++, current});
        continue;
      }
    }
    ++stats.cuts_added;

    node.alive = false;
    live.erase(current);

    // Children: one side keeps the plane, the other adopts the cut.
    for (int side = 0; side < 2; ++side) {
      const bool keep = side == 0;
      const Halfspace h = keep
          ? Halfspace{cut.a - plane.a, plane.b - cut.b}
          : Halfspace{plane.a - cut.a, cut.b - plane.b};
      Polytope child_poly = intersect(node.polytope, h);
      if (child_poly.known_empty() || is_empty(child_poly)) {
        ++stats.empty_children;
        if (trace != nullptr) trace->empty_children.push_back({});
        continue;
      }
      G2StoredNode child(std::move(child_poly), node.planes);
      if (!keep) child.planes[k_star] = cut;
      if (!bound_node(child, node.upper)) {
        ++stats.empty_children;
        if (trace != nullptr) trace->empty_children.push_back({});
        continue;
      }
      record_node(child);
      arena.push_back(std::move(child));
      const std::size_t idx = arena.size() - 1;
      live.insert(idx);
      heap.push({arena[idx].upper, seq++, idx});
      ++stats.nodes_created;
    }
    ++stats.iterations;
  }

  record_snapshot(true);
  result.value = global_lower;
  result.point = best_point;
  result.upper_bound = global_upper;
  stats.gap = std::max(0.0, global_upper - global_lower);
  stats.wall_s = elapsed();
  stats.separation_s = separation_seconds;
  return result;
}

}  // namespace maxmin
