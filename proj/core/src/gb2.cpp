#include "maxmin/gb2.hpp"

#include <chrono>
#include <deque>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "maxmin/errors.hpp"

namespace maxmin {

std::optional<GbNodeBounds> gb_node_bounds(const NodeLabel& label, const Polytope& polytope,
                                           const RobustObjective& objective) {
  if (label.entries.empty())
    throw std::invalid_argument("node LP needs at least one labelled piece");
  const int n = polytope.dim();

  // Variables (x, theta); theta is free and capped by every labelled piece.
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
  for (const auto& [k, i] : label.entries) {
    const AffinePiece& piece = objective.candidate(k).as_piecewise_linear().piece(i);
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n + 1);
    row.head(n) = -piece.a;
    row[n] = 1.0;
    lp.add_row(row, piece.b);
  }

  const LpOutcome out = solve_lp(lp);
  if (out.status == LpStatus::kInfeasible) return std::nullopt;
  if (out.status != LpStatus::kOptimal)
    throw NumericalError("node LP unbounded despite labelled pieces");

  GbNodeBounds bounds;
  bounds.upper = out.value;
  bounds.point = out.point.head(n);
  bounds.lower = objective.value(bounds.point);
  return bounds;
}

const GbNode* select_leaf(std::span<const GbNode> leaves) {
  if (leaves.empty()) throw std::invalid_argument("no leaves to select from");
  const GbNode* best = &leaves[0];
  for (const GbNode& leaf : leaves)
    if (leaf.upper > best->upper) best = &leaf;
  return best;
}

std::vector<double> candidate_domain_maxima(const RobustObjective& objective,
                                            const Polytope& domain) {
  const int n = domain.dim();
  LinearProgram lp(n);
  for (int j = 0; j < n; ++j)
    lp.set_bounds(j, domain.box().bounds[j].first, domain.box().bounds[j].second);
  for (const Halfspace& h : domain.halfspaces()) lp.add_row(h.normal, h.offset);

  std::vector<double> maxima;
  maxima.reserve(static_cast<std::size_t>(objective.num_candidates()));
  for (int k = 0; k < objective.num_candidates(); ++k) {
    const PiecewiseLinearConvex& f = objective.candidate(k).as_piecewise_linear();
    double best = -kInfinity;
    for (const AffinePiece& piece : f.pieces()) {
      lp.objective = piece.a;
      const LpOutcome out = solve_lp(lp);
      if (out.status != LpStatus::kOptimal)
        throw std::invalid_argument("domain maxima need a nonempty bounded domain");
      best = std::max(best, out.value + piece.b);
    }
    maxima.push_back(best);
  }
  return maxima;
}

int select_function(const NodeLabel& label, int num_candidates,
                    FunctionSelectionPolicy policy, SplitMix64& rng,
                    std::span<const double> domain_maxima) {
  std::vector<int> available;
  for (int k = 0; k < num_candidates; ++k)
    if (!label.contains_candidate(k)) available.push_back(k);
  if (available.empty())
    throw std::invalid_argument("every candidate is already branched on");

  if (policy == FunctionSelectionPolicy::kRandomSeeded)
    return available[rng.next_below(available.size())];

  if (domain_maxima.size() != static_cast<std::size_t>(num_candidates))
    throw std::invalid_argument("min-max selection needs precomputed domain maxima");
  int best = available.front();
  for (int k : available)
    if (domain_maxima[k] < domain_maxima[best]) best = k;
  return best;
}

std::vector<GbNode> branch_gb(const GbNode& node, int k, const RobustObjective& objective,
                              std::vector<NodeLabel>* discarded) {
  if (node.label.contains_candidate(k))
    throw std::invalid_argument("candidate already branched on along this path");
  const PiecewiseLinearConvex& f = objective.candidate(k).as_piecewise_linear();

  std::vector<GbNode> children;
  for (int i = 0; i < f.num_pieces(); ++i) {
    NodeLabel label = node.label;
    label.entries.emplace_back(k, i);

    Polytope region = node.polytope;
    const AffinePiece& winner = f.piece(i);
    for (int j = 0; j < f.num_pieces(); ++j) {
      if (j == i) continue;
      region = intersect(region, {f.piece(j).a - winner.a, winner.b - f.piece(j).b});
    }

    if (region.known_empty() || is_empty(region)) {
      if (discarded != nullptr) discarded->push_back(std::move(label));
      continue;
    }
    children.push_back(
        GbNode{std::move(label), std::move(region), node.upper, -kInfinity, std::nullopt});
  }
  return children;
}

namespace {

struct HeapEntry {
  double upper;
  std::uint64_t seq;
  std::size_t index;
};
struct HeapCompare {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.upper != b.upper) return a.upper < b.upper;
    return a.seq > b.seq;  // FIFO among equal upper bounds
  }
};

struct StoredNode {
  GbNode node;
  bool alive = true;
};

bool power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

class TraceRecorder {
 public:
  TraceRecorder(SolveTrace* trace, const std::deque<StoredNode>* arena,
                const std::unordered_set<std::size_t>* live)
      : trace_(trace), arena_(arena), live_(live) {}

  void node(const GbNode& n) {
    if (trace_ != nullptr)
      trace_->nodes.push_back({n.label.entries, n.polytope, n.lower, n.upper});
  }
  void retired(const Polytope& p) {
    if (trace_ != nullptr) retired_.push_back(p);
  }
  void empty_child(TraceLabel label) {
    if (trace_ != nullptr) trace_->empty_children.push_back(std::move(label));
  }
  void bounds(double lower, double upper) {
    if (trace_ != nullptr) trace_->bounds.push_back({lower, upper});
  }
  void snapshot(std::size_t iteration, bool force) {
    if (trace_ == nullptr) return;
    if (!force && !power_of_two(iteration)) return;
    TraceLeafSnapshot snap;
    snap.iteration = iteration;
    for (std::size_t idx : *live_) snap.live.push_back((*arena_)[idx].node.polytope);
    snap.retired = retired_;
    trace_->snapshots.push_back(std::move(snap));
  }

 private:
  SolveTrace* trace_;
  const std::deque<StoredNode>* arena_;
  const std::unordered_set<std::size_t>* live_;
  std::vector<Polytope> retired_;
};

}  // namespace

GbResult solve_gb2(const RobustObjective& objective, const Polytope& domain,
                   const GbOptions& options) {
  for (const CandidateFunction& c : objective.candidates())
    if (!c.is_piecewise_linear())
      throw std::invalid_argument("gb2 requires piecewise-linear candidates");
  if (objective.dim() != domain.dim())
    throw std::invalid_argument("objective/domain dimension mismatch");
  if (is_empty(domain)) throw std::invalid_argument("empty domain");

  const auto start_time = std::chrono::steady_clock::now();
  auto elapsed = [&start_time] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
        .count();
  };

  const int num_candidates = objective.num_candidates();
  SplitMix64 rng(SplitMix64::derive_stream(options.seed, "gb2-function-selection"));
  std::vector<double> maxima;
  if (options.policy == FunctionSelectionPolicy::kMinMax)
    maxima = candidate_domain_maxima(objective, domain);

  std::deque<StoredNode> arena;
  std::unordered_set<std::size_t> live;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> heap;
  std::uint64_t seq = 0;

  GbResult result;
  GbStats& stats = result.stats;
  double global_lower = options.initial_lower;
  Eigen::VectorXd best_point;
  if (options.initial_point) best_point = *options.initial_point;

  TraceRecorder trace(options.trace, &arena, &live);

  arena.push_back({GbNode{NodeLabel{}, domain, kInfinity, -kInfinity, std::nullopt}, true});
  live.insert(0);
  heap.push({kInfinity, seq++, 0});
  stats.nodes_created = 1;
  trace.node(arena.front().node);

  double global_upper = kInfinity;
  while (true) {
    // Drop stale entries and prune leaves dominated by the incumbent.
    while (!heap.empty()) {
      const HeapEntry top = heap.top();
      StoredNode& sn = arena[top.index];
      if (!sn.alive) {
        heap.pop();
        continue;
      }
      if (top.upper <= global_lower) {
        heap.pop();
        sn.alive = false;
        live.erase(top.index);
        trace.retired(sn.node.polytope);
        ++stats.nodes_pruned;
        continue;
      }
      break;
    }

    global_upper = heap.empty() ? global_lower : heap.top().upper;
    trace.bounds(global_lower, global_upper);
    trace.snapshot(stats.iterations, /*force=*/false);

    if (heap.empty()) {
      stats.status = SolveStatus::kNoLeaves;
      break;
    }
    if (global_upper - global_lower <= options.tolerance) {
      stats.status = SolveStatus::kGapClosed;
      break;
    }
    if (stats.iterations >= options.max_iterations || elapsed() >= options.time_limit_s) {
      stats.status = SolveStatus::kBudgetExhausted;
      break;
    }

    const std::size_t current = heap.top().index;
    heap.pop();
    StoredNode& sn = arena[current];
    sn.alive = false;
    live.erase(current);

    if (sn.node.label.full(num_candidates)) {
      // Exact leaf: its bounds are already folded into the global state.
      trace.retired(sn.node.polytope);
      ++stats.nodes_pruned;
      continue;
    }

    const int k = select_function(sn.node.label, num_candidates, options.policy, rng, maxima);
    std::vector<NodeLabel> discarded;
    std::vector<GbNode> children = branch_gb(sn.node, k, objective, &discarded);
    for (NodeLabel& label : discarded) {
      ++stats.empty_children;
      trace.empty_child(std::move(label.entries));
    }

    for (GbNode& child : children) {
      std::optional<GbNodeBounds> bounds = gb_node_bounds(child.label, child.polytope, objective);
      ++stats.lp_solves;
      if (!bounds) {
        ++stats.empty_children;
        trace.empty_child(child.label.entries);
        continue;
      }
      // Children never exceed the parent bound; the cap also guards round-off.
      child.upper = std::min(bounds->upper, sn.node.upper);
      child.lower = bounds->lower;
      child.incumbent = bounds->point;
      if (child.lower > global_lower) {
        global_lower = child.lower;
        best_point = *child.incumbent;
      }
      trace.node(child);
      arena.push_back({std::move(child), true});
      const std::size_t idx = arena.size() - 1;
      live.insert(idx);
      heap.push({arena[idx].node.upper, seq++, idx});
      ++stats.nodes_created;
    }
    ++stats.iterations;
  }

  trace.snapshot(stats.iterations, /*force=*/true);
  result.value = global_lower;
  result.point = best_point;
  result.upper_bound = global_upper;
  stats.gap = std::max(0.0, global_upper - global_lower);
  stats.wall_s = elapsed();
  return result;
}

}  // namespace maxmin
