#ifndef MAXMIN_TRACE_HPP
#define MAXMIN_TRACE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "maxmin/geometry.hpp"

namespace maxmin {

/// (candidate index, piece index) pairs identifying a branch-and-bound node
/// in the piecewise-linear solver. Empty for the refinement solver.
using TraceLabel = std::vector<std::pair<int, int>>;

struct TraceNode {
  TraceLabel label;
  Polytope polytope;
  double lower = 0.0;
  double upper = 0.0;
};

struct TraceBounds {
  double global_lower = 0.0;
  double global_upper = 0.0;
};

/// Snapshot of all live leaves plus every region retired so far (pruned
/// subtrees). Live and retired regions together cover the feasible set;
/// children of discarded empty polytopes cover nothing.
struct TraceLeafSnapshot {
  std::size_t iteration = 0;
  std::vector<Polytope> live;
  std::vector<Polytope> retired;
};

/// Optional per-run recording used by property tests and regression checks.
/// Nodes are recorded at creation; bounds once per iteration; leaf snapshots
/// at power-of-two iterations and at termination (bounded memory).
struct SolveTrace {
  std::vector<TraceNode> nodes;
  std::vector<TraceBounds> bounds;
  std::vector<TraceLeafSnapshot> snapshots;
  std::vector<TraceLabel> empty_children;

  const TraceNode* find(const TraceLabel& label) const {
    for (const TraceNode& n : nodes)
      if (n.label == label) return &n;
    return nullptr;
  }
  bool discarded_empty(const TraceLabel& label) const {
    for (const TraceLabel& l : empty_children)
      if (l == label) return true;
    return false;
  }
};

}  // namespace maxmin

#endif  // MAXMIN_TRACE_HPP
