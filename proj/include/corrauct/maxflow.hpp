#pragma once

#include <vector>

#include "corrauct/rational.hpp"

namespace corrauct {

/// Dinic max-flow with arbitrary-precision integer capacities. Arcs are stored
/// in pairs: add_arc returns index a, the residual reverse arc is a^1. The
/// networks built here are layered (source -> U -> W -> sink, optionally
/// through a router mesh), so the number of blocking-flow phases stays small.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes = 0) : head_(nodes, -1) {}

  int add_node();
  int node_count() const { return static_cast<int>(head_.size()); }

  /// Adds from->to with the given capacity and the zero-capacity reverse arc.
  int add_arc(int from, int to, Int capacity);

  /// Runs to completion and returns the max-flow value. May be called once.
  Int run(int source, int sink);

  /// Nodes reachable from `source` in the final residual network; defines the
  /// canonical min cut (and the deterministic tie-breaking downstream).
  std::vector<char> source_side(int source) const;

  Int flow_on(int arc) const { return arcs_[arc ^ 1].cap; }
  const Int& residual(int arc) const { return arcs_[arc].cap; }
  int arc_to(int arc) const { return arcs_[arc].to; }
  int arc_from(int arc) const { return arcs_[arc ^ 1].to; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

  /// Arc indices leaving `node` (both directions' forward entries).
  std::vector<int> arcs_out(int node) const;

 private:
  struct Arc {
    int to;
    int next;
    Int cap;
  };

  bool bfs(int source, int sink);
  Int dfs(int node, int sink, Int limit);

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace corrauct
