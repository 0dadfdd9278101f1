#include "corrauct/maxflow.hpp"

#include <deque>
#include <stdexcept>

namespace corrauct {

int MaxFlow::add_node() {
  head_.push_back(-1);
  return static_cast<int>(head_.size()) - 1;
}

int MaxFlow::add_arc(int from, int to, Int capacity) {
  if (capacity < 0) throw std::invalid_argument("negative capacity");
  int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, head_[from], std::move(capacity)});
  head_[from] = id;
  arcs_.push_back({from, head_[to], Int(0)});
  head_[to] = id + 1;
  return id;
}

bool MaxFlow::bfs(int source, int sink) {
  level_.assign(head_.size(), -1);
  std::deque<int> queue;
  level_[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    int node = queue.front();
    queue.pop_front();
    for (int a = head_[node]; a != -1; a = arcs_[a].next) {
      if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
        level_[arcs_[a].to] = level_[node] + 1;
        queue.push_back(arcs_[a].to);
      }
    }
  }
  return level_[sink] >= 0;
}

Int MaxFlow::dfs(int node, int sink, Int limit) {
  if (node == sink) return limit;
  Int pushed = 0;
  for (int& a = iter_[node]; a != -1; a = arcs_[a].next) {
    Arc& arc = arcs_[a];
    if (arc.cap <= 0 || level_[arc.to] != level_[node] + 1) continue;
    Int want = limit - pushed;
    if (arc.cap < want) want = arc.cap;
    Int got = dfs(arc.to, sink, want);
    if (got > 0) {
      arc.cap -= got;
      arcs_[a ^ 1].cap += got;
      pushed += got;
      if (pushed == limit) return pushed;
    } else {
      level_[arc.to] = -1;  // dead end in this phase
    }
  }
  return pushed;
}

Int MaxFlow::run(int source, int sink) {
  if (source == sink) throw std::invalid_argument("source equals sink");
  Int total = 0;
  Int inf = 1;
  for (const Arc& arc : arcs_) inf += arc.cap;
  while (bfs(source, sink)) {
    iter_ = head_;
    total += dfs(source, sink, inf);
  }
  return total;
}

std::vector<char> MaxFlow::source_side(int source) const {
  std::vector<char> seen(head_.size(), 0);
  std::deque<int> queue;
  seen[source] = 1;
  queue.push_back(source);
  while (!queue.empty()) {
    int node = queue.front();
    queue.pop_front();
    for (int a = head_[node]; a != -1; a = arcs_[a].next) {
      if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
        seen[arcs_[a].to] = 1;
        queue.push_back(arcs_[a].to);
      }
    }
  }
  return seen;
}

std::vector<int> MaxFlow::arcs_out(int node) const {
  std::vector<int> out;
  for (int a = head_[node]; a != -1; a = arcs_[a].next) out.push_back(a);
  return out;
}

}  // namespace corrauct
