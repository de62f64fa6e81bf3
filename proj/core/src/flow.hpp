#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace harmony::detail {

/// Edmonds-Karp max flow over an exact capacity type. Adjacency is scanned
/// in insertion order, so results are deterministic.
template <typename Cap>
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adjacency_(nodes) {}

  /// Returns the index of the forward arc.
  std::size_t add_arc(std::size_t from, std::size_t to, Cap capacity) {
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, capacity, Cap(0)});
    adjacency_[from].push_back(id);
    arcs_.push_back({from, Cap(0), Cap(0)});
    adjacency_[to].push_back(id + 1);
    return id;
  }

  Cap max_flow(std::size_t source, std::size_t sink) {
    Cap total(0);
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    for (;;) {
      std::vector<std::size_t> via(adjacency_.size(), none);
      std::vector<bool> seen(adjacency_.size(), false);
      std::queue<std::size_t> frontier;
      frontier.push(source);
      seen[source] = true;
      while (!frontier.empty() && !seen[sink]) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (std::size_t id : adjacency_[u]) {
          const auto& a = arcs_[id];
          if (!seen[a.to] && residual(id) > Cap(0)) {
            seen[a.to] = true;
            via[a.to] = id;
            frontier.push(a.to);
          }
        }
      }
      if (!seen[sink]) return total;
      Cap push = residual(via[sink]);
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to)
        if (residual(via[v]) < push) push = residual(via[v]);
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].flow += push;
        arcs_[via[v] ^ 1].flow -= push;
      }
      total += push;
    }
  }

  Cap flow(std::size_t arc) const { return arcs_[arc].flow; }

  /// Nodes reachable from `source` in the residual graph.
  std::vector<bool> reachable(std::size_t source) const {
    std::vector<bool> seen(adjacency_.size(), false);
    std::vector<std::size_t> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t id : adjacency_[u]) {
        if (!seen[arcs_[id].to] && residual(id) > Cap(0)) {
          seen[arcs_[id].to] = true;
          stack.push_back(arcs_[id].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    Cap capacity;
    Cap flow;
  };

  Cap residual(std::size_t id) const { return arcs_[id].capacity - arcs_[id].flow; }

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Arc> arcs_;
};

}  // namespace harmony::detail
