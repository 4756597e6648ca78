#include "edr/flow.hpp"

#include <algorithm>
#include <deque>

namespace edr {

FlowNetwork::FlowNetwork(int nodes) : out_(static_cast<std::size_t>(nodes)) {}

int FlowNetwork::add_node() {
  out_.emplace_back();
  return node_count() - 1;
}

int FlowNetwork::add_arc(int from, int to, int capacity) {
  int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, 0});
  arcs_.push_back({from, 0, 0});
  out_[static_cast<std::size_t>(from)].push_back(id);
  out_[static_cast<std::size_t>(to)].push_back(id + 1);
  return id;
}

int FlowNetwork::max_flow(int source, int sink, int limit) {
  int total = 0;
  std::vector<int> via(out_.size());
  while (total < limit) {
    std::fill(via.begin(), via.end(), -1);
    std::deque<int> queue{source};
    via[static_cast<std::size_t>(source)] = -2;
    while (!queue.empty() && via[static_cast<std::size_t>(sink)] == -1) {
      int u = queue.front();
      queue.pop_front();
      for (int a : out_[static_cast<std::size_t>(u)]) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.capacity - arc.flow > 0 && via[static_cast<std::size_t>(arc.to)] == -1) {
          via[static_cast<std::size_t>(arc.to)] = a;
          queue.push_back(arc.to);
        }
      }
    }
    if (via[static_cast<std::size_t>(sink)] == -1) break;
    int push = limit - total;
    for (int v = sink; v != source;) {
      const Arc& arc = arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)])];
      push = std::min(push, arc.capacity - arc.flow);
      v = arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)] ^ 1)].to;
    }
    for (int v = sink; v != source;) {
      int a = via[static_cast<std::size_t>(v)];
      arcs_[static_cast<std::size_t>(a)].flow += push;
      arcs_[static_cast<std::size_t>(a ^ 1)].flow -= push;
      v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
    }
    total += push;
  }
  return total;
}

std::vector<char> FlowNetwork::residual_reachable(int source) const {
  std::vector<char> seen(out_.size(), 0);
  std::deque<int> queue{source};
  seen[static_cast<std::size_t>(source)] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int a : out_[static_cast<std::size_t>(u)]) {
      const Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.capacity - arc.flow > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
        seen[static_cast<std::size_t>(arc.to)] = 1;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

}  // namespace edr
