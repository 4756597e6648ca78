#pragma once

#include <climits>
#include <vector>

namespace edr {

// Integer max-flow by shortest augmenting paths. Arcs are scanned in
// insertion order, so callers control tie-breaking by the order they add them.
class FlowNetwork {
 public:
  static constexpr int kInfinite = INT_MAX / 4;

  explicit FlowNetwork(int nodes);

  int add_node();
  int add_arc(int from, int to, int capacity);
  int node_count() const { return static_cast<int>(out_.size()); }

  // Augments until no path remains or the flow reaches limit.
  int max_flow(int source, int sink, int limit = kInfinite);

  int flow_on(int arc) const { return arcs_[static_cast<std::size_t>(arc)].flow; }
  int head(int arc) const { return arcs_[static_cast<std::size_t>(arc)].to; }
  const std::vector<int>& out_arcs(int node) const { return out_[static_cast<std::size_t>(node)]; }
  bool is_forward(int arc) const { return arc % 2 == 0; }

  // Nodes reachable from source in the residual network.
  std::vector<char> residual_reachable(int source) const;

 private:
  struct Arc {
    int to;
    int capacity;
    int flow;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
};

}  // namespace edr
