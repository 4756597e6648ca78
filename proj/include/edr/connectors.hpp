#pragma once

#include <cstddef>
#include <vector>

#include "edr/graph_core.hpp"

namespace edr {

struct ConnectorResult {
  FiniteGraph tree;                  // connected, contains every vertex of S
  std::vector<std::size_t> touched;  // members of H sharing an edge with tree, sorted
  std::size_t rounds = 0;
};

// Connects S inside fg while sharing edges with at most 2|S|-2 members of H.
// Each round joins two components of the current graph by a shortest path
// free of H edges, extended through at most two member components.
ConnectorResult finite_connector(const FiniteGraph& fg, const std::vector<VertexId>& S, const std::vector<EdgeList>& H);

}  // namespace edr
