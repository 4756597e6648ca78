#pragma once

// Slow, direct re-implementations used to cross-check the library.
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "edr/graph_core.hpp"
#include "edr/shapes.hpp"
#include "edr/shaping.hpp"

namespace oracle {

bool connected(const edr::FiniteGraph& fg);

// Smallest vertex set meeting every source-sink path (terminals may be cut),
// by subset enumeration. Graphs up to about 14 vertices.
std::size_t min_vertex_cut(const edr::FiniteGraph& fg, const std::vector<edr::VertexId>& sources,
                           const std::vector<edr::VertexId>& sinks);

// Minimum number of edges separating s from t, over all vertex bipartitions.
std::size_t min_edge_cut(const edr::FiniteGraph& fg, const edr::VertexId& s, const edr::VertexId& t);

// Every shape over the separator: distinct vertices joined by l or r.
std::vector<edr::Word> shapes(const std::vector<edr::VertexId>& separator);

// Every word over the vertex union and letters l, m, r that satisfies the
// linking rules, checked on the word text.
std::vector<edr::Word> allowed_links(const edr::Word& from, const edr::Word& to);

// Explicit-subset search for a selection of the given length.
bool shaping_selection_exists(const edr::ShapingLevels& levels, std::size_t count);

// (#lvr - #rvl, #lvr + #rvl) in the letter string l, letters of w, r.
std::pair<long, std::size_t> sentinel_counts(const edr::Word& w);

struct DegreeFacts {
  std::size_t max_degree = 0;
  std::vector<edr::VertexId> leaves;
};
DegreeFacts degree_facts(const edr::FiniteGraph& fg);

// Path prefix check: a appears as a contiguous block of b.
bool contains_block(const edr::Path& b, const edr::Path& a);

}  // namespace oracle
