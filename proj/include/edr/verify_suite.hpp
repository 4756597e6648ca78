#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "edr/graph_core.hpp"
#include "edr/io.hpp"
#include "edr/shaping.hpp"

namespace edr {

struct SuiteOptions {
  unsigned long long seed = 1;
  std::size_t connector_cases = 200;
  std::size_t shaping_cases = 200;
  // Drop a vertex from this separation of the thick_ladder capture before
  // verifying it; the suite must then report the broken condition.
  std::optional<std::size_t> corrupt_separator;
};

std::vector<CheckRecord> run_verify_suite(const SuiteOptions& options);

// Random bounded integer that does not depend on the standard library's
// distribution implementation.
std::size_t draw(std::mt19937_64& rng, std::size_t bound);

struct ConnectorCase {
  FiniteGraph graph;
  std::vector<VertexId> S;
  std::vector<EdgeList> H;  // pairwise edge-disjoint, each connected and meeting S
};

// Connected graph on 2..max_vertices vertices with a random terminal set and
// a random valid family of subgraphs.
ConnectorCase random_connector_case(std::mt19937_64& rng, std::size_t max_vertices = 40);

// levels[i] has i + 1 shapings over the window; each colour is undefined with
// probability undefined_percent / 100, except one defined index per shaping.
ShapingLevels random_shaping_levels(std::mt19937_64& rng, std::size_t levels, std::size_t window, int colours,
                                    int pair_colours, unsigned undefined_percent);

}  // namespace edr
