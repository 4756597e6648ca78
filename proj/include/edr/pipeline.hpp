#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "edr/extraction.hpp"
#include "edr/graph_core.hpp"
#include "edr/streams.hpp"

namespace edr {

enum class CaseKind { InfinitelyManyEnds, ThickEnd, TwoThinEnds, OneThinEnd };

struct CaseTag {
  CaseKind kind = CaseKind::OneThinEnd;
  std::vector<int> ends;  // the end pair, or the single end
  std::string text() const;
};

struct ExtractionResult {
  CaseTag tag;
  std::vector<DoubleRayStream> double_rays;
  int horizon = 0;       // requested
  int horizon_used = 0;  // working radius the heads were built at
  std::vector<std::string> audit;
  TraceLog trace;
  std::vector<std::size_t> connector_regions;  // one-ended: region used by each double ray
  std::vector<std::size_t> branch_counts;      // tree: deep branches left after each peel
};

// Unbounded components of ball(R) minus ball(r) for r = R/4 and R/2, where
// R is the horizon capped by the audit ball budget.
std::vector<std::size_t> unbounded_component_counts(const LazyGraph& g, int horizon);

// Case from the declared ends, cross-checked against truncations. With more
// than two thin ends the pair comes from the family by pigeonhole.
CaseTag classify(const LazyGraph& g, int horizon, const FamilyGenerator* family = nullptr);

// Pairwise edge-disjoint, simple, and walks of g, on prefixes at the horizon.
std::vector<std::string> audit_double_rays(const LazyGraph& g, const std::vector<DoubleRayStream>& rays, int horizon);

ExtractionResult tree_double_rays(const LazyGraph& t, std::size_t m, int horizon);
ExtractionResult two_ended_double_rays(const LazyGraph& g, int end1, int end2, const FamilyGenerator& family,
                                       std::size_t m, int horizon);
ExtractionResult one_ended_double_rays(const LazyGraph& g, int end, const FamilyGenerator& family, std::size_t m,
                                       int horizon);
ExtractionResult extract_double_rays(const LazyGraph& g, const std::optional<FamilyGenerator>& family, std::size_t m,
                                     int horizon);

}  // namespace edr
