#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edr/connectors.hpp"
#include "edr/graph_core.hpp"
#include "edr/separations.hpp"
#include "edr/shapes.hpp"
#include "edr/streams.hpp"

namespace edr {

// Stage-by-stage notes for the --trace report.
struct TraceLog {
  std::vector<std::pair<std::string, std::string>> events;
  void add(std::string stage, std::string detail) { events.emplace_back(std::move(stage), std::move(detail)); }
};

// Per-vertex lookup of separator membership for a capturing window: the
// least i with v in A_i, and the i with v in X_i.
class SeparatorIndex {
 public:
  explicit SeparatorIndex(const CapturingSequence& seq);
  std::size_t size() const { return count_; }
  // Least i with v on the A side (separator included) of the i-th separation.
  std::size_t first_a(const VertexId& v) const;
  std::optional<std::size_t> separator_of(const VertexId& v) const;
  bool in_a_interior(const VertexId& v, std::size_t i) const;
  // Shape words of the path at every separation of the window.
  std::vector<ShapeWord> profile(const Path& p) const;

 private:
  std::size_t count_;
  VertexMap<std::size_t> first_a_;
  VertexMap<std::size_t> sep_of_;
};

// A 2-ray together with its cover prefixes at the window radius.
struct TrackedTwoRay {
  TwoRayStream ray;
  Path first;
  Path second;
  std::size_t origin = 0;  // index in the family it was taken from
};

TrackedTwoRay track(const TwoRayStream& t, int radius, std::size_t origin);
// Lefty normalization on tracked prefixes; floor forces avoidance of A_j, j < floor.
void make_lefty_tracked(TrackedTwoRay& t, const SeparatorIndex& idx, std::size_t floor = 0);
// Both rays start beyond every separation of the window.
bool unresolved(const TrackedTwoRay& t, const SeparatorIndex& idx);
TwoShape two_shape_at(const TrackedTwoRay& t, const CapturingSequence& seq, std::size_t j);

struct ShapeTable {
  std::vector<std::size_t> indices;                     // separation indices, increasing
  std::vector<std::map<std::size_t, TwoShape>> shapes;  // per level (0-based), keyed by kept index
  std::vector<std::vector<TrackedTwoRay>> refined;      // level i keeps link_classes*(i+1) members
};

// Nested refinement: level i keeps the first i-1 indices of the previous level
// and the longest suffix of the rest on which link_classes*i resolved members agree.
ShapeTable refine_same_shape_internal(const std::vector<std::vector<TwoRayStream>>& families,
                                      const CapturingSequence& seq, std::size_t shape_classes, std::size_t link_classes,
                                      TraceLog* trace = nullptr);
// Audit: every level agrees with its shape row on every kept index.
std::vector<std::string> audit_shape_table(const ShapeTable& table, const CapturingSequence& seq);

struct Alignment {
  std::vector<std::size_t> levels;  // increasing 0-based levels, count + 1 entries
  std::vector<std::size_t> seps;    // increasing kept indices, count + 1 entries (the last one spare)
};

// Increasing levels and separations where consecutive chosen levels share a
// nonempty shape at each chosen separation, plus a spare separation where the
// last chosen level has a nonempty shape.
Alignment align_shapes_external(const ShapeTable& table, std::size_t count);
std::vector<std::string> audit_alignment(const ShapeTable& table, const Alignment& a, std::size_t count);

struct SelectedLevel {
  std::vector<TrackedTwoRay> members;  // sorted by least start id
  TwoLink link;
};

// Pigeonhole on induced link pairs between the two separations.
SelectedLevel select_allowed(const std::vector<TrackedTwoRay>& family, const Separation& near, const Separation& far,
                             std::size_t count, const TwoShape& near_shape, const TwoShape& far_shape);

struct AlignedFamilies {
  CapturingSequence seq;                           // one separation per level, plus one
  std::vector<std::vector<TrackedTwoRay>> levels;  // level i (0-based) has i+1 members
  std::vector<TwoLink> links;
  std::vector<TwoShape> shape_here;  // shape of level i at separation i
  std::vector<TwoShape> shape_next;  // shape of level i at separation i+1
};

// Reindexes so that level i is the (i+1)-st chosen level and separation i the i-th chosen one.
AlignedFamilies build_aligned(const ShapeTable& table, const Alignment& a, const CapturingSequence& seq,
                              std::size_t count, TraceLog* trace = nullptr);

struct StrandSet {
  std::size_t level = 0;  // 0-based
  FiniteGraph first;      // union over later levels of the level's representative, region by region
  FiniteGraph second;
  VertexSet base;      // Y_level separator
  VertexSet frontier;  // last separator of the window
};

std::vector<StrandSet> assemble_strands(const AlignedFamilies& aligned);
// Shared edges between any two strand graphs, as "i/j: edge" strings.
std::vector<std::string> audit_strand_overlap(const std::vector<StrandSet>& strands);

struct StrandReport {
  std::vector<std::string> violations;
  std::size_t degree_one = 0;
  bool ok() const { return violations.empty(); }
};

// Degree at most 2, degree-1 vertices on the base or frontier, and the
// per-vertex edge split predicted by the shape words.
StrandReport check_strand_degrees(const StrandSet& s, const AlignedFamilies& aligned, bool second = false);
// Odd number of degree-1 base vertices, matching the word count in l:w:r.
StrandReport check_parity(const StrandSet& s, const ShapeWord& base_shape, bool second = false);
// Occurrences of lvr minus occurrences of rvl in l:w:r, and their total.
std::pair<long, std::size_t> sentinel_counts(const ShapeWord& w);

// Walk from the least degree-1 base vertex whose component reaches the
// frontier. Throws NeedsLargerHorizon if no component does.
Path extract_ray_head(const StrandSet& s, bool second = false);
RayStream extract_ray(const LazyGraph& g, const StrandSet& s, int base_horizon, bool second = false);

struct TwoRayRun {
  std::vector<TwoRayStream> rays;
  std::vector<std::pair<Path, Path>> heads;
  std::size_t levels_used = 0;
};

// refine, align, select, assemble, check and extract for m 2-rays.
TwoRayRun two_rays_stream(const FamilyGenerator& gen, const CapturingSequence& seq, std::size_t m, int horizon,
                          TraceLog* trace = nullptr);

struct ConnectorPlan {
  std::vector<TwoRayStream> tailored;
  std::vector<std::size_t> regions;  // x with connector inside A_{x+1} ∩ B_x
  std::vector<ConnectorResult> connectors;
  std::vector<std::size_t> budget;  // H members touched per region
};

ConnectorPlan connectors_for_two_rays(const std::vector<TwoRayStream>& rays, const CapturingSequence& seq, int horizon,
                                      TraceLog* trace = nullptr);

struct DoubleRayRun {
  std::vector<DoubleRayStream> rays;
  std::vector<std::pair<std::size_t, std::size_t>> pairing;  // (2-ray, connector)
};

DoubleRayRun two_rays_to_double_rays(const ConnectorPlan& plan, std::size_t m, int horizon, TraceLog* trace = nullptr);

}  // namespace edr
