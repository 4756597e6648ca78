#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "edr/graph_core.hpp"
#include "edr/separations.hpp"
#include "edr/streams.hpp"

namespace edr {

// Splits a double ray at its center into two disjoint rays. A vertex center
// is dropped from both sides.
TwoRayStream to_two_ray(const DoubleRayStream& d, int horizon);

RayStream tail_of(const RayStream& r, std::size_t drop);

// Index of the first separation whose A side contains v, or seps.size().
std::size_t first_a_index(const CapturingSequence& seq, const VertexId& v);

// Drops initial segments so that each ray meets A_i only if it starts in A_i,
// and both rays start in the same least A_i.
TwoRayStream make_lefty(const TwoRayStream& t, const CapturingSequence& seq);
bool is_lefty(const TwoRayStream& t, const CapturingSequence& seq);

// Cuts each 2-ray behind the last forbidden edge visible up to the horizon.
std::vector<TwoRayStream> tailor(const std::vector<TwoRayStream>& family, const EdgeSet& forbidden, int horizon);

struct HullResult {
  FiniteGraph graph;
  std::vector<Path> tails;  // per input ray, inside the truncation
  std::size_t max_degree = 0;
  std::size_t paths_added = 0;
};

// Union of tails of the rays, each living in a deep component of the
// truncation minus a BFS prefix, plus disjoint linking paths between the
// first tail and every other one.
HullResult locally_finite_hull(const LazyGraph& g, const std::vector<RayStream>& rays, int horizon);

// Largest group of rays pairwise sharing at least t vertices up to the
// horizon, grown greedily from every seed. Sorted indices.
std::vector<std::size_t> refine_mutual_intersection(const std::vector<RayStream>& rays, int horizon, std::size_t t);
std::vector<std::size_t> mutual_intersection_clique(const std::vector<Path>& paths, std::size_t t);
// k+1 rays pairwise sharing fewer than t vertices up to the horizon, if any.
std::optional<std::vector<std::size_t>> almost_disjoint_witness(const std::vector<RayStream>& rays, std::size_t k,
                                                                int horizon, std::size_t t);

// Removes closed detours so every vertex appears once, keeping the ends.
Path loop_erase(const Path& p);

// Finite version on host heads: up to m edge-disjoint paths each starting at
// a distinct vertex of starts and ending at the end of a host. Hosts must be
// pairwise edge-disjoint. Either distinct hosts are cut at distinct start
// vertices, or the host richest in start vertices is walked and left at
// crossings with the other hosts.
std::vector<Path> ray_heads_from_starts(const std::vector<Path>& hosts, const std::vector<VertexId>& starts,
                                        std::size_t m);
std::vector<RayStream> rays_from_starts(const std::vector<RayStream>& hosts, const std::vector<VertexId>& starts,
                                        std::size_t m, int horizon);

// Up to m edge-disjoint paths from v to the vertices of depth fg.radius().
std::vector<Path> edge_disjoint_ray_heads(const FiniteGraph& fg, const VertexId& v, std::size_t m,
                                          const VertexSet& banned = {});
// Powers of two from first up to horizon (just horizon when first exceeds it).
std::vector<int> working_horizons(int first, int horizon);

// m edge-disjoint rays from v; the working radius doubles from 16 until the
// boundary flow reaches m, else NeedsLargerHorizon.
std::vector<RayStream> edge_disjoint_rays_from(const LazyGraph& g, const VertexId& v, std::size_t m, int horizon);

}  // namespace edr
