#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace edr {

class VertexId {
 public:
  VertexId() = default;
  explicit VertexId(std::string name) : name_(std::move(name)) {}
  VertexId(const char* name) : name_(name) {}  // NOLINT: literals in tests and instance rules

  const std::string& str() const { return name_; }
  bool empty() const { return name_.empty(); }

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) { return a.name_ <=> b.name_; }

 private:
  std::string name_;
};

std::ostream& operator<<(std::ostream& os, const VertexId& v);

struct VertexIdHash {
  std::size_t operator()(const VertexId& v) const noexcept { return std::hash<std::string>{}(v.str()); }
};

using VertexSet = std::unordered_set<VertexId, VertexIdHash>;
template <class T>
using VertexMap = std::unordered_map<VertexId, T, VertexIdHash>;
using Path = std::vector<VertexId>;

// Unordered vertex pair stored with the smaller id first.
class EdgeId {
 public:
  EdgeId(VertexId a, VertexId b);

  const VertexId& first() const { return first_; }
  const VertexId& second() const { return second_; }
  bool touches(const VertexId& v) const { return first_ == v || second_ == v; }
  const VertexId& other(const VertexId& v) const { return v == first_ ? second_ : first_; }
  std::string str() const { return first_.str() + "--" + second_.str(); }

  friend bool operator==(const EdgeId&, const EdgeId&) = default;
  friend std::strong_ordering operator<=>(const EdgeId&, const EdgeId&) = default;

 private:
  VertexId first_;
  VertexId second_;
};

struct EdgeIdHash {
  std::size_t operator()(const EdgeId& e) const noexcept {
    std::size_t h = VertexIdHash{}(e.first());
    return h ^ (VertexIdHash{}(e.second()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

using EdgeSet = std::unordered_set<EdgeId, EdgeIdHash>;
using EdgeList = std::vector<EdgeId>;

// Edges traversed by a path, in order.
EdgeList path_edges(const Path& p);

// A finite simple graph with dense indices. Neighbor lists are kept sorted by
// id so every traversal is deterministic.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  explicit FiniteGraph(int radius) : radius_(radius) {}

  int add_vertex(const VertexId& v);
  void add_edge(const VertexId& a, const VertexId& b);
  void add_path(const Path& p);

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  int radius() const { return radius_; }
  void set_radius(int r) { radius_ = r; }

  bool has_vertex(const VertexId& v) const { return index_.count(v) != 0; }
  std::optional<int> index_of(const VertexId& v) const;
  int index(const VertexId& v) const;  // throws InputError when absent
  const VertexId& id(int i) const { return ids_[static_cast<std::size_t>(i)]; }
  std::span<const int> adjacent(int i) const { return adj_[static_cast<std::size_t>(i)]; }
  std::size_t degree(int i) const { return adj_[static_cast<std::size_t>(i)].size(); }
  bool has_edge(const VertexId& a, const VertexId& b) const;

  // Distance from the truncation root, or -1 for standalone graphs.
  int depth(int i) const { return depth_.empty() ? -1 : depth_[static_cast<std::size_t>(i)]; }
  int depth(const VertexId& v) const { return depth(index(v)); }
  void set_depth(int i, int d);

  const std::vector<VertexId>& vertices() const { return ids_; }
  std::vector<VertexId> sorted_vertices() const;
  std::vector<EdgeId> edges() const;  // sorted

  FiniteGraph induced(const VertexSet& keep) const;

 private:
  int radius_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<VertexId> ids_;
  VertexMap<int> index_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> depth_;
};

// An infinite sequence given by its n-th element.
using VertexSequence = std::function<VertexId(std::size_t)>;

struct EndDecl {
  int id = 0;
  std::optional<int> vertex_degree;  // empty means thick
  std::vector<VertexSequence> witness_rays;

  bool thin() const { return vertex_degree.has_value(); }
};

struct GraphOptions {
  std::size_t degree_bound = 1'000'000;
  std::size_t vertex_budget = 4'000'000;
};

// Infinite locally finite graph presented by a neighbor oracle. Copies share
// the memoized oracle answers and BFS balls; the cache is guarded internally
// so concurrent readers are fine.
class LazyGraph {
 public:
  using NeighborFn = std::function<std::vector<VertexId>(const VertexId&)>;
  using DepthFn = std::function<std::optional<int>(const VertexId&)>;

  LazyGraph(std::string name, VertexId root, NeighborFn neighbors, std::vector<EndDecl> ends,
            bool infinitely_many_ends = false, GraphOptions options = {});

  const std::string& name() const;
  const VertexId& root() const;
  const std::vector<EndDecl>& ends() const;
  const EndDecl& end(int id) const;
  bool infinitely_many_ends() const;

  // Instance parameters, serialized as JSON text by the instance registry.
  const std::string& params_text() const;
  void set_params_text(std::string text);

  // Same oracle with replaced end metadata (the memo cache is not shared).
  LazyGraph with_metadata(std::vector<EndDecl> ends, bool infinitely_many_ends) const;

  // Exact distance from the root. When set it must agree with BFS.
  void set_depth_hint(DepthFn fn);
  bool has_depth_hint() const;

  // Checked oracle call: sorted, no self loop, within the degree bound.
  const std::vector<VertexId>& neighbors(const VertexId& v) const;
  int depth(const VertexId& v) const;

  // Induced subgraph on the radius-n ball; built once per radius and shared.
  std::shared_ptr<const FiniteGraph> ball(int n) const;

  // Vertices in BFS order up to radius n (the enumeration v_1, v_2, ...).
  std::vector<VertexId> bfs_order(int n) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

FiniteGraph truncate(const LazyGraph& g, int n);

// Connected components of fg - removed, each sorted by id, ordered by least id.
std::vector<std::vector<VertexId>> components(const FiniteGraph& fg, const VertexSet& removed);

// Component index per vertex index (-1 for removed vertices); returns count.
int component_labels(const FiniteGraph& fg, const std::vector<char>& removed, std::vector<int>& label);

bool is_connected(const FiniteGraph& fg);

struct VertexCut {
  bool connected = true;  // false when no source-sink path exists
  std::vector<VertexId> cut;
  std::vector<VertexId> side_a;
  std::vector<VertexId> side_b;
};

// Minimum vertex cut between two disjoint vertex sets. Terminal vertices may
// be cut. Among minimum cuts the one closest to the sources is returned.
VertexCut min_vertex_cut(const FiniteGraph& fg, const std::vector<VertexId>& sources,
                         const std::vector<VertexId>& sinks);

// As above, but the listed vertices can never be part of the cut. Throws
// InputError when protected vertices alone join sources to sinks.
VertexCut min_vertex_cut_protected(const FiniteGraph& fg, const std::vector<VertexId>& sources,
                                   const std::vector<VertexId>& sinks, const VertexSet& uncuttable);

// Index form of the protected cut for hot loops: no sides, cut sorted by id.
struct IndexCut {
  bool connected = true;
  std::vector<int> cut;
};
IndexCut min_vertex_cut_protected(const FiniteGraph& fg, std::vector<int> sources, std::vector<int> sinks,
                                  const std::vector<char>& uncuttable);

// Maximum number of internally vertex-disjoint paths between the sets, with
// the paths themselves (used as Menger certificates).
std::vector<Path> vertex_disjoint_paths(const FiniteGraph& fg, const std::vector<VertexId>& sources,
                                        const std::vector<VertexId>& sinks);

std::vector<Path> max_edge_disjoint_paths(const FiniteGraph& fg, const VertexId& s, const VertexId& t);

// Edge-disjoint paths from s to any vertex of targets, at most limit of them,
// avoiding the given edges and vertices.
std::vector<Path> edge_disjoint_paths_to_set(const FiniteGraph& fg, const VertexId& s, const VertexSet& targets,
                                             std::size_t limit, const EdgeSet& banned_edges,
                                             const VertexSet& banned_vertices);

// Shortest path by BFS with least-id tie-breaking; empty when unreachable.
Path shortest_path(const FiniteGraph& fg, const VertexSet& from, const VertexSet& to, const EdgeSet& banned_edges = {},
                   const VertexSet& banned_vertices = {});

}  // namespace edr
