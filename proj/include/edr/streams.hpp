#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "edr/graph_core.hpp"

namespace edr {

// A fixed infinite path revealed on demand. The path never depends on the
// horizon it is queried at, which is what makes every stream prefix-consistent.
class PathSource {
 public:
  virtual ~PathSource() = default;
  virtual const LazyGraph& graph() const = 0;
  // Vertices from index `from` up to and including the first later vertex of
  // depth > horizon.
  virtual Path reveal(std::size_t from, int horizon) const = 0;
};

class RayStream {
 public:
  RayStream(std::shared_ptr<const PathSource> source, std::size_t offset = 0);

  // Ray whose n-th vertex is nth(n).
  static RayStream from_sequence(const LazyGraph& g, VertexSequence nth);
  // head followed by rest; rest must start at, or next to, the last head vertex.
  static RayStream concat(Path head, RayStream rest);

  // The start vertex and every following vertex while depth stays <= horizon.
  Path at(int horizon) const;
  // at(horizon) followed by the first vertex deeper than horizon.
  Path cover(int horizon) const;
  VertexId start() const;
  RayStream tail(std::size_t drop) const { return RayStream(source_, offset_ + drop); }
  std::size_t offset() const { return offset_; }
  const LazyGraph& graph() const { return source_->graph(); }

 private:
  std::shared_ptr<const PathSource> source_;
  std::size_t offset_;
};

struct TwoRayStream {
  RayStream first;
  RayStream second;
};

// Two arms leaving a common center vertex, or the two ends of a center edge.
class DoubleRayStream {
 public:
  DoubleRayStream(RayStream left, RayStream right, bool edge_center);

  Path at(int horizon) const;
  const RayStream& left() const { return left_; }
  const RayStream& right() const { return right_; }
  bool edge_center() const { return edge_center_; }
  std::string center_text() const;

 private:
  RayStream left_;
  RayStream right_;
  bool edge_center_;
};

// Produces i pairwise edge-disjoint double rays.
struct FamilyGenerator {
  std::string name;
  std::function<std::vector<DoubleRayStream>(std::size_t)> produce;
  std::size_t max_count = std::numeric_limits<std::size_t>::max();
};

// A finite head for each arm of each object. Arms of one object are
// vertex-disjoint except that two arms may share their first vertex.
struct StreamObject {
  std::vector<Path> arms;
};

// Extends a set of heads to infinite, pairwise edge-disjoint arms. Extension
// happens in rounds at fixed depth checkpoints, each round growing every arm
// past the checkpoint along strictly outward steps with least-id choices, so
// the arms are the same no matter in what order or at what horizon they are
// read.
class StreamBundle : public std::enable_shared_from_this<StreamBundle> {
 public:
  static std::shared_ptr<StreamBundle> make(LazyGraph g, std::vector<StreamObject> objects, int base_horizon,
                                            VertexSet forbidden = {});

  std::size_t object_count() const { return objects_.size(); }
  RayStream arm(std::size_t object, std::size_t arm) const;
  TwoRayStream two_ray(std::size_t object) const;
  DoubleRayStream double_ray(std::size_t object) const;

  const LazyGraph& graph() const { return g_; }
  Path reveal(std::size_t object, std::size_t arm, std::size_t from, int horizon) const;

  StreamBundle(LazyGraph g, std::vector<StreamObject> objects, int base_horizon, VertexSet forbidden);

 private:
  bool satisfied(const Path& arm, std::size_t from, int horizon) const;
  void run_round() const;
  Path extend_arm(std::size_t object, const Path& arm, int target) const;
  Path outward_search(std::size_t object, const Path& arm, int target) const;
  Path fallback_search(std::size_t object, const Path& arm, int target) const;

  LazyGraph g_;
  VertexSet forbidden_;
  int step_;
  mutable std::mutex mu_;
  mutable std::vector<StreamObject> objects_;
  mutable std::vector<VertexSet> object_vertices_;
  mutable EdgeSet used_;
  mutable int checkpoint_;
};

// Pairwise edge-disjointness of finite paths; returns the first shared edge.
std::optional<std::pair<std::size_t, std::size_t>> first_edge_conflict(const std::vector<Path>& paths);
bool is_simple(const Path& p);
bool is_walk_in(const LazyGraph& g, const Path& p);

}  // namespace edr
