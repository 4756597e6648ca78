#include "edr/streams.hpp"

#include <algorithm>
#include <deque>

#include "edr/errors.hpp"

namespace edr {

namespace {

constexpr std::size_t kMaxRevealSteps = 50'000'000;

class SequenceSource final : public PathSource {
 public:
  SequenceSource(LazyGraph g, VertexSequence nth) : g_(std::move(g)), nth_(std::move(nth)) {}
  const LazyGraph& graph() const override { return g_; }
  Path reveal(std::size_t from, int horizon) const override {
    Path out{nth_(from)};
    for (std::size_t i = from + 1;; ++i) {
      if (i - from > kMaxRevealSteps)
        throw UpstreamFault("ray does not leave the ball of radius " + std::to_string(horizon));
      out.push_back(nth_(i));
      if (g_.depth(out.back()) > horizon) return out;
    }
  }

 private:
  LazyGraph g_;
  VertexSequence nth_;
};

class ArmSource final : public PathSource {
 public:
  ArmSource(std::shared_ptr<const StreamBundle> bundle, std::size_t object, std::size_t arm)
      : bundle_(std::move(bundle)), object_(object), arm_(arm) {}
  const LazyGraph& graph() const override { return bundle_->graph(); }
  Path reveal(std::size_t from, int horizon) const override { return bundle_->reveal(object_, arm_, from, horizon); }

 private:
  std::shared_ptr<const StreamBundle> bundle_;
  std::size_t object_;
  std::size_t arm_;
};

class ConcatSource final : public PathSource {
 public:
  ConcatSource(Path head, RayStream rest) : head_(std::move(head)), rest_(std::move(rest)) {
    if (head_.empty()) throw InputError("empty head");
    skip_ = rest_.start() == head_.back() ? 1 : 0;
  }
  const LazyGraph& graph() const override { return rest_.graph(); }
  Path reveal(std::size_t from, int horizon) const override {
    const LazyGraph& g = rest_.graph();
    if (from >= head_.size()) {
      return rest_.tail(from - head_.size() + skip_).cover(horizon);
    }
    Path out{head_[from]};
    for (std::size_t i = from + 1; i < head_.size(); ++i) {
      out.push_back(head_[i]);
      if (g.depth(head_[i]) > horizon) return out;
    }
    Path more = rest_.tail(skip_).cover(horizon);
    out.insert(out.end(), more.begin(), more.end());
    return out;
  }

 private:
  Path head_;
  RayStream rest_;
  std::size_t skip_ = 0;
};

}  // namespace

RayStream RayStream::concat(Path head, RayStream rest) {
  return RayStream(std::make_shared<ConcatSource>(std::move(head), std::move(rest)));
}

RayStream::RayStream(std::shared_ptr<const PathSource> source, std::size_t offset)
    : source_(std::move(source)), offset_(offset) {}

RayStream RayStream::from_sequence(const LazyGraph& g, VertexSequence nth) {
  return RayStream(std::make_shared<SequenceSource>(g, std::move(nth)));
}

Path RayStream::cover(int horizon) const { return source_->reveal(offset_, horizon); }

Path RayStream::at(int horizon) const {
  Path p = cover(horizon);
  p.pop_back();
  if (p.empty()) p = {start()};
  return p;
}

VertexId RayStream::start() const { return source_->reveal(offset_, -1).front(); }

DoubleRayStream::DoubleRayStream(RayStream left, RayStream right, bool edge_center)
    : left_(std::move(left)), right_(std::move(right)), edge_center_(edge_center) {
  if (!edge_center_ && left_.start() != right_.start())
    throw InputError("vertex-centered double ray needs arms with a common start");
}

Path DoubleRayStream::at(int horizon) const {
  Path l = left_.at(horizon);
  Path r = right_.at(horizon);
  Path out(l.rbegin(), l.rend());
  out.insert(out.end(), r.begin() + (edge_center_ ? 0 : 1), r.end());
  return out;
}

std::string DoubleRayStream::center_text() const {
  if (edge_center_) return EdgeId(left_.start(), right_.start()).str();
  return left_.start().str();
}

// -------------------------------------------------------------- StreamBundle

std::shared_ptr<StreamBundle> StreamBundle::make(LazyGraph g, std::vector<StreamObject> objects, int base_horizon,
                                                 VertexSet forbidden) {
  return std::make_shared<StreamBundle>(std::move(g), std::move(objects), base_horizon, std::move(forbidden));
}

StreamBundle::StreamBundle(LazyGraph g, std::vector<StreamObject> objects, int base_horizon, VertexSet forbidden)
    : g_(std::move(g)),
      forbidden_(std::move(forbidden)),
      step_(std::max(8, base_horizon / 2)),
      objects_(std::move(objects)),
      checkpoint_(std::max(0, base_horizon)) {
  object_vertices_.resize(objects_.size());
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    const auto& arms = objects_[o].arms;
    for (std::size_t a = 0; a < arms.size(); ++a) {
      if (arms[a].empty()) throw InputError("empty arm head");
      if (!is_simple(arms[a])) throw UpstreamFault("arm head is not a simple path");
      for (std::size_t i = 0; i < arms[a].size(); ++i) {
        bool shared_first = i == 0 && a > 0 && arms[a].front() == arms[0].front();
        if (!object_vertices_[o].insert(arms[a][i]).second && !shared_first)
          throw UpstreamFault("arms of one object meet at " + arms[a][i].str());
      }
      for (const auto& e : path_edges(arms[a]))
        if (!used_.insert(e).second) throw UpstreamFault("heads share edge " + e.str());
    }
  }
}

RayStream StreamBundle::arm(std::size_t object, std::size_t arm) const {
  if (object >= objects_.size() || arm >= objects_[object].arms.size()) throw InputError("no such bundle arm");
  return RayStream(std::make_shared<ArmSource>(shared_from_this(), object, arm));
}

TwoRayStream StreamBundle::two_ray(std::size_t object) const { return {arm(object, 0), arm(object, 1)}; }

DoubleRayStream StreamBundle::double_ray(std::size_t object) const {
  const auto& arms = objects_.at(object).arms;
  bool edge_center = arms.at(0).front() != arms.at(1).front();
  return DoubleRayStream(arm(object, 0), arm(object, 1), edge_center);
}

bool StreamBundle::satisfied(const Path& arm, std::size_t from, int horizon) const {
  for (std::size_t i = from + 1; i < arm.size(); ++i)
    if (g_.depth(arm[i]) > horizon) return true;
  return false;
}

Path StreamBundle::reveal(std::size_t object, std::size_t arm, std::size_t from, int horizon) const {
  std::lock_guard lock(mu_);
  const Path& path = objects_.at(object).arms.at(arm);
  std::size_t rounds = 0;
  while (!satisfied(path, from, horizon)) {
    if (++rounds > 1'000'000) throw UpstreamFault("stream extension does not progress");
    run_round();
  }
  Path out{path[from]};
  for (std::size_t i = from + 1; i < path.size(); ++i) {
    out.push_back(path[i]);
    if (g_.depth(path[i]) > horizon) break;
  }
  return out;
}

void StreamBundle::run_round() const {
  const int target = checkpoint_ + 1;
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    auto& arms = objects_[o].arms;
    std::vector<std::size_t> order(arms.size());
    for (std::size_t a = 0; a < arms.size(); ++a) order[a] = a;
    for (int attempt = 0; attempt < 2; ++attempt) {
      std::vector<Path> grown;
      bool ok = true;
      EdgeSet added;
      VertexSet added_vertices;
      for (std::size_t a : order) {
        Path ext = extend_arm(o, arms[a], target);
        if (ext.empty() && g_.depth(arms[a].back()) < target) {
          ok = false;
          break;
        }
        for (std::size_t i = 1; i < ext.size(); ++i) {
          used_.insert(EdgeId(ext[i - 1], ext[i]));
          added.insert(EdgeId(ext[i - 1], ext[i]));
        }
        for (std::size_t i = 1; i < ext.size(); ++i) {
          object_vertices_[o].insert(ext[i]);
          added_vertices.insert(ext[i]);
        }
        grown.push_back(std::move(ext));
      }
      if (ok) {
        for (std::size_t k = 0; k < order.size(); ++k)
          if (grown[k].size() > 1) arms[order[k]].insert(arms[order[k]].end(), grown[k].begin() + 1, grown[k].end());
        break;
      }
      for (const auto& e : added) used_.erase(e);
      for (const auto& v : added_vertices) object_vertices_[o].erase(v);
      if (attempt == 1) throw UpstreamFault("stream extension stalled for object " + std::to_string(o));
      std::reverse(order.begin(), order.end());
    }
  }
  checkpoint_ += step_;
}

Path StreamBundle::extend_arm(std::size_t object, const Path& arm, int target) const {
  if (g_.depth(arm.back()) >= target) return {};
  Path p = outward_search(object, arm, target);
  if (p.empty()) p = fallback_search(object, arm, target);
  return p;
}

// Depth-first search along strictly outward steps, least id first.
Path StreamBundle::outward_search(std::size_t object, const Path& arm, int target) const {
  const auto& own = object_vertices_[object];
  VertexSet dead;
  Path path{arm.back()};
  std::vector<std::size_t> cursor{0};
  while (!path.empty()) {
    const VertexId u = path.back();
    int du = g_.depth(u);
    if (du >= target) return path;
    const auto& nbrs = g_.neighbors(u);
    std::size_t& c = cursor.back();
    bool advanced = false;
    while (c < nbrs.size()) {
      const VertexId& w = nbrs[c++];
      if (dead.count(w) || own.count(w) || forbidden_.count(w)) continue;
      if (g_.depth(w) != du + 1) continue;
      if (used_.count(EdgeId(u, w))) continue;
      path.push_back(w);
      cursor.push_back(0);
      advanced = true;
      break;
    }
    if (!advanced) {
      dead.insert(u);
      path.pop_back();
      cursor.pop_back();
    }
  }
  return {};
}

// Breadth-first search inside a ball for any free route to the target depth.
Path StreamBundle::fallback_search(std::size_t object, const Path& arm, int target) const {
  const auto& own = object_vertices_[object];
  const VertexId& tip = arm.back();
  VertexMap<VertexId> parent;
  std::deque<VertexId> queue{tip};
  parent.emplace(tip, tip);
  const int limit = target + step_;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (const auto& w : g_.neighbors(u)) {
      if (parent.count(w) || own.count(w) || forbidden_.count(w)) continue;
      if (used_.count(EdgeId(u, w))) continue;
      int dw = g_.depth(w);
      if (dw > limit) continue;
      parent.emplace(w, u);
      if (dw >= target) {
        Path p{w};
        while (p.back() != tip) p.push_back(parent.at(p.back()));
        std::reverse(p.begin(), p.end());
        return p;
      }
      queue.push_back(w);
    }
  }
  return {};
}

// ------------------------------------------------------------------- helpers

std::optional<std::pair<std::size_t, std::size_t>> first_edge_conflict(const std::vector<Path>& paths) {
  std::unordered_map<EdgeId, std::size_t, EdgeIdHash> owner;
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (const auto& e : path_edges(paths[i])) {
      auto [it, inserted] = owner.emplace(e, i);
      if (!inserted && it->second != i) return std::make_pair(it->second, i);
    }
  return std::nullopt;
}

bool is_simple(const Path& p) {
  VertexSet seen;
  for (const auto& v : p)
    if (!seen.insert(v).second) return false;
  return true;
}

bool is_walk_in(const LazyGraph& g, const Path& p) {
  for (std::size_t i = 1; i < p.size(); ++i) {
    const auto& n = g.neighbors(p[i - 1]);
    if (!std::binary_search(n.begin(), n.end(), p[i])) return false;
  }
  return true;
}

}  // namespace edr
