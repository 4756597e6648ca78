#include "edr/pipeline.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "edr/errors.hpp"
#include "edr/rays.hpp"

namespace edr {

std::string CaseTag::text() const {
  auto list = [&] {
    std::string out;
    for (std::size_t i = 0; i < ends.size(); ++i) out += (i ? "," : "") + std::to_string(ends[i]);
    return out;
  };
  switch (kind) {
    case CaseKind::InfinitelyManyEnds:
      return "InfinitelyManyEnds";
    case CaseKind::ThickEnd:
      return "ThickEnd(" + list() + ")";
    case CaseKind::TwoThinEnds:
      return "TwoThinEnds(" + list() + ")";
    case CaseKind::OneThinEnd:
      return "OneThinEnd(" + list() + ")";
  }
  return "?";
}

namespace {

constexpr std::size_t kAuditBallBudget = 50'000;

int audit_radius(const LazyGraph& g, int horizon) {
  int cap = std::min(horizon, 128);
  if (cap < 8) return std::max(cap, 1);
  int r = 8;
  std::size_t prev = g.ball(4)->vertex_count();
  while (r * 2 <= cap) {
    std::size_t size = g.ball(r)->vertex_count();
    double ratio = static_cast<double>(size) / static_cast<double>(std::max<std::size_t>(prev, 1));
    if (static_cast<double>(size) * ratio * ratio > static_cast<double>(kAuditBallBudget)) break;
    prev = size;
    r *= 2;
  }
  return r;
}

// Component label per vertex of the ball after removing depth <= r; labels of
// components reaching the ball boundary are returned in first-seen order.
struct Shell {
  std::shared_ptr<const FiniteGraph> ball;
  std::vector<int> label;
  std::vector<int> unbounded;
};

Shell shell(const LazyGraph& g, int outer, int inner) {
  Shell s;
  s.ball = g.ball(outer);
  const FiniteGraph& fg = *s.ball;
  std::vector<char> removed(fg.vertex_count(), 0);
  for (std::size_t i = 0; i < fg.vertex_count(); ++i) removed[i] = fg.depth(static_cast<int>(i)) <= inner;
  int count = component_labels(fg, removed, s.label);
  std::vector<char> deep(static_cast<std::size_t>(count), 0);
  for (std::size_t i = 0; i < fg.vertex_count(); ++i)
    if (s.label[i] >= 0 && fg.depth(static_cast<int>(i)) >= outer && !deep[static_cast<std::size_t>(s.label[i])]) {
      deep[static_cast<std::size_t>(s.label[i])] = 1;
      s.unbounded.push_back(s.label[i]);
    }
  return s;
}

std::optional<int> label_of(const Shell& s, const VertexId& v) {
  auto i = s.ball->index_of(v);
  if (!i) return std::nullopt;
  int l = s.label[static_cast<std::size_t>(*i)];
  if (std::find(s.unbounded.begin(), s.unbounded.end(), l) == s.unbounded.end()) return std::nullopt;
  return l;
}

// End pair most often joined by the family's double rays.
CaseTag end_pair_from_family(const LazyGraph& g, const FamilyGenerator& family, int radius) {
  Shell s = shell(g, radius, radius / 2);
  std::map<int, int> end_of_label;
  for (const auto& e : g.ends()) {
    if (e.witness_rays.empty()) throw MetadataInconsistency("end " + std::to_string(e.id) + " has no witness ray");
    auto last = RayStream::from_sequence(g, e.witness_rays[0]).at(radius).back();
    auto l = label_of(s, last);
    if (!l)
      throw MetadataInconsistency("witness ray of end " + std::to_string(e.id) + " does not reach radius " +
                                  std::to_string(radius));
    if (!end_of_label.emplace(*l, e.id).second)
      throw MetadataInconsistency("two declared ends share one unbounded component");
  }
  std::map<std::pair<int, int>, std::size_t> votes;
  for (const auto& d : family.produce(std::min<std::size_t>(family.max_count, 64))) {
    auto a = label_of(s, d.left().at(radius).back());
    auto b = label_of(s, d.right().at(radius).back());
    if (!a || !b) continue;
    int x = end_of_label.at(*a);
    int y = end_of_label.at(*b);
    ++votes[{std::min(x, y), std::max(x, y)}];
  }
  if (votes.empty()) throw NeedsLargerHorizon("no family member reaches two ends", 0, radius * 2);
  auto best = votes.begin();
  for (auto it = votes.begin(); it != votes.end(); ++it)
    if (it->second > best->second) best = it;
  auto [x, y] = best->first;
  if (x == y) return {CaseKind::OneThinEnd, {x}};
  return {CaseKind::TwoThinEnds, {x, y}};
}

}  // namespace

std::vector<std::size_t> unbounded_component_counts(const LazyGraph& g, int horizon) {
  int R = audit_radius(g, horizon);
  return {shell(g, R, R / 4).unbounded.size(), shell(g, R, R / 2).unbounded.size()};
}

CaseTag classify(const LazyGraph& g, int horizon, const FamilyGenerator* family) {
  auto counts = unbounded_component_counts(g, horizon);
  auto shown =
      "truncations show " + std::to_string(counts[0]) + " then " + std::to_string(counts[1]) + " unbounded components";
  if (g.infinitely_many_ends()) {
    if (counts[0] < 3 || counts[1] <= counts[0])
      throw MetadataInconsistency("infinitely many ends declared but " + shown);
    return {CaseKind::InfinitelyManyEnds, {}};
  }
  const auto& ends = g.ends();
  if (ends.empty()) throw MetadataInconsistency("no ends declared");
  if (counts[0] != ends.size() || counts[1] != ends.size())
    throw MetadataInconsistency(std::to_string(ends.size()) + " ends declared but " + shown);
  for (const auto& e : ends)
    if (!e.thin())
      throw UnsupportedCase("end " + std::to_string(e.id) +
                            " is thick, so the graph has a half-grid minor; that case is out of scope");
  if (ends.size() == 1) return {CaseKind::OneThinEnd, {ends[0].id}};
  if (family) return end_pair_from_family(g, *family, audit_radius(g, horizon));
  if (ends.size() == 2) return {CaseKind::TwoThinEnds, {ends[0].id, ends[1].id}};
  throw InputError(std::to_string(ends.size()) + " thin ends; a double-ray family is needed to choose the end pair");
}

std::vector<std::string> audit_double_rays(const LazyGraph& g, const std::vector<DoubleRayStream>& rays, int horizon) {
  std::vector<std::string> out;
  std::vector<Path> paths;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    paths.push_back(rays[i].at(horizon));
    if (!is_simple(paths.back())) out.push_back("double ray " + std::to_string(i) + " repeats a vertex");
    if (!is_walk_in(g, paths.back())) out.push_back("double ray " + std::to_string(i) + " leaves the graph");
  }
  if (auto c = first_edge_conflict(paths))
    out.push_back("double rays " + std::to_string(c->first) + " and " + std::to_string(c->second) + " share an edge");
  return out;
}

// ---------------------------------------------------------------- tree case

namespace {

// Rooted spanning tree of a ball with edges removed by peeling. Direction
// counts only consider branches that still reach the ball boundary.
class PeelForest {
 public:
  explicit PeelForest(const FiniteGraph& fg) : fg_(fg) {
    const std::size_t n = fg.vertex_count();
    parent_.assign(n, -1);
    children_.assign(n, {});
    cut_.assign(n, 0);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (fg.depth(a) != fg.depth(b)) return fg.depth(a) < fg.depth(b);
      return fg.id(a) < fg.id(b);
    });
    for (int v : order_) {
      for (int u : fg.adjacent(v))
        if (fg.depth(u) == fg.depth(v) - 1 && (parent_[idx(v)] < 0 || fg.id(u) < fg.id(parent_[idx(v)])))
          parent_[idx(v)] = u;
      if (parent_[idx(v)] >= 0) children_[idx(parent_[idx(v)])].push_back(v);
    }
    for (auto& c : children_) std::sort(c.begin(), c.end(), [&](int a, int b) { return fg.id(a) < fg.id(b); });
    update();
  }

  bool spanning() const { return fg_.edge_count() + 1 != fg_.vertex_count(); }

  std::size_t directions(int v) const {
    std::size_t d = deep_children(v);
    if (parent_up(v)) ++d;
    return d;
  }

  // First vertex in BFS order with three deep directions.
  std::optional<int> branch_vertex() const {
    for (int v : order_)
      if (directions(v) >= 3) return v;
    return std::nullopt;
  }

  // Routes a path through two branches at v, leaving the parent side (or the
  // last branch) as the end-rich remainder. Returns the two arms.
  std::pair<Path, Path> peel(int v) {
    std::vector<int> dirs;
    for (int c : children_[idx(v)])
      if (!cut_[idx(c)] && down_[idx(c)]) dirs.push_back(c);
    if (!parent_up(v)) dirs.pop_back();  // the last branch stays behind
    auto arm = [&](int first) {
      Path p{fg_.id(v)};
      int cur = first;
      cut_[idx(cur)] = 1;
      p.push_back(fg_.id(cur));
      while (fg_.depth(cur) < fg_.radius()) {
        int next = -1;
        for (int c : children_[idx(cur)])
          if (!cut_[idx(c)] && down_[idx(c)]) {
            next = c;
            break;
          }
        if (next < 0) throw UpstreamFault("deep branch at " + fg_.id(cur).str() + " has no deep child");
        cut_[idx(next)] = 1;
        p.push_back(fg_.id(next));
        cur = next;
      }
      return p;
    };
    auto a = arm(dirs[0]);
    auto b = arm(dirs[1]);
    update();
    return {a, b};
  }

  // Largest direction count in the residual component of v.
  std::size_t best_in_component(int v) const {
    std::vector<char> seen(fg_.vertex_count(), 0);
    std::vector<int> stack{v};
    seen[idx(v)] = 1;
    std::size_t best = 0;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      best = std::max(best, directions(x));
      auto visit = [&](int y) {
        if (!seen[idx(y)]) {
          seen[idx(y)] = 1;
          stack.push_back(y);
        }
      };
      if (parent_[idx(x)] >= 0 && !cut_[idx(x)]) visit(parent_[idx(x)]);
      for (int c : children_[idx(x)])
        if (!cut_[idx(c)]) visit(c);
    }
    return best;
  }

 private:
  static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

  std::size_t deep_children(int v) const {
    std::size_t d = 0;
    for (int c : children_[idx(v)])
      if (!cut_[idx(c)] && down_[idx(c)]) ++d;
    return d;
  }
  bool parent_up(int v) const { return parent_[idx(v)] >= 0 && !cut_[idx(v)] && up_[idx(v)]; }

  void update() {
    const std::size_t n = fg_.vertex_count();
    down_.assign(n, 0);
    up_.assign(n, 0);
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      int v = *it;
      if (fg_.depth(v) >= fg_.radius()) down_[idx(v)] = 1;
      if (down_[idx(v)] && parent_[idx(v)] >= 0 && !cut_[idx(v)]) down_[idx(parent_[idx(v)])] = 1;
    }
    for (int v : order_) {
      int p = parent_[idx(v)];
      if (p < 0 || cut_[idx(v)]) continue;
      std::size_t siblings = deep_children(p) - (down_[idx(v)] ? 1 : 0);
      up_[idx(v)] = siblings > 0 || parent_up(p);
    }
  }

  const FiniteGraph& fg_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> order_;
  std::vector<char> cut_;
  std::vector<char> down_;
  std::vector<char> up_;
};

}  // namespace

ExtractionResult tree_double_rays(const LazyGraph& t, std::size_t m, int horizon) {
  if (!t.infinitely_many_ends()) throw InputError("tree case needs a graph with infinitely many ends");
  ExtractionResult res;
  res.tag = {CaseKind::InfinitelyManyEnds, {}};
  res.horizon = horizon;
  if (m == 0) return res;
  std::size_t achieved = 0;
  int last = horizon;
  for (int radius : working_horizons(8, horizon)) {
    last = radius;
    auto ball = t.ball(radius);
    PeelForest forest(*ball);
    std::vector<StreamObject> objects;
    std::vector<std::size_t> counts;
    bool ok = true;
    for (std::size_t k = 0; k < m; ++k) {
      auto v = forest.branch_vertex();
      if (!v) {
        ok = false;
        break;
      }
      auto [a, b] = forest.peel(*v);
      std::size_t left = forest.best_in_component(*v);
      counts.push_back(left);
      res.trace.add("tree", "peel " + std::to_string(k) + " at " + ball->id(*v).str() + ", component keeps " +
                                std::to_string(left) + " deep branches");
      objects.push_back({{std::move(a), std::move(b)}});
      if (left < 3) {
        ok = false;
        break;
      }
    }
    achieved = std::max(achieved, objects.size());
    if (!ok) {
      res.trace.add("tree", "radius " + std::to_string(radius) + " ran out of branch vertices after " +
                                std::to_string(objects.size()) + " peels");
      continue;
    }
    if (forest.spanning()) res.audit.push_back("peeled a BFS spanning tree of a graph with cycles");
    auto bundle = StreamBundle::make(t, std::move(objects), radius);
    for (std::size_t i = 0; i < m; ++i) res.double_rays.push_back(bundle->double_ray(i));
    res.branch_counts = std::move(counts);
    res.horizon_used = radius;
    auto problems = audit_double_rays(t, res.double_rays, horizon);
    if (!problems.empty()) throw UpstreamFault("tree case audit: " + problems.front());
    return res;
  }
  throw NeedsLargerHorizon("tree peeling reached " + std::to_string(achieved) + " of " + std::to_string(m), achieved,
                           last * 2);
}

// ----------------------------------------------------------- two-ended case

namespace {

constexpr const char* kSubdivided1 = "~1:";
constexpr const char* kSubdivided2 = "~2:";

bool subdivision_vertex(const VertexId& v) { return !v.str().empty() && v.str()[0] == '~'; }

VertexId midpoint(const char* tag, const EdgeId& e) { return VertexId(std::string(tag) + e.str()); }

Path subdivide(const Path& p, const char* tag) {
  Path out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out.push_back(midpoint(tag, EdgeId(p[i - 1], p[i])));
    out.push_back(p[i]);
  }
  return out;
}

std::vector<VertexId> prefix_vertices(const LazyGraph& g, const EndDecl& e, int radius) {
  if (e.witness_rays.empty()) throw MetadataInconsistency("end " + std::to_string(e.id) + " has no witness ray");
  return RayStream::from_sequence(g, e.witness_rays[0]).at(radius);
}

// The requested number of edge-disjoint paths running from deep on one side
// of the separator to deep on the other.
std::vector<Path> two_ended_heads(const LazyGraph& g, const EndDecl& e1, const EndDecl& e2,
                                  const FamilyGenerator& family, std::size_t m, int radius, TraceLog& trace) {
  auto ball = g.ball(radius);
  const FiniteGraph& fg = *ball;
  auto w1 = prefix_vertices(g, e1, radius);
  auto w2 = prefix_vertices(g, e2, radius);
  std::set<VertexId> in2(w2.begin(), w2.end());
  std::set<VertexId> in1(w1.begin(), w1.end());
  std::vector<VertexId> sources, sinks;
  for (const auto& v : w1)
    if (!in2.count(v)) sources.push_back(v);
  for (const auto& v : w2)
    if (!in1.count(v)) sinks.push_back(v);
  auto cut = min_vertex_cut(fg, sources, sinks);
  if (!cut.connected) throw MetadataInconsistency("the two ends lie in different components of the ball");
  VertexSet separator(cut.cut.begin(), cut.cut.end());
  std::vector<int> label;
  std::vector<char> removed(fg.vertex_count(), 0);
  for (const auto& v : separator) removed[static_cast<std::size_t>(fg.index(v))] = 1;
  component_labels(fg, removed, label);
  auto label_at = [&](const VertexId& v) { return label[static_cast<std::size_t>(fg.index(v))]; };
  int side_one = label_at(w1.back());
  int side_two = label_at(w2.back());
  if (side_one < 0 || side_two < 0 || side_one == side_two)
    throw MetadataInconsistency("separator does not split the two ends");
  trace.add("two-ended",
            "separator of order " + std::to_string(separator.size()) + " at radius " + std::to_string(radius));

  // Common last vertices in the separator on each side, by pigeonhole over the family.
  std::size_t n = std::min(family.max_count, separator.size() * separator.size() * m);
  std::map<std::pair<VertexId, VertexId>, std::size_t> votes;
  for (const auto& d : family.produce(n)) {
    Path p = d.at(radius);
    if (p.size() < 2) continue;
    int front = label_at(p.front());
    int back = label_at(p.back());
    if (front == side_one && back == side_two)
      std::reverse(p.begin(), p.end());
    else if (!(front == side_two && back == side_one))
      continue;
    std::optional<VertexId> v1, v2;
    for (const auto& v : p)
      if (separator.count(v)) {
        if (!v2) v2 = v;
        v1 = v;
      }
    if (v1) ++votes[{*v1, *v2}];
  }
  if (votes.empty())
    throw NeedsLargerHorizon("no family member crosses between the ends inside the ball", 0, radius * 2);
  auto best = votes.begin();
  for (auto it = votes.begin(); it != votes.end(); ++it)
    if (it->second > best->second) best = it;
  const auto [v1, v2] = best->first;
  trace.add("two-ended", "common last vertices " + v1.str() + " and " + v2.str() + " (" + std::to_string(best->second) +
                             " of " + std::to_string(n) + ")");

  // Edge-disjoint heads from each vertex into its side, pairwise sharing many vertices.
  auto side_heads = [&](const VertexId& v, int c) {
    VertexSet keep{v};
    for (std::size_t i = 0; i < fg.vertex_count(); ++i)
      if (label[i] == c) keep.insert(fg.id(static_cast<int>(i)));
    auto heads = edge_disjoint_ray_heads(fg.induced(keep), v, 3 * m);
    auto clique = mutual_intersection_clique(heads, std::max<std::size_t>(1, static_cast<std::size_t>(radius / 10)));
    std::vector<Path> out;
    for (auto i : clique) out.push_back(heads[i]);
    return out;
  };
  auto r1 = side_heads(v1, side_one);
  auto r2 = side_heads(v2, side_two);
  trace.add("two-ended", std::to_string(r1.size()) + " and " + std::to_string(r2.size()) + " heads on the two sides");
  if (r1.size() < m || r2.size() < m)
    throw NeedsLargerHorizon("too few rays from the common last vertices", std::min(r1.size(), r2.size()), radius * 2);

  // Subdivide the edges of both head systems and route a flow between them.
  EdgeSet e1s, e2s;
  for (const auto& p : r1)
    for (const auto& e : path_edges(p)) e1s.insert(e);
  for (const auto& p : r2)
    for (const auto& e : path_edges(p)) e2s.insert(e);
  FiniteGraph h(radius);
  const VertexId src("~source"), snk("~sink");
  h.add_vertex(src);
  h.add_vertex(snk);
  for (const auto& v : fg.vertices()) h.add_vertex(v);
  VertexSet x1, x2;
  for (const auto& e : fg.edges()) {
    const char* tag = e1s.count(e) ? kSubdivided1 : e2s.count(e) ? kSubdivided2 : nullptr;
    if (!tag) {
      h.add_edge(e.first(), e.second());
      continue;
    }
    auto x = midpoint(tag, e);
    h.add_edge(e.first(), x);
    h.add_edge(x, e.second());
    if (tag == kSubdivided1) {
      x1.insert(x);
      h.add_edge(src, x);
    } else {
      x2.insert(x);
      h.add_edge(x, snk);
    }
  }
  std::vector<Path> links;
  for (auto p : max_edge_disjoint_paths(h, src, snk)) {
    p = Path(p.begin() + 1, p.end() - 1);
    std::size_t from = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (x1.count(p[i])) from = i;
    std::size_t to = from;
    while (!x2.count(p[to])) ++to;
    links.emplace_back(p.begin() + static_cast<std::ptrdiff_t>(from), p.begin() + static_cast<std::ptrdiff_t>(to) + 1);
  }
  trace.add("two-ended", std::to_string(links.size()) + " linking paths between the subdivided systems");

  std::vector<Path> hosts1, hosts2;
  for (const auto& p : r1) hosts1.push_back(subdivide(p, kSubdivided1));
  for (const auto& p : r2) hosts2.push_back(subdivide(p, kSubdivided2));
  std::vector<VertexId> y1;
  for (const auto& l : links) y1.push_back(l.front());
  auto heads1 = ray_heads_from_starts(hosts1, y1, links.size());
  std::map<VertexId, Path> by_start1;
  for (auto& p : heads1) by_start1.emplace(p.front(), std::move(p));
  std::vector<VertexId> y2;
  for (const auto& l : links)
    if (by_start1.count(l.front())) y2.push_back(l.back());
  auto heads2 = ray_heads_from_starts(hosts2, y2, y2.size());
  std::map<VertexId, Path> by_start2;
  for (auto& p : heads2) by_start2.emplace(p.front(), std::move(p));

  // Stitch, map back to the original edges and keep an edge-disjoint selection.
  std::vector<Path> out;
  EdgeSet used;
  for (const auto& l : links) {
    auto a = by_start1.find(l.front());
    auto b = by_start2.find(l.back());
    if (a == by_start1.end() || b == by_start2.end()) continue;
    Path walk(a->second.rbegin(), a->second.rend());
    walk.insert(walk.end(), l.begin() + 1, l.end());
    walk.insert(walk.end(), b->second.begin() + 1, b->second.end());
    Path plain;
    for (const auto& v : walk)
      if (!subdivision_vertex(v)) plain.push_back(v);
    plain = loop_erase(plain);
    auto edges = path_edges(plain);
    if (std::any_of(edges.begin(), edges.end(), [&](const EdgeId& e) { return used.count(e) != 0; })) continue;
    for (const auto& e : edges) used.insert(e);
    out.push_back(std::move(plain));
    if (out.size() == m) break;
  }
  trace.add("two-ended", std::to_string(out.size()) + " stitched edge-disjoint paths");
  if (out.size() < m) throw NeedsLargerHorizon("stitched fewer paths than requested", out.size(), radius * 2);
  return out;
}

}  // namespace

ExtractionResult two_ended_double_rays(const LazyGraph& g, int end1, int end2, const FamilyGenerator& family,
                                       std::size_t m, int horizon) {
  ExtractionResult res;
  res.tag = {CaseKind::TwoThinEnds, {end1, end2}};
  res.horizon = horizon;
  if (m == 0) return res;
  const auto& e1 = g.end(end1);
  const auto& e2 = g.end(end2);
  std::size_t achieved = 0;
  int last = horizon;
  for (int radius : working_horizons(16, horizon)) {
    last = radius;
    std::vector<Path> heads;
    try {
      heads = two_ended_heads(g, e1, e2, family, m, radius, res.trace);
    } catch (const NeedsLargerHorizon& e) {
      achieved = std::max(achieved, e.achieved());
      res.trace.add("two-ended", "radius " + std::to_string(radius) + ": " + e.what());
      continue;
    }
    std::vector<StreamObject> objects;
    for (const auto& p : heads) {
      std::size_t c = 0;
      for (std::size_t i = 1; i < p.size(); ++i)
        if (g.depth(p[i]) < g.depth(p[c])) c = i;
      Path left(p.rend() - static_cast<std::ptrdiff_t>(c) - 1, p.rend());
      Path right(p.begin() + static_cast<std::ptrdiff_t>(c), p.end());
      objects.push_back({{std::move(left), std::move(right)}});
    }
    auto bundle = StreamBundle::make(g, std::move(objects), radius);
    for (std::size_t i = 0; i < m; ++i) res.double_rays.push_back(bundle->double_ray(i));
    res.horizon_used = radius;
    auto problems = audit_double_rays(g, res.double_rays, horizon);
    if (!problems.empty()) throw UpstreamFault("two-ended audit: " + problems.front());
    return res;
  }
  throw NeedsLargerHorizon("two-ended extraction reached " + std::to_string(achieved) + " of " + std::to_string(m),
                           achieved, last * 2);
}

// ----------------------------------------------------------- one-ended case

ExtractionResult one_ended_double_rays(const LazyGraph& g, int end, const FamilyGenerator& family, std::size_t m,
                                       int horizon) {
  ExtractionResult res;
  res.tag = {CaseKind::OneThinEnd, {end}};
  res.horizon = horizon;
  if (m == 0) return res;
  std::size_t achieved = 0;
  int last = horizon;
  bool hull_done = false;
  for (int radius : working_horizons(16, horizon)) {
    last = radius;
    try {
      if (!hull_done) {
        std::vector<RayStream> rays;
        for (const auto& d : family.produce(std::min<std::size_t>(family.max_count, 3))) {
          auto t = to_two_ray(d, radius);
          rays.push_back(t.first);
          rays.push_back(t.second);
        }
        auto hull = locally_finite_hull(g, rays, radius);
        res.audit.push_back("hull of " + std::to_string(rays.size()) + " family rays: max degree " +
                            std::to_string(hull.max_degree) + ", " + std::to_string(hull.paths_added) +
                            " linking paths");
        hull_done = true;
      }
      auto seq = capture_end_window(g, end, radius);
      res.trace.add("capture", std::to_string(seq.seps.size()) + " separations of order " + std::to_string(seq.k) +
                                   " at radius " + std::to_string(radius));
      auto run = two_rays_stream(family, seq, m, radius, &res.trace);
      auto plan = connectors_for_two_rays(run.rays, seq, radius, &res.trace);
      auto dr = two_rays_to_double_rays(plan, m, radius, &res.trace);
      auto report = verify_capture(seq, g, radius);
      if (!report.ok()) throw UpstreamFault("capturing window fails " + report.first_failure());
      res.double_rays = std::move(dr.rays);
      for (const auto& [ray, connector] : dr.pairing) res.connector_regions.push_back(plan.regions.at(connector));
      res.horizon_used = radius;
      auto problems = audit_double_rays(g, res.double_rays, horizon);
      if (!problems.empty()) throw UpstreamFault("one-ended audit: " + problems.front());
      return res;
    } catch (const NeedsLargerHorizon& e) {
      achieved = std::max(achieved, e.achieved());
      res.trace.add("one-ended", "radius " + std::to_string(radius) + ": " + e.what());
    }
  }
  throw NeedsLargerHorizon("one-ended extraction reached " + std::to_string(achieved) + " of " + std::to_string(m),
                           achieved, last * 2);
}

ExtractionResult extract_double_rays(const LazyGraph& g, const std::optional<FamilyGenerator>& family, std::size_t m,
                                     int horizon) {
  if (horizon < 1) throw InputError("horizon must be at least 1");
  auto tag = classify(g, horizon, family ? &*family : nullptr);
  if (m == 0) {
    ExtractionResult res;
    res.tag = tag;
    res.horizon = horizon;
    return res;
  }
  auto need_family = [&]() -> const FamilyGenerator& {
    if (!family) throw InputError("the " + tag.text() + " case needs a family of edge-disjoint double rays");
    return *family;
  };
  switch (tag.kind) {
    case CaseKind::InfinitelyManyEnds:
      return tree_double_rays(g, m, horizon);
    case CaseKind::TwoThinEnds:
      return two_ended_double_rays(g, tag.ends[0], tag.ends[1], need_family(), m, horizon);
    case CaseKind::OneThinEnd:
      return one_ended_double_rays(g, tag.ends[0], need_family(), m, horizon);
    case CaseKind::ThickEnd:
      break;
  }
  throw UnsupportedCase("thick ends are out of scope");
}

}  // namespace edr
