#include "edr/separations.hpp"

#include <algorithm>
#include <deque>

#include "edr/errors.hpp"

namespace edr {

Separation::Separation(std::vector<VertexId> separator, std::shared_ptr<const FiniteGraph> truncation)
    : separator_(std::move(separator)), truncation_(std::move(truncation)) {
  std::sort(separator_.begin(), separator_.end());
  if (std::adjacent_find(separator_.begin(), separator_.end()) != separator_.end())
    throw InputError("separator lists a vertex twice");
  const FiniteGraph& fg = *truncation_;
  auto sides = std::make_shared<Sides>();
  std::vector<char> removed(fg.vertex_count(), 0);
  for (const auto& v : separator_) {
    auto i = fg.index_of(v);
    if (!i) throw InputError("separator vertex outside the truncation: " + v.str());
    removed[static_cast<std::size_t>(*i)] = 1;
    sides->x.insert(v);
  }
  std::vector<int> label;
  int count = component_labels(fg, removed, label);
  std::vector<char> deep(static_cast<std::size_t>(count), 0);
  for (std::size_t i = 0; i < fg.vertex_count(); ++i)
    if (label[i] >= 0 && fg.depth(static_cast<int>(i)) >= fg.radius()) deep[static_cast<std::size_t>(label[i])] = 1;
  sides->by_index.assign(fg.vertex_count(), static_cast<char>(Side::B));
  for (std::size_t i = 0; i < fg.vertex_count(); ++i) {
    if (removed[i]) {
      sides->by_index[i] = static_cast<char>(Side::X);
    } else if (label[i] >= 0 && !deep[static_cast<std::size_t>(label[i])]) {
      sides->a.insert(fg.id(static_cast<int>(i)));
      sides->by_index[i] = static_cast<char>(Side::A);
    }
  }
  sides_ = std::move(sides);
}

Side Separation::side_of(const VertexId& v) const {
  if (sides_->x.count(v)) return Side::X;
  return sides_->a.count(v) ? Side::A : Side::B;
}

Side Separation::edge_side(const VertexId& a, const VertexId& b) const {
  Side sa = side_of(a);
  Side sb = side_of(b);
  if (sa == Side::A || sb == Side::A) return Side::A;
  return Side::B;
}

// ---------------------------------------------------------------- capture_end

namespace {

VertexSet bfs_tree_connecting(const FiniteGraph& fg, const Separation& sep) {
  const auto& xs = sep.separator();
  VertexSet tree;
  if (xs.empty()) return tree;
  tree.insert(xs.front());
  VertexMap<VertexId> parent;
  std::deque<VertexId> queue{xs.front()};
  parent.emplace(xs.front(), xs.front());
  std::size_t found = 1;
  while (!queue.empty() && found < xs.size()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (int wi : fg.adjacent(fg.index(u))) {
      const VertexId& w = fg.id(wi);
      if (parent.count(w) || !sep.in_b(w) || sep.edge_side(u, w) != Side::B) continue;
      parent.emplace(w, u);
      if (sep.in_x(w)) {
        ++found;
        for (VertexId x = w; !tree.count(x); x = parent.at(x)) tree.insert(x);
      }
      queue.push_back(w);
    }
  }
  return tree;
}

}  // namespace

CapturingSequence capture_end_window(const LazyGraph& g, int end_id, int horizon, std::size_t limit) {
  const EndDecl& end = g.end(end_id);
  if (!end.thin()) throw InputError("end " + std::to_string(end_id) + " is thick; only thin ends can be captured");
  if (g.infinitely_many_ends() || g.ends().size() != 1)
    throw InputError("capturing needs a graph whose only end is the captured one");
  CapturingSequence seq;
  seq.end_id = end_id;
  seq.k = static_cast<std::size_t>(*end.vertex_degree);
  auto trunc = g.ball(horizon);
  const FiniteGraph& fg = *trunc;
  const std::size_t n = fg.vertex_count();
  std::vector<int> boundary;
  std::vector<char> protect(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (fg.depth(static_cast<int>(i)) == horizon) {
      boundary.push_back(static_cast<int>(i));
      protect[i] = 1;
    }
  const auto bfs = g.bfs_order(horizon);

  // Consumed vertices become protected sources.
  std::vector<int> source;
  std::vector<char> consumed(n, 0);
  bool touches_boundary = false;
  auto consume = [&](int i) {
    if (fg.depth(i) >= horizon) touches_boundary = true;
    auto& c = consumed[static_cast<std::size_t>(i)];
    if (c) return;
    c = 1;
    protect[static_cast<std::size_t>(i)] = 1;
    source.push_back(i);
  };
  auto consume_id = [&](const VertexId& v) {
    if (auto i = fg.index_of(v))
      consume(*i);
    else
      touches_boundary = true;
  };
  consume_id(g.root());
  for (const auto& w : end.witness_rays) consume_id(w(0));
  for (std::size_t i = 1; seq.seps.size() < limit; ++i) {
    if (i <= bfs.size()) consume_id(bfs[i - 1]);
    if (touches_boundary || boundary.empty()) break;
    IndexCut cut;
    try {
      cut = min_vertex_cut_protected(fg, source, boundary, protect);
    } catch (const InputError&) {
      break;
    }
    if (!cut.connected) throw MetadataInconsistency("consumed region is already cut off from the boundary");
    // Cuts hugging the boundary are truncation artifacts, whatever their order.
    int deepest = 0;
    for (int x : cut.cut) deepest = std::max(deepest, fg.depth(x));
    if (deepest + 2 > horizon) break;
    if (cut.cut.size() != seq.k)
      throw MetadataInconsistency("minimum cut toward end " + std::to_string(end_id) + " has order " +
                                  std::to_string(cut.cut.size()) + ", declared vertex-degree is " +
                                  std::to_string(seq.k));
    std::vector<VertexId> separator;
    for (int x : cut.cut) separator.push_back(fg.id(x));
    Separation sep(std::move(separator), trunc);
    for (std::size_t v = 0; v < n; ++v)
      if (sep.side_at(static_cast<int>(v)) != Side::B) consume(static_cast<int>(v));
    for (const auto& t : bfs_tree_connecting(fg, sep)) consume_id(t);
    seq.seps.push_back(std::move(sep));
  }
  return seq;
}

CapturingSequence capture_end(const LazyGraph& g, int end_id, std::size_t count, int horizon) {
  if (horizon < 0) throw InputError("horizon must be non-negative");
  auto seq = capture_end_window(g, end_id, horizon, count);
  if (seq.seps.size() < count) {
    std::size_t got = seq.seps.size();
    int suggested = got == 0 ? 2 * horizon + 8
                             : static_cast<int>(static_cast<double>(horizon) * static_cast<double>(count + 1) /
                                                static_cast<double>(got)) +
                                   4;
    throw NeedsLargerHorizon("horizon " + std::to_string(horizon) + " fits " + std::to_string(got) + " of " +
                                 std::to_string(count) + " separations",
                             got, suggested);
  }
  return seq;
}

// -------------------------------------------------------------- verification

bool CaptureReport::ok() const {
  return std::all_of(bullets.begin(), bullets.end(), [](const BulletResult& b) { return b.pass; });
}

std::string CaptureReport::first_failure() const {
  for (const auto& b : bullets)
    if (!b.pass) return b.name;
  return {};
}

FiniteGraph region_between(const Separation& earlier, const Separation& later) {
  const FiniteGraph& fg = earlier.truncation();
  FiniteGraph out;
  for (std::size_t i = 0; i < fg.vertex_count(); ++i) {
    const VertexId& v = fg.id(static_cast<int>(i));
    if (later.in_a(v) && earlier.in_b(v)) out.add_vertex(v);
  }
  for (std::size_t i = 0; i < fg.vertex_count(); ++i) {
    const VertexId& v = fg.id(static_cast<int>(i));
    if (!out.has_vertex(v)) continue;
    for (int j : fg.adjacent(static_cast<int>(i))) {
      const VertexId& w = fg.id(j);
      if (v < w && out.has_vertex(w) && later.edge_side(v, w) == Side::A && earlier.edge_side(v, w) == Side::B)
        out.add_edge(v, w);
    }
  }
  return out;
}

namespace {

// Connectivity of the region between two separations of one truncation,
// with the same vertex and edge rule as region_between.
bool region_connected(const Separation& earlier, const Separation& later) {
  const FiniteGraph& fg = earlier.truncation();
  const int n = static_cast<int>(fg.vertex_count());
  auto inside = [&](int v) { return later.side_at(v) != Side::B && earlier.side_at(v) != Side::A; };
  std::vector<char> seen(fg.vertex_count(), 0);
  std::vector<int> stack;
  int members = 0, reached = 0;
  for (int v = 0; v < n; ++v) {
    if (!inside(v)) continue;
    if (members++ == 0) {
      seen[static_cast<std::size_t>(v)] = 1;
      stack.push_back(v);
      reached = 1;
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : fg.adjacent(v)) {
      if (seen[static_cast<std::size_t>(w)] || !inside(w)) continue;
      if (later.edge_side_at(v, w) != Side::A || earlier.edge_side_at(v, w) != Side::B) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == members;
}

}  // namespace

CaptureReport verify_capture(const CapturingSequence& seq, const LazyGraph& g, int horizon) {
  CaptureReport report;
  auto trunc = g.ball(horizon);
  const FiniteGraph& fg = *trunc;
  std::deque<Separation> rebuilt;
  std::vector<const Separation*> seps;
  BulletResult disjoint{kBulletDisjoint, true, ""};
  BulletResult connected{kBulletConnected, true, ""};
  BulletResult exhaustion{kBulletExhaustion, true, ""};
  BulletResult order{kBulletOrder, true, ""};
  BulletResult witness{kBulletWitness, true, ""};
  auto fail = [](BulletResult& b, const std::string& why) {
    if (b.pass) b.witness = why;
    b.pass = false;
  };
  for (std::size_t i = 0; i < seq.seps.size(); ++i) {
    // Separations already cut on this truncation are reused as they are.
    if (seq.seps[i].truncation_ptr() == trunc) {
      seps.push_back(&seq.seps[i]);
      continue;
    }
    try {
      seps.push_back(&rebuilt.emplace_back(seq.seps[i].separator(), trunc));
    } catch (const InputError& e) {
      fail(exhaustion, "separation " + std::to_string(i + 1) + ": " + e.what());
      report.bullets = {disjoint, connected, exhaustion, order, witness};
      return report;
    }
  }
  std::size_t k = seq.k;
  try {
    const EndDecl& end = g.end(seq.end_id);
    if (end.thin()) k = static_cast<std::size_t>(*end.vertex_degree);
  } catch (const InputError&) {
  }
  // Balls list their vertices in BFS order.
  for (std::size_t i = 0; i < seps.size(); ++i) {
    const std::string tag = "separation " + std::to_string(i + 1);
    if (seps[i]->order() != k || seq.k != k)
      fail(order, tag + " has order " + std::to_string(seps[i]->order()) + ", expected " + std::to_string(k));
    if (i < fg.vertex_count() && seps[i]->side_at(static_cast<int>(i)) == Side::B)
      fail(exhaustion, fg.id(static_cast<int>(i)).str() + " (vertex " + std::to_string(i + 1) +
                           " in BFS order) is not in A_" + std::to_string(i + 1));
    if (i + 1 < seps.size()) {
      const Separation& a = *seps[i];
      const Separation& b = *seps[i + 1];
      const int n = static_cast<int>(fg.vertex_count());
      for (int v = 0; v < n; ++v)
        if (a.side_at(v) != Side::B && b.side_at(v) != Side::A) {
          fail(disjoint, fg.id(v).str() + " lies in A_" + std::to_string(i + 1) + " and B_" + std::to_string(i + 2));
          break;
        }
      bool grows = a.a_interior().size() + a.order() < b.a_interior().size() + b.order();
      for (int v = 0; v < n && grows; ++v)
        if (a.side_at(v) == Side::A && b.side_at(v) == Side::B) grows = false;
      if (!grows)
        fail(exhaustion, "A_" + std::to_string(i + 2) + " does not strictly contain A_" + std::to_string(i + 1));
      bool covers = true;
      for (const auto& x : a.separator()) covers = covers && b.in_a(x);
      for (const auto& x : b.separator()) covers = covers && a.in_b(x);
      if (!covers || !region_connected(a, b))
        fail(connected, "A_" + std::to_string(i + 2) + " ∩ B_" + std::to_string(i + 1) +
                            (covers ? " is disconnected" : " misses separator vertices"));
    }
  }
  try {
    const EndDecl& end = g.end(seq.end_id);
    for (std::size_t r = 0; r < end.witness_rays.size(); ++r) {
      VertexId last;
      for (std::size_t n = 0;; ++n) {
        VertexId v = end.witness_rays[r](n);
        if (!fg.has_vertex(v)) break;
        last = v;
        if (n > fg.vertex_count()) break;
      }
      for (std::size_t i = 0; i < seps.size(); ++i)
        if (last.empty() || seps[i]->side_of(last) != Side::B) {
          fail(witness, "witness ray " + std::to_string(r) + " has no tail in B_" + std::to_string(i + 1));
          break;
        }
    }
  } catch (const InputError& e) {
    fail(witness, e.what());
  }
  report.bullets = {disjoint, connected, exhaustion, order, witness};
  return report;
}

CapturingSequence subsequence(const CapturingSequence& seq, const std::vector<std::size_t>& indices) {
  CapturingSequence out;
  out.end_id = seq.end_id;
  out.k = seq.k;
  for (std::size_t n = 0; n < indices.size(); ++n) {
    if (indices[n] >= seq.seps.size()) throw InputError("subsequence index out of range");
    if (n > 0 && indices[n] <= indices[n - 1]) throw InputError("subsequence indices must strictly increase");
    out.seps.push_back(seq.seps[indices[n]]);
  }
  return out;
}

}  // namespace edr
