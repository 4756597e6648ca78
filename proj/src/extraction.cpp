#include "edr/extraction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "edr/errors.hpp"
#include "edr/rays.hpp"

namespace edr {

// ------------------------------------------------------------ separator index

SeparatorIndex::SeparatorIndex(const CapturingSequence& seq) : count_(seq.seps.size()) {
  for (std::size_t i = 0; i < seq.seps.size(); ++i) {
    const Separation& s = seq.seps[i];
    for (const auto& v : s.a_interior()) first_a_.emplace(v, i);
    for (const auto& x : s.separator()) {
      first_a_.emplace(x, i);
      sep_of_.emplace(x, i);
    }
  }
}

std::size_t SeparatorIndex::first_a(const VertexId& v) const {
  auto it = first_a_.find(v);
  return it == first_a_.end() ? count_ : it->second;
}

std::optional<std::size_t> SeparatorIndex::separator_of(const VertexId& v) const {
  auto it = sep_of_.find(v);
  if (it == sep_of_.end()) return std::nullopt;
  return it->second;
}

bool SeparatorIndex::in_a_interior(const VertexId& v, std::size_t i) const {
  if (first_a(v) > i) return false;
  auto s = separator_of(v);
  return !s || *s != i;
}

std::vector<ShapeWord> SeparatorIndex::profile(const Path& p) const {
  std::vector<std::vector<std::size_t>> hits(count_);
  for (std::size_t q = 0; q < p.size(); ++q)
    if (auto s = separator_of(p[q])) hits[*s].push_back(q);
  std::vector<ShapeWord> out(count_);
  for (std::size_t j = 0; j < count_; ++j) {
    const auto& h = hits[j];
    for (std::size_t a = 0; a < h.size(); ++a) {
      if (a > 0) {
        bool direct = h[a] == h[a - 1] + 1;
        out[j].letters.push_back(!direct && in_a_interior(p[h[a - 1] + 1], j) ? 'l' : 'r');
      }
      out[j].vertices.push_back(p[h[a]]);
    }
  }
  return out;
}

// ------------------------------------------------------------ tracked 2-rays

TrackedTwoRay track(const TwoRayStream& t, int radius, std::size_t origin) {
  return {t, t.first.cover(radius), t.second.cover(radius), origin};
}

namespace {

std::size_t settle(const Path& p, std::size_t& pos, const SeparatorIndex& idx, std::size_t floor) {
  std::size_t need = floor;
  while (true) {
    if (need > 0) {
      std::optional<std::size_t> last;
      for (std::size_t q = pos; q < p.size(); ++q)
        if (idx.first_a(p[q]) <= need - 1) last = q;
      if (last) {
        if (*last + 1 >= p.size()) throw NeedsLongerPrefix("ray prefix ends inside a separated side");
        pos = *last + 1;
      }
    }
    std::size_t i0 = idx.first_a(p[pos]);
    if (i0 <= need) return i0;
    need = i0;
  }
}

void drop_front(Path& p, std::size_t n) { p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n)); }

}  // namespace

void make_lefty_tracked(TrackedTwoRay& t, const SeparatorIndex& idx, std::size_t floor) {
  std::size_t pa = 0, pb = 0;
  while (true) {
    std::size_t ia = settle(t.first, pa, idx, floor);
    std::size_t ib = settle(t.second, pb, idx, floor);
    if (ia == ib) break;
    floor = std::max(ia, ib);
  }
  if (pa > 0) {
    t.ray.first = t.ray.first.tail(pa);
    drop_front(t.first, pa);
  }
  if (pb > 0) {
    t.ray.second = t.ray.second.tail(pb);
    drop_front(t.second, pb);
  }
}

bool unresolved(const TrackedTwoRay& t, const SeparatorIndex& idx) {
  return idx.first_a(t.first.front()) >= idx.size() && idx.first_a(t.second.front()) >= idx.size();
}

TwoShape two_shape_at(const TrackedTwoRay& t, const CapturingSequence& seq, std::size_t j) {
  return {induce_shape(t.first, seq.seps.at(j)), induce_shape(t.second, seq.seps.at(j))};
}

// ------------------------------------------------------------ refinement

namespace {

int window_radius(const CapturingSequence& seq) {
  if (seq.seps.empty()) throw NeedsLargerHorizon("no separations in the window", 0, 32);
  return seq.seps.front().horizon();
}

std::string shape_key(const std::vector<ShapeWord>& a, const std::vector<ShapeWord>& b, std::size_t j) {
  return a[j].text() + "|" + b[j].text();
}

}  // namespace

ShapeTable refine_same_shape_internal(const std::vector<std::vector<TwoRayStream>>& families,
                                      const CapturingSequence& seq, std::size_t shape_classes, std::size_t link_classes,
                                      TraceLog* trace) {
  const int radius = window_radius(seq);
  SeparatorIndex idx(seq);
  ShapeTable table;
  std::vector<std::size_t> prev(seq.seps.size());
  std::iota(prev.begin(), prev.end(), 0);

  for (std::size_t level = 1; level <= families.size(); ++level) {
    const auto& family = families[level - 1];
    if (family.size() < shape_classes * link_classes * level)
      throw InputError("level " + std::to_string(level) + " has " + std::to_string(family.size()) + " members, needs " +
                       std::to_string(shape_classes * link_classes * level));
    if (prev.size() < level)
      throw NeedsLargerHorizon("index set exhausted at level " + std::to_string(level), level - 1, radius * 2);
    // Members avoid the A side of the (level-1)-st index kept so far.
    std::size_t floor = level >= 2 ? prev[level - 2] + 1 : 0;
    std::vector<TrackedTwoRay> members;
    std::vector<std::vector<ShapeWord>> pa, pb;
    for (std::size_t k = 0; k < family.size(); ++k) {
      TrackedTwoRay t = track(family[k], radius, k);
      make_lefty_tracked(t, idx, floor);
      if (unresolved(t, idx)) continue;
      pa.push_back(idx.profile(t.first));
      pb.push_back(idx.profile(t.second));
      members.push_back(std::move(t));
    }
    const std::size_t want = link_classes * level;
    std::vector<std::size_t> rest(prev.begin() + static_cast<std::ptrdiff_t>(level - 1), prev.end());

    // Classes of members agreeing on rest[s..], refined from the back.
    std::vector<std::size_t> cls(members.size(), 0);
    std::optional<std::size_t> best_s;
    std::vector<std::size_t> best_class;
    std::vector<std::vector<std::size_t>> class_at(rest.size());
    for (std::size_t s = rest.size(); s-- > 0;) {
      std::map<std::pair<std::size_t, std::string>, std::size_t> ids;
      for (std::size_t k = 0; k < members.size(); ++k) {
        auto key = std::make_pair(cls[k], shape_key(pa[k], pb[k], rest[s]));
        cls[k] = ids.emplace(key, ids.size()).first->second;
      }
      class_at[s] = cls;
    }
    for (std::size_t s = 0; s < rest.size() && !best_s; ++s) {
      std::map<std::size_t, std::vector<std::size_t>> groups;
      for (std::size_t k = 0; k < members.size(); ++k) groups[class_at[s][k]].push_back(k);
      const std::vector<std::size_t>* pick = nullptr;
      for (const auto& [id, ks] : groups)
        if (ks.size() >= want &&
            (!pick || ks.size() > pick->size() || (ks.size() == pick->size() && ks[0] < (*pick)[0])))
          pick = &ks;
      if (pick) {
        best_s = s;
        best_class.assign(pick->begin(), pick->begin() + static_cast<std::ptrdiff_t>(want));
      }
    }
    if (!best_s)
      throw NeedsLargerHorizon("level " + std::to_string(level) + ": fewer than " + std::to_string(want) +
                                   " resolved members agree on any tail of the window",
                               level - 1, radius * 2);

    std::vector<std::size_t> next(prev.begin(), prev.begin() + static_cast<std::ptrdiff_t>(level - 1));
    next.insert(next.end(), rest.begin() + static_cast<std::ptrdiff_t>(*best_s), rest.end());
    std::vector<TrackedTwoRay> chosen;
    std::map<std::size_t, TwoShape> row;
    for (std::size_t j : next) row[j] = {pa[best_class[0]][j], pb[best_class[0]][j]};
    for (std::size_t k : best_class) chosen.push_back(members[k]);
    table.shapes.push_back(std::move(row));
    table.refined.push_back(std::move(chosen));
    if (trace)
      trace->add("refine", "level " + std::to_string(level) + ": " + std::to_string(members.size()) +
                               " resolved, kept " + std::to_string(want) + ", kept indices " +
                               std::to_string(next.size()));
    prev = std::move(next);
  }
  table.indices = prev;
  for (auto& row : table.shapes)
    for (auto it = row.begin(); it != row.end();)
      it = std::binary_search(table.indices.begin(), table.indices.end(), it->first) ? std::next(it) : row.erase(it);
  return table;
}

std::vector<std::string> audit_shape_table(const ShapeTable& table, const CapturingSequence& seq) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < table.refined.size(); ++i)
    for (const auto& d : table.refined[i])
      for (std::size_t j : table.indices) {
        TwoShape got = two_shape_at(d, seq, j);
        if (got != table.shapes[i].at(j))
          out.push_back("level " + std::to_string(i + 1) + " member " + std::to_string(d.origin) + " at " +
                        std::to_string(j) + ": " + got.text() + " != " + table.shapes[i].at(j).text());
      }
  return out;
}

// ------------------------------------------------------------ alignment

namespace {

bool nonempty(const TwoShape& s) { return !s.first.empty() || !s.second.empty(); }

}  // namespace

Alignment align_shapes_external(const ShapeTable& table, std::size_t count) {
  const std::size_t levels = table.shapes.size();
  Alignment best;
  auto agree_after = [&](std::size_t v, std::size_t w, std::optional<std::size_t> after) -> std::optional<std::size_t> {
    for (std::size_t j : table.indices) {
      if (after && j <= *after) continue;
      const TwoShape& a = table.shapes[v].at(j);
      if (nonempty(a) && a == table.shapes[w].at(j)) return j;
    }
    return std::nullopt;
  };
  for (std::size_t start = 0; start < levels; ++start) {
    Alignment cur;
    cur.levels.push_back(start);
    std::optional<std::size_t> last;
    while (cur.levels.size() < count + 1) {
      bool grown = false;
      for (std::size_t w = cur.levels.back() + 1; w < levels && !grown; ++w) {
        if (auto j = agree_after(cur.levels.back(), w, last)) {
          cur.levels.push_back(w);
          cur.seps.push_back(*j);
          last = j;
          grown = true;
        }
      }
      if (!grown) break;
    }
    if (cur.levels.size() == count + 1) {
      for (std::size_t j : table.indices)
        if ((!last || j > *last) && nonempty(table.shapes[cur.levels.back()].at(j))) {
          cur.seps.push_back(j);
          return cur;
        }
    }
    if (cur.seps.size() > best.seps.size()) best = cur;
  }
  throw NeedsLargerHorizon(
      "alignment reached " + std::to_string(best.seps.size()) + " of " + std::to_string(count) + " steps",
      best.seps.size(), 0);
}

std::vector<std::string> audit_alignment(const ShapeTable& table, const Alignment& a, std::size_t count) {
  std::vector<std::string> out;
  if (a.levels.size() != count + 1 || a.seps.size() != count + 1) out.push_back("wrong sequence lengths");
  for (std::size_t i = 1; i < a.levels.size(); ++i)
    if (a.levels[i] <= a.levels[i - 1]) out.push_back("levels not increasing at " + std::to_string(i));
  for (std::size_t i = 1; i < a.seps.size(); ++i)
    if (a.seps[i] <= a.seps[i - 1]) out.push_back("separations not increasing at " + std::to_string(i));
  for (std::size_t j : a.seps)
    if (!std::binary_search(table.indices.begin(), table.indices.end(), j))
      out.push_back("separation outside J: " + std::to_string(j));
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < count; ++i) {
    const TwoShape& x = table.shapes[a.levels[i]].at(a.seps[i]);
    const TwoShape& y = table.shapes[a.levels[i + 1]].at(a.seps[i]);
    if (x != y) out.push_back("levels disagree at step " + std::to_string(i));
    if (!nonempty(x)) out.push_back("empty shape at step " + std::to_string(i));
  }
  if (!nonempty(table.shapes[a.levels[count]].at(a.seps[count]))) out.push_back("spare separation has an empty shape");
  return out;
}

// ------------------------------------------------------------ selection

namespace {

VertexId least_start(const TrackedTwoRay& t) { return std::min(t.first.front(), t.second.front()); }

void check_link(const LinkWord& link, const ShapeWord& near, const ShapeWord& far, std::size_t origin) {
  if (near.empty() || far.empty()) return;
  auto check = is_allowed_link(link, near, far);
  if (!check.ok())
    throw UpstreamFault("member " + std::to_string(origin) + " induces " + link.text() + ", violating " +
                        check.violations.front());
}

}  // namespace

SelectedLevel select_allowed(const std::vector<TrackedTwoRay>& family, const Separation& near, const Separation& far,
                             std::size_t count, const TwoShape& near_shape, const TwoShape& far_shape) {
  std::map<TwoLink, std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& d = family[k];
    TwoLink link{induce_link(d.first, near, far), induce_link(d.second, near, far)};
    check_link(link.first, near_shape.first, far_shape.first, d.origin);
    check_link(link.second, near_shape.second, far_shape.second, d.origin);
    classes[link].push_back(k);
  }
  const std::pair<const TwoLink, std::vector<std::size_t>>* pick = nullptr;
  for (const auto& entry : classes)
    if (!pick || entry.second.size() > pick->second.size() ||
        (entry.second.size() == pick->second.size() && entry.second[0] < pick->second[0]))
      pick = &entry;
  if (!pick || pick->second.size() < count)
    throw UpstreamFault("no allowed 2-shape is induced by " + std::to_string(count) + " members");
  SelectedLevel out;
  out.link = pick->first;
  for (std::size_t n = 0; n < count; ++n) out.members.push_back(family[pick->second[n]]);
  std::stable_sort(out.members.begin(), out.members.end(), [](const TrackedTwoRay& a, const TrackedTwoRay& b) {
    VertexId x = least_start(a), y = least_start(b);
    if (x != y) return x < y;
    return std::max(a.first.front(), a.second.front()) < std::max(b.first.front(), b.second.front());
  });
  return out;
}

AlignedFamilies build_aligned(const ShapeTable& table, const Alignment& a, const CapturingSequence& seq,
                              std::size_t count, TraceLog* trace) {
  AlignedFamilies out;
  out.seq = subsequence(seq, a.seps);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t old = a.levels[i + 1];
    const TwoShape& near = table.shapes[old].at(a.seps[i]);
    const TwoShape& far = table.shapes[old].at(a.seps[i + 1]);
    if (table.refined[old].size() < i + 1) throw InputError("refined level too small for its new index");
    auto sel = select_allowed(table.refined[old], out.seq.seps[i], out.seq.seps[i + 1], i + 1, near, far);
    out.levels.push_back(std::move(sel.members));
    out.links.push_back(sel.link);
    out.shape_here.push_back(near);
    out.shape_next.push_back(far);
    if (trace)
      trace->add("select", "level " + std::to_string(i + 1) + " from " + std::to_string(old + 1) +
                               " at Y=" + std::to_string(a.seps[i]) + ": link " + sel.link.text());
  }
  return out;
}

// ------------------------------------------------------------ strands

namespace {

void add_region_edges(FiniteGraph& g, const Path& p, const Separation& near, const Separation& far) {
  for (std::size_t q = 0; q + 1 < p.size(); ++q)
    if (far.edge_side(p[q], p[q + 1]) == Side::A && near.edge_side(p[q], p[q + 1]) == Side::B)
      g.add_edge(p[q], p[q + 1]);
}

}  // namespace

std::vector<StrandSet> assemble_strands(const AlignedFamilies& aligned) {
  const std::size_t levels = aligned.levels.size();
  if (aligned.seq.seps.size() < levels + 1) throw InputError("aligned sequence is missing its spare separation");
  std::vector<StrandSet> out;
  const auto& last = aligned.seq.seps[levels].separator();
  for (std::size_t i = 0; i < levels; ++i) {
    StrandSet s;
    s.level = i;
    const auto& base = aligned.seq.seps[i].separator();
    s.base.insert(base.begin(), base.end());
    s.frontier.insert(last.begin(), last.end());
    for (std::size_t j = i; j < levels; ++j) {
      if (aligned.levels[j].size() <= i) throw InputError("level " + std::to_string(j + 1) + " lacks a representative");
      const auto& rep = aligned.levels[j][i];
      add_region_edges(s.first, rep.first, aligned.seq.seps[j], aligned.seq.seps[j + 1]);
      add_region_edges(s.second, rep.second, aligned.seq.seps[j], aligned.seq.seps[j + 1]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> audit_strand_overlap(const std::vector<StrandSet>& strands) {
  std::map<EdgeId, std::string> owner;
  std::vector<std::string> out;
  for (const auto& s : strands)
    for (int side = 0; side < 2; ++side) {
      std::string name = std::to_string(s.level + 1) + (side == 0 ? "S" : "T");
      for (const auto& e : (side == 0 ? s.first : s.second).edges()) {
        auto [it, fresh] = owner.emplace(e, name);
        if (!fresh) out.push_back(it->second + "/" + name + ": " + e.str());
      }
    }
  for (const auto& s : strands) {
    for (const auto& v : s.first.vertices())
      if (s.second.has_vertex(v)) out.push_back(std::to_string(s.level + 1) + "S/T share vertex " + v.str());
  }
  return out;
}

namespace {

// Letters on both sides of v inside l:w:r, or nullopt if v is not in w.
std::optional<std::pair<char, char>> sentinel_context(const ShapeWord& w, const VertexId& v) {
  for (std::size_t k = 0; k < w.vertices.size(); ++k)
    if (w.vertices[k] == v) {
      char left = k == 0 ? 'l' : w.letters[k - 1];
      char right = k + 1 == w.vertices.size() ? 'r' : w.letters[k];
      return std::make_pair(left, right);
    }
  return std::nullopt;
}

}  // namespace

std::pair<long, std::size_t> sentinel_counts(const ShapeWord& w) {
  long lvr = 0, rvl = 0;
  for (const auto& v : w.vertices) {
    auto ctx = sentinel_context(w, v);
    if (ctx->first == 'l' && ctx->second == 'r') ++lvr;
    if (ctx->first == 'r' && ctx->second == 'l') ++rvl;
  }
  return {lvr - rvl, static_cast<std::size_t>(lvr + rvl)};
}

StrandReport check_strand_degrees(const StrandSet& s, const AlignedFamilies& aligned, bool second) {
  const FiniteGraph& g = second ? s.second : s.first;
  StrandReport out;
  const std::size_t levels = aligned.levels.size();
  VertexMap<std::size_t> sep_of;
  for (std::size_t j = 0; j < aligned.seq.seps.size(); ++j)
    for (const auto& x : aligned.seq.seps[j].separator()) sep_of.emplace(x, j);
  for (int i = 0; i < static_cast<int>(g.vertex_count()); ++i) {
    const VertexId& v = g.id(i);
    std::size_t deg = g.degree(i);
    if (deg > 2) out.violations.push_back("degree " + std::to_string(deg) + " at " + v.str());
    if (deg == 1) {
      ++out.degree_one;
      if (!s.base.count(v) && !s.frontier.count(v)) out.violations.push_back("leaf off the base at " + v.str());
    }
    auto it = sep_of.find(v);
    if (it == sep_of.end() || it->second < s.level) continue;
    std::size_t j = it->second;
    const TwoShape& shape = j < levels ? aligned.shape_here[j] : aligned.shape_next[levels - 1];
    const ShapeWord& w = second ? shape.second : shape.first;
    auto ctx = sentinel_context(w, v);
    if (!ctx) {
      out.violations.push_back("separator vertex " + v.str() + " missing from its shape");
      continue;
    }
    std::size_t want_before = (ctx->first == 'l') + (ctx->second == 'l');
    std::size_t want_after = (ctx->first == 'r') + (ctx->second == 'r');
    if (j == s.level) want_before = 0;
    if (j == levels) want_after = 0;
    std::size_t before = 0, after = 0;
    for (int n : g.adjacent(i)) (aligned.seq.seps[j].edge_side(v, g.id(n)) == Side::A ? before : after)++;
    if (before != want_before || after != want_after)
      out.violations.push_back("edge split at " + v.str() + " is " + std::to_string(before) + "+" +
                               std::to_string(after) + ", shape predicts " + std::to_string(want_before) + "+" +
                               std::to_string(want_after));
  }
  return out;
}

StrandReport check_parity(const StrandSet& s, const ShapeWord& base_shape, bool second) {
  const FiniteGraph& g = second ? s.second : s.first;
  StrandReport out;
  if (base_shape.empty()) {
    out.violations.push_back("empty shape at the base separation");
    return out;
  }
  for (int i = 0; i < static_cast<int>(g.vertex_count()); ++i)
    if (g.degree(i) == 1 && s.base.count(g.id(i))) ++out.degree_one;
  if (out.degree_one % 2 == 0)
    out.violations.push_back("even number of base leaves: " + std::to_string(out.degree_one));
  auto [diff, total] = sentinel_counts(base_shape);
  if (diff != 1) out.violations.push_back("lvr - rvl = " + std::to_string(diff));
  if (total != out.degree_one)
    out.violations.push_back("word predicts " + std::to_string(total) + " base leaves, graph has " +
                             std::to_string(out.degree_one));
  return out;
}

Path extract_ray_head(const StrandSet& s, bool second) {
  const FiniteGraph& g = second ? s.second : s.first;
  std::vector<VertexId> seeds;
  for (int i = 0; i < static_cast<int>(g.vertex_count()); ++i)
    if (g.degree(i) == 1 && s.base.count(g.id(i))) seeds.push_back(g.id(i));
  std::sort(seeds.begin(), seeds.end());
  for (const auto& seed : seeds) {
    Path walk{seed};
    int prev = -1;
    int cur = g.index(seed);
    while (true) {
      int next = -1;
      for (int n : g.adjacent(cur))
        if (n != prev) {
          next = n;
          break;
        }
      if (next < 0 || g.id(next) == seed) break;
      prev = cur;
      cur = next;
      walk.push_back(g.id(cur));
      if (g.degree(cur) == 1) break;
    }
    if (walk.size() > 1 && g.degree(cur) == 1 && s.frontier.count(g.id(cur))) return walk;
  }
  throw NeedsLargerHorizon("strand " + std::to_string(s.level + 1) + " has no component reaching the frontier", s.level,
                           0);
}

RayStream extract_ray(const LazyGraph& g, const StrandSet& s, int base_horizon, bool second) {
  auto bundle = StreamBundle::make(g, {StreamObject{{extract_ray_head(s, second)}}}, base_horizon);
  return bundle->arm(0, 0);
}

// ------------------------------------------------------------ 2-ray chain

TwoRayRun two_rays_stream(const FamilyGenerator& gen, const CapturingSequence& seq, std::size_t m, int horizon,
                          TraceLog* trace) {
  TwoRayRun run;
  if (m == 0) return run;
  const int radius = window_radius(seq);
  (void)horizon;
  const std::size_t shape_classes = two_shape_count(seq.k);
  const std::size_t link_classes = two_shape_link_bound(seq.k);
  const std::size_t levels = m + 1;
  std::vector<std::vector<TwoRayStream>> families;
  for (std::size_t i = 1; i <= levels; ++i) {
    std::size_t size = shape_classes * link_classes * i;
    if (size > gen.max_count)
      throw InputError("generator " + gen.name + " cannot produce " + std::to_string(size) + " double rays");
    std::vector<TwoRayStream> fam;
    for (const auto& d : gen.produce(size)) fam.push_back(to_two_ray(d, radius));
    families.push_back(std::move(fam));
  }
  if (trace)
    trace->add("families", std::to_string(levels) + " levels, " + std::to_string(shape_classes) + " shape classes, " +
                               std::to_string(link_classes) + " link classes, " + std::to_string(seq.seps.size()) +
                               " separations");
  ShapeTable table = refine_same_shape_internal(families, seq, shape_classes, link_classes, trace);
  if (auto bad = audit_shape_table(table, seq); !bad.empty()) throw UpstreamFault("shape table audit: " + bad.front());
  Alignment a = align_shapes_external(table, m);
  if (auto bad = audit_alignment(table, a, m); !bad.empty()) throw UpstreamFault("alignment audit: " + bad.front());
  if (trace) {
    std::string js;
    for (std::size_t j : a.seps) js += " " + std::to_string(j);
    trace->add("align", "separations" + js);
  }
  AlignedFamilies aligned = build_aligned(table, a, seq, m, trace);
  auto strands = assemble_strands(aligned);
  if (auto bad = audit_strand_overlap(strands); !bad.empty()) throw UpstreamFault("strand overlap: " + bad.front());

  std::vector<StreamObject> objects;
  for (std::size_t i = 0; i < m; ++i) {
    for (int side = 0; side < 2; ++side) {
      auto deg = check_strand_degrees(strands[i], aligned, side == 1);
      if (!deg.ok()) throw UpstreamFault("strand " + std::to_string(i + 1) + ": " + deg.violations.front());
      const TwoShape& base = aligned.shape_here[i];
      auto par = check_parity(strands[i], side == 0 ? base.first : base.second, side == 1);
      if (!par.ok()) throw UpstreamFault("strand " + std::to_string(i + 1) + ": " + par.violations.front());
    }
    Path s = extract_ray_head(strands[i], false);
    Path t = extract_ray_head(strands[i], true);
    run.heads.emplace_back(s, t);
    objects.push_back({{std::move(s), std::move(t)}});
    if (trace)
      trace->add("strands", "level " + std::to_string(i + 1) + ": S has " +
                                std::to_string(strands[i].first.edge_count()) + " edges, T has " +
                                std::to_string(strands[i].second.edge_count()));
  }
  auto bundle = StreamBundle::make(families[0][0].first.graph(), std::move(objects), radius);
  for (std::size_t i = 0; i < m; ++i) run.rays.push_back(bundle->two_ray(i));
  run.levels_used = levels;
  return run;
}

// ------------------------------------------------------------ connectors

namespace {

FiniteGraph without_edges(const FiniteGraph& g, const EdgeSet& drop) {
  FiniteGraph out(g.radius());
  for (const auto& v : g.vertices()) out.add_vertex(v);
  for (const auto& e : g.edges())
    if (!drop.count(e)) out.add_edge(e.first(), e.second());
  return out;
}

// Connected pieces of an edge set, as vertex sets with their edges.
std::vector<std::pair<VertexSet, EdgeList>> pieces(const EdgeList& edges) {
  VertexMap<VertexId> parent;
  std::function<VertexId(const VertexId&)> find = [&](const VertexId& v) -> VertexId {
    auto it = parent.find(v);
    if (it == parent.end()) {
      parent.emplace(v, v);
      return v;
    }
    if (it->second == v) return v;
    VertexId root = find(it->second);
    parent[v] = root;
    return root;
  };
  for (const auto& e : edges) {
    VertexId a = find(e.first()), b = find(e.second());
    if (a != b) parent[a] = b;
  }
  std::map<VertexId, std::pair<VertexSet, EdgeList>> by_root;
  for (const auto& e : edges) {
    auto& slot = by_root[find(e.first())];
    slot.first.insert(e.first());
    slot.first.insert(e.second());
    slot.second.push_back(e);
  }
  std::vector<std::pair<VertexSet, EdgeList>> out;
  for (auto& [root, piece] : by_root) out.push_back(std::move(piece));
  return out;
}

}  // namespace

ConnectorPlan connectors_for_two_rays(const std::vector<TwoRayStream>& rays, const CapturingSequence& seq, int horizon,
                                      TraceLog* trace) {
  (void)horizon;
  const int radius = window_radius(seq);
  SeparatorIndex idx(seq);
  std::vector<TrackedTwoRay> tracked;
  for (std::size_t k = 0; k < rays.size(); ++k) {
    tracked.push_back(track(rays[k], radius, k));
    make_lefty_tracked(tracked.back(), idx);
  }
  ConnectorPlan plan;
  EdgeSet connector_edges;
  for (std::size_t x = 0; x + 1 < seq.seps.size(); x += 2) {
    FiniteGraph region = region_between(seq.seps[x], seq.seps[x + 1]);
    const auto& S = seq.seps[x].separator();
    VertexSet sset(S.begin(), S.end());
    std::vector<EdgeList> H;
    EdgeSet forbidden;
    for (const auto& d : tracked) {
      EdgeList inside;
      for (const Path* p : {&d.first, &d.second})
        for (std::size_t q = 0; q + 1 < p->size(); ++q)
          if (region.has_edge((*p)[q], (*p)[q + 1])) inside.emplace_back((*p)[q], (*p)[q + 1]);
      bool meets = idx.first_a(d.first.front()) <= x;
      EdgeList member;
      for (auto& [verts, es] : pieces(inside)) {
        bool touches_s = std::any_of(verts.begin(), verts.end(), [&](const VertexId& v) { return sset.count(v) != 0; });
        if (meets && touches_s)
          member.insert(member.end(), es.begin(), es.end());
        else
          forbidden.insert(es.begin(), es.end());
      }
      if (!member.empty()) H.push_back(std::move(member));
    }
    FiniteGraph fg = without_edges(region, forbidden);
    if (!is_connected(fg)) fg = std::move(region);
    ConnectorResult res = finite_connector(fg, S, H);
    if (res.touched.size() + 2 > 2 * S.size())
      throw UpstreamFault("connector in region " + std::to_string(x) + " touches " +
                          std::to_string(res.touched.size()) + " 2-rays");
    for (const auto& e : res.tree.edges()) connector_edges.insert(e);
    plan.budget.push_back(res.touched.size());
    plan.regions.push_back(x);
    plan.connectors.push_back(std::move(res));
  }
  std::vector<TwoRayStream> lefty;
  for (const auto& t : tracked) lefty.push_back(t.ray);
  plan.tailored = tailor(lefty, connector_edges, radius);
  if (trace)
    trace->add("connectors", std::to_string(plan.connectors.size()) + " connectors over " +
                                 std::to_string(seq.seps.size()) + " separations");
  return plan;
}

DoubleRayRun two_rays_to_double_rays(const ConnectorPlan& plan, std::size_t m, int horizon, TraceLog* trace) {
  DoubleRayRun run;
  if (m == 0) return run;
  std::vector<char> used(plan.connectors.size(), 0);
  std::vector<StreamObject> objects;
  const LazyGraph* g = nullptr;
  for (std::size_t k = 0; k < plan.tailored.size() && objects.size() < m; ++k) {
    const auto& d = plan.tailored[k];
    g = &d.first.graph();
    Path p1 = d.first.at(horizon);
    Path p2 = d.second.at(horizon);
    for (std::size_t c = 0; c < plan.connectors.size(); ++c) {
      if (used[c]) continue;
      const FiniteGraph& tree = plan.connectors[c].tree;
      VertexSet on1, on2;
      for (const auto& v : p1)
        if (tree.has_vertex(v)) on1.insert(v);
      for (const auto& v : p2)
        if (tree.has_vertex(v)) on2.insert(v);
      if (on1.empty() || on2.empty()) continue;
      Path q = shortest_path(tree, on1, on2);
      if (q.size() < 2) continue;
      auto a1 = std::find(p1.begin(), p1.end(), q.front());
      auto a2 = std::find(p2.begin(), p2.end(), q.back());
      Path left(a1, p1.end());
      Path right = q;
      right.insert(right.end(), a2 + 1, p2.end());
      objects.push_back({{std::move(left), std::move(right)}});
      run.pairing.emplace_back(k, c);
      used[c] = 1;
      break;
    }
  }
  if (objects.size() < m)
    throw NeedsLargerHorizon("only " + std::to_string(objects.size()) + " 2-rays found a fresh connector",
                             objects.size(), horizon * 2);
  auto bundle = StreamBundle::make(*g, std::move(objects), horizon);
  for (std::size_t i = 0; i < m; ++i) run.rays.push_back(bundle->double_ray(i));
  if (trace) trace->add("double-rays", std::to_string(m) + " double rays through fresh connectors");
  return run;
}

}  // namespace edr
