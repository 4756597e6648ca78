#include "edr/rays.hpp"

#include <algorithm>
#include <functional>

#include "edr/errors.hpp"

namespace edr {

TwoRayStream to_two_ray(const DoubleRayStream& d, int horizon) {
  std::size_t drop = d.edge_center() ? 0 : 1;
  TwoRayStream out{d.left().tail(drop), d.right().tail(drop)};
  if (!d.edge_center() && d.left().start() != d.right().start())
    throw UpstreamFault("vertex-centered double ray with different arm starts");
  Path a = out.first.at(horizon);
  Path b = out.second.at(horizon);
  VertexSet seen(a.begin(), a.end());
  for (const auto& v : b)
    if (seen.count(v)) throw UpstreamFault("not a double ray: sides meet at " + v.str());
  return out;
}

RayStream tail_of(const RayStream& r, std::size_t drop) { return r.tail(drop); }

std::size_t first_a_index(const CapturingSequence& seq, const VertexId& v) {
  for (std::size_t i = 0; i < seq.seps.size(); ++i)
    if (seq.seps[i].in_a(v)) return i;
  return seq.seps.size();
}

namespace {

// Last index of p lying in the A side of sep, if any.
std::optional<std::size_t> last_in_a(const Path& p, const Separation& sep, std::size_t from) {
  std::optional<std::size_t> last;
  for (std::size_t q = from; q < p.size(); ++q)
    if (sep.in_a(p[q])) last = q;
  return last;
}

// Advances pos until p[pos..] avoids A_j for every j below both floor and
// the index of the first A side containing p[pos]. Returns that index.
std::size_t settle(const Path& p, std::size_t& pos, const CapturingSequence& seq, std::size_t floor) {
  std::size_t need = floor;
  while (true) {
    if (need > 0) {
      if (auto last = last_in_a(p, seq.seps[need - 1], pos)) {
        if (*last + 1 >= p.size()) throw NeedsLongerPrefix("ray prefix ends inside a separated side");
        pos = *last + 1;
      }
    }
    std::size_t i0 = first_a_index(seq, p[pos]);
    if (i0 <= need) return i0;
    need = i0;
  }
}

}  // namespace

TwoRayStream make_lefty(const TwoRayStream& t, const CapturingSequence& seq) {
  if (seq.seps.empty()) return t;
  int radius = seq.seps.front().horizon();
  Path p = t.first.cover(radius);
  Path q = t.second.cover(radius);
  std::size_t pp = 0, pq = 0;
  std::size_t floor = 0;
  while (true) {
    std::size_t ip = settle(p, pp, seq, floor);
    std::size_t iq = settle(q, pq, seq, floor);
    if (ip == iq) break;
    floor = std::max(ip, iq);
  }
  return {t.first.tail(pp), t.second.tail(pq)};
}

bool is_lefty(const TwoRayStream& t, const CapturingSequence& seq) {
  if (seq.seps.empty()) return true;
  int radius = seq.seps.front().horizon();
  std::size_t first = 0;
  for (int side = 0; side < 2; ++side) {
    Path p = (side == 0 ? t.first : t.second).cover(radius);
    std::size_t i0 = first_a_index(seq, p.front());
    if (side == 0)
      first = i0;
    else if (i0 != first)
      return false;
    for (std::size_t j = 0; j < i0; ++j)
      if (last_in_a(p, seq.seps[j], 0)) return false;
  }
  return true;
}

std::vector<TwoRayStream> tailor(const std::vector<TwoRayStream>& family, const EdgeSet& forbidden, int horizon) {
  auto cut = [&](const RayStream& r) {
    Path p = r.cover(horizon);
    std::size_t drop = 0;
    for (std::size_t q = 0; q + 1 < p.size(); ++q)
      if (forbidden.count(EdgeId(p[q], p[q + 1]))) drop = q + 1;
    return r.tail(drop);
  };
  std::vector<TwoRayStream> out;
  out.reserve(family.size());
  for (const auto& t : family) out.push_back({cut(t.first), cut(t.second)});
  return out;
}

HullResult locally_finite_hull(const LazyGraph& g, const std::vector<RayStream>& rays, int horizon) {
  auto trunc = g.ball(horizon);
  std::vector<VertexId> order = g.bfs_order(horizon);
  HullResult out;
  out.graph.set_radius(horizon);
  std::vector<VertexSet> homes;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    VertexSet removed(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::min(i, order.size())));
    Path p = rays[i].at(horizon);
    const VertexId& last = p.back();
    VertexSet home;
    for (auto& comp : components(*trunc, removed)) {
      if (!std::binary_search(comp.begin(), comp.end(), last)) continue;
      bool deep = std::any_of(comp.begin(), comp.end(), [&](const VertexId& v) { return trunc->depth(v) >= horizon; });
      if (deep) home.insert(comp.begin(), comp.end());
    }
    if (home.empty())
      throw NeedsLargerHorizon("ray " + std::to_string(i) + " has no deep home component", i, horizon * 2);
    std::size_t from = 0;
    for (std::size_t q = 0; q < p.size(); ++q)
      if (!home.count(p[q])) from = q + 1;
    Path tail(p.begin() + static_cast<std::ptrdiff_t>(from), p.end());
    out.graph.add_vertex(tail.front());
    out.graph.add_path(tail);
    out.tails.push_back(std::move(tail));
    homes.push_back(std::move(home));
  }
  for (std::size_t i = 1; i < out.tails.size(); ++i) {
    const Path& base = out.tails[0];
    const Path& other = out.tails[i];
    VertexSet mine(other.begin(), other.end());
    if (std::any_of(base.begin(), base.end(), [&](const VertexId& v) { return mine.count(v) != 0; })) continue;
    std::vector<VertexId> sources;
    for (const auto& v : base)
      if (homes[i].count(v)) sources.push_back(v);
    if (sources.empty()) continue;
    FiniteGraph region = trunc->induced(homes[i]);
    for (const auto& path : vertex_disjoint_paths(region, sources, other)) {
      out.graph.add_path(path);
      ++out.paths_added;
    }
  }
  for (int v = 0; v < static_cast<int>(out.graph.vertex_count()); ++v)
    out.max_degree = std::max(out.max_degree, out.graph.degree(v));
  return out;
}

namespace {

std::vector<std::vector<VertexId>> sorted_prefixes(const std::vector<RayStream>& rays, int horizon) {
  std::vector<std::vector<VertexId>> sets;
  for (const auto& r : rays) {
    Path p = r.at(horizon);
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    sets.push_back(std::move(p));
  }
  return sets;
}

std::size_t overlap(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      ++n, ++i, ++j;
  }
  return n;
}

}  // namespace

std::vector<std::size_t> mutual_intersection_clique(const std::vector<Path>& paths, std::size_t t) {
  std::vector<std::vector<VertexId>> sets;
  for (Path p : paths) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    sets.push_back(std::move(p));
  }
  std::size_t n = sets.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) adj[i][j] = adj[j][i] = overlap(sets[i], sets[j]) >= t;
  std::vector<std::size_t> best;
  for (std::size_t seed = 0; seed < n; ++seed) {
    std::vector<std::size_t> clique{seed};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == seed) continue;
      if (std::all_of(clique.begin(), clique.end(), [&](std::size_t c) { return adj[c][j] != 0; })) clique.push_back(j);
    }
    if (clique.size() > best.size()) best = clique;
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::vector<std::size_t> refine_mutual_intersection(const std::vector<RayStream>& rays, int horizon, std::size_t t) {
  std::vector<Path> paths;
  for (const auto& r : rays) paths.push_back(r.at(horizon));
  return mutual_intersection_clique(paths, t);
}

std::optional<std::vector<std::size_t>> almost_disjoint_witness(const std::vector<RayStream>& rays, std::size_t k,
                                                                int horizon, std::size_t t) {
  auto sets = sorted_prefixes(rays, horizon);
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t from) {
    if (chosen.size() == k + 1) return true;
    for (std::size_t j = from; j < sets.size(); ++j) {
      if (std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return overlap(sets[c], sets[j]) < t; })) {
        chosen.push_back(j);
        if (search(j + 1)) return true;
        chosen.pop_back();
      }
    }
    return false;
  };
  if (search(0)) return chosen;
  return std::nullopt;
}

Path loop_erase(const Path& p) {
  Path out;
  VertexMap<std::size_t> at;
  for (const auto& v : p) {
    auto it = at.find(v);
    if (it != at.end()) {
      for (std::size_t q = it->second + 1; q < out.size(); ++q) at.erase(out[q]);
      out.resize(it->second + 1);
      continue;
    }
    at[v] = out.size();
    out.push_back(v);
  }
  return out;
}

namespace {

// lead followed by hosts[host][from..].
struct Branch {
  Path lead;
  std::size_t host;
  std::size_t from;
};

Path materialize(const Branch& b, const std::vector<Path>& hosts) {
  Path p = b.lead;
  const Path& h = hosts[b.host];
  p.insert(p.end(), h.begin() + static_cast<std::ptrdiff_t>(b.from), h.end());
  return p;
}

// Re-expresses a loop-erased path as lead + contiguous host suffix.
Branch normalize(const Branch& b, const std::vector<Path>& hosts) {
  Path p = loop_erase(materialize(b, hosts));
  const Path& h = hosts[b.host];
  std::size_t i = p.size();
  std::size_t j = h.size();
  while (i > 0 && j > b.from && p[i - 1] == h[j - 1]) --i, --j;
  return {Path(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i)), b.host, j};
}

std::vector<Branch> branches_from_starts(const std::vector<Path>& hosts, const std::vector<VertexId>& starts,
                                         std::size_t m) {
  VertexSet start_set(starts.begin(), starts.end());
  std::vector<Branch> direct;
  VertexSet taken;
  for (std::size_t h = 0; h < hosts.size() && direct.size() < m; ++h) {
    for (std::size_t q = 0; q + 1 < hosts[h].size(); ++q) {
      const auto& v = hosts[h][q];
      if (start_set.count(v) && !taken.count(v)) {
        taken.insert(v);
        direct.push_back({{}, h, q});
        break;
      }
    }
  }
  if (direct.size() >= m || hosts.empty()) return direct;

  std::size_t rich = 0, best = 0;
  for (std::size_t h = 0; h < hosts.size(); ++h) {
    std::size_t n = static_cast<std::size_t>(
        std::count_if(hosts[h].begin(), hosts[h].end(), [&](const VertexId& v) { return start_set.count(v) != 0; }));
    if (n > best) best = n, rich = h;
  }
  const Path& spine = hosts[rich];
  std::vector<VertexMap<std::size_t>> where(hosts.size());
  for (std::size_t h = 0; h < hosts.size(); ++h)
    for (std::size_t q = 0; q < hosts[h].size(); ++q) where[h].emplace(hosts[h][q], q);
  std::vector<char> used(hosts.size(), 0);
  used[rich] = 1;
  std::vector<Branch> walked;
  std::size_t cur = 0;
  VertexSet started;
  while (walked.size() < m) {
    std::size_t pos = cur;
    while (pos + 1 < spine.size() && (!start_set.count(spine[pos]) || started.count(spine[pos]))) ++pos;
    if (pos + 1 >= spine.size()) break;
    started.insert(spine[pos]);
    bool branched = false;
    for (std::size_t q = pos; q + 1 < spine.size() && !branched; ++q) {
      for (std::size_t h = 0; h < hosts.size(); ++h) {
        if (used[h]) continue;
        auto it = where[h].find(spine[q]);
        if (it == where[h].end() || it->second + 1 >= hosts[h].size()) continue;
        Path lead(spine.begin() + static_cast<std::ptrdiff_t>(pos), spine.begin() + static_cast<std::ptrdiff_t>(q));
        walked.push_back(normalize({lead, h, it->second}, hosts));
        used[h] = 1;
        cur = q;
        branched = true;
        break;
      }
    }
    if (!branched) {
      walked.push_back({{}, rich, pos});
      break;
    }
  }
  return walked.size() > direct.size() ? walked : direct;
}

}  // namespace

std::vector<Path> ray_heads_from_starts(const std::vector<Path>& hosts, const std::vector<VertexId>& starts,
                                        std::size_t m) {
  std::vector<Path> out;
  for (const auto& b : branches_from_starts(hosts, starts, m)) out.push_back(materialize(b, hosts));
  return out;
}

std::vector<RayStream> rays_from_starts(const std::vector<RayStream>& hosts, const std::vector<VertexId>& starts,
                                        std::size_t m, int horizon) {
  std::vector<Path> heads;
  for (const auto& h : hosts) heads.push_back(h.cover(horizon));
  auto branches = branches_from_starts(heads, starts, m);
  if (branches.size() < m)
    throw NeedsLargerHorizon("only " + std::to_string(branches.size()) + " rays from the start set", branches.size(),
                             horizon * 2);
  std::vector<RayStream> out;
  for (const auto& b : branches) {
    RayStream rest = hosts[b.host].tail(b.from);
    out.push_back(b.lead.empty() ? rest : RayStream::concat(b.lead, rest));
  }
  return out;
}

std::vector<Path> edge_disjoint_ray_heads(const FiniteGraph& fg, const VertexId& v, std::size_t m,
                                          const VertexSet& banned) {
  VertexSet boundary;
  for (int i = 0; i < static_cast<int>(fg.vertex_count()); ++i)
    if (fg.depth(i) >= fg.radius()) boundary.insert(fg.id(i));
  return edge_disjoint_paths_to_set(fg, v, boundary, m, {}, banned);
}

std::vector<int> working_horizons(int first, int horizon) {
  std::vector<int> out;
  for (int w = first; w <= horizon; w *= 2) out.push_back(w);
  if (out.empty()) out.push_back(horizon);
  return out;
}

std::vector<RayStream> edge_disjoint_rays_from(const LazyGraph& g, const VertexId& v, std::size_t m, int horizon) {
  if (m == 1) {
    for (const auto& end : g.ends())
      for (const auto& w : end.witness_rays)
        if (w(0) == v) return {RayStream::from_sequence(g, w)};
  }
  std::size_t achieved = 0;
  int last = horizon;
  for (int w : working_horizons(16, horizon)) {
    if (w <= g.depth(v)) continue;
    auto heads = edge_disjoint_ray_heads(*g.ball(w), v, m);
    achieved = std::max(achieved, heads.size());
    last = w;
    if (heads.size() < m) continue;
    std::vector<StreamObject> objects;
    for (auto& h : heads) objects.push_back({{std::move(h)}});
    auto bundle = StreamBundle::make(g, std::move(objects), w);
    std::vector<RayStream> out;
    for (std::size_t i = 0; i < m; ++i) out.push_back(bundle->arm(i, 0));
    return out;
  }
  throw NeedsLargerHorizon(
      "boundary flow from " + v.str() + " is " + std::to_string(achieved) + " < " + std::to_string(m), achieved,
      std::max(32, last * 2));
}

}  // namespace edr
