#include "edr/connectors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "edr/errors.hpp"

namespace edr {

namespace {

// One connected piece of one member of H.
struct MemberPiece {
  std::size_t member;
  VertexSet vertices;
  FiniteGraph graph;
};

std::vector<MemberPiece> split_members(const FiniteGraph& fg, const std::vector<EdgeList>& H, const VertexSet& S) {
  std::vector<MemberPiece> pieces;
  EdgeSet seen;
  for (std::size_t m = 0; m < H.size(); ++m) {
    FiniteGraph member;
    for (const auto& e : H[m]) {
      if (!fg.has_edge(e.first(), e.second()))
        throw InputError("member " + std::to_string(m) + " uses non-edge " + e.str());
      if (!seen.insert(e).second) throw InputError("members of H share edge " + e.str());
      member.add_edge(e.first(), e.second());
    }
    for (const auto& comp : components(member, {})) {
      MemberPiece piece{m, VertexSet(comp.begin(), comp.end()), {}};
      if (std::none_of(comp.begin(), comp.end(), [&](const VertexId& v) { return S.count(v) != 0; }))
        throw InputError("a component of member " + std::to_string(m) + " misses S");
      piece.graph = member.induced(piece.vertices);
      pieces.push_back(std::move(piece));
    }
  }
  return pieces;
}

Path path_inside(const FiniteGraph& piece, const VertexId& from, const VertexSet& to) {
  return shortest_path(piece, VertexSet{from}, to);
}

}  // namespace

ConnectorResult finite_connector(const FiniteGraph& fg, const std::vector<VertexId>& S,
                                 const std::vector<EdgeList>& H) {
  if (S.empty()) throw InputError("S must be nonempty");
  if (!is_connected(fg)) throw InputError("graph is not connected");
  VertexSet sset;
  for (const auto& s : S) {
    if (!fg.has_vertex(s)) throw InputError("S vertex not in graph: " + s.str());
    sset.insert(s);
  }
  auto pieces = split_members(fg, H, sset);
  EdgeSet h_edges;
  for (const auto& member : H) h_edges.insert(member.begin(), member.end());

  ConnectorResult result;
  std::vector<VertexId> sorted_s(sset.begin(), sset.end());
  std::sort(sorted_s.begin(), sorted_s.end());
  for (const auto& s : sorted_s) result.tree.add_vertex(s);
  std::vector<char> touched(H.size(), 0);

  for (;;) {
    auto comps = components(result.tree, {});
    if (comps.size() <= 1) break;
    if (result.rounds >= sorted_s.size()) throw UpstreamFault("connector did not converge");
    // hulls: component plus every member piece meeting it
    std::vector<VertexSet> core(comps.size());
    std::vector<VertexSet> hull(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
      core[c].insert(comps[c].begin(), comps[c].end());
      hull[c] = core[c];
      for (const auto& p : pieces)
        if (std::any_of(comps[c].begin(), comps[c].end(), [&](const VertexId& v) { return p.vertices.count(v) != 0; }))
          hull[c].insert(p.vertices.begin(), p.vertices.end());
    }
    std::size_t best_a = 0;
    Path best;
    for (std::size_t a = 0; a < comps.size(); ++a) {
      VertexSet others;
      for (std::size_t b = 0; b < comps.size(); ++b)
        if (b != a) others.insert(hull[b].begin(), hull[b].end());
      Path p = shortest_path(fg, hull[a], others, h_edges);
      if (p.empty()) continue;
      if (best.empty() || p.size() < best.size()) {
        best = std::move(p);
        best_a = a;
      }
    }
    if (best.empty()) throw UpstreamFault("no H-free path joins the hulls");
    std::size_t best_b = comps.size();
    for (std::size_t b = 0; b < comps.size(); ++b)
      if (b != best_a && hull[b].count(best.back())) {
        best_b = b;
        break;
      }
    result.tree.add_path(best);
    // extend each end of the bridge into its component through one member piece
    auto attach = [&](const VertexId& end, std::size_t c) {
      if (core[c].count(end)) return;
      for (const auto& p : pieces) {
        if (!p.vertices.count(end)) continue;
        if (std::none_of(core[c].begin(), core[c].end(), [&](const VertexId& v) { return p.vertices.count(v) != 0; }))
          continue;
        Path inside = path_inside(p.graph, end, core[c]);
        if (inside.empty()) continue;
        result.tree.add_path(inside);
        touched[p.member] = 1;
        return;
      }
      throw UpstreamFault("bridge end " + end.str() + " is not attached to its component");
    };
    attach(best.front(), best_a);
    attach(best.back(), best_b);
    ++result.rounds;
  }
  for (std::size_t m = 0; m < H.size(); ++m)
    if (touched[m]) result.touched.push_back(m);
  return result;
}

}  // namespace edr
