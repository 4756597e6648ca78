#include "edr/graph_core.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <map>
#include <mutex>

#include "edr/errors.hpp"
#include "edr/flow.hpp"

namespace edr {

std::ostream& operator<<(std::ostream& os, const VertexId& v) { return os << v.str(); }

EdgeId::EdgeId(VertexId a, VertexId b) {
  if (a == b) throw InputError("edge endpoints coincide: " + a.str());
  if (b < a) std::swap(a, b);
  first_ = std::move(a);
  second_ = std::move(b);
}

EdgeList path_edges(const Path& p) {
  EdgeList out;
  for (std::size_t i = 1; i < p.size(); ++i) out.emplace_back(p[i - 1], p[i]);
  return out;
}

// ---------------------------------------------------------------- FiniteGraph

int FiniteGraph::add_vertex(const VertexId& v) {
  auto [it, inserted] = index_.try_emplace(v, static_cast<int>(ids_.size()));
  if (inserted) {
    ids_.push_back(v);
    adj_.emplace_back();
    if (!depth_.empty()) depth_.push_back(-1);
  }
  return it->second;
}

void FiniteGraph::add_edge(const VertexId& a, const VertexId& b) {
  if (a == b) throw InputError("self loop at " + a.str());
  int ia = add_vertex(a);
  int ib = add_vertex(b);
  auto insert = [this](int from, int to) {
    auto& list = adj_[static_cast<std::size_t>(from)];
    auto pos = std::lower_bound(list.begin(), list.end(), to, [this](int x, int y) {
      return ids_[static_cast<std::size_t>(x)] < ids_[static_cast<std::size_t>(y)];
    });
    if (pos != list.end() && *pos == to) return false;
    list.insert(pos, to);
    return true;
  };
  if (insert(ia, ib)) {
    insert(ib, ia);
    ++edge_count_;
  }
}

void FiniteGraph::add_path(const Path& p) {
  if (p.size() == 1) add_vertex(p.front());
  for (std::size_t i = 1; i < p.size(); ++i) add_edge(p[i - 1], p[i]);
}

std::optional<int> FiniteGraph::index_of(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FiniteGraph::index(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw InputError("vertex not in graph: " + v.str());
  return it->second;
}

bool FiniteGraph::has_edge(const VertexId& a, const VertexId& b) const {
  auto ia = index_of(a);
  auto ib = index_of(b);
  if (!ia || !ib) return false;
  const auto& list = adj_[static_cast<std::size_t>(*ia)];
  auto pos = std::lower_bound(list.begin(), list.end(), *ib, [this](int x, int y) {
    return ids_[static_cast<std::size_t>(x)] < ids_[static_cast<std::size_t>(y)];
  });
  return pos != list.end() && *pos == *ib;
}

void FiniteGraph::set_depth(int i, int d) {
  if (depth_.empty()) depth_.assign(ids_.size(), -1);
  depth_[static_cast<std::size_t>(i)] = d;
}

std::vector<VertexId> FiniteGraph::sorted_vertices() const {
  auto out = ids_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> FiniteGraph::edges() const {
  std::vector<EdgeId> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < ids_.size(); ++i)
    for (int j : adj_[i])
      if (ids_[i] < ids_[static_cast<std::size_t>(j)]) out.emplace_back(ids_[i], ids_[static_cast<std::size_t>(j)]);
  std::sort(out.begin(), out.end());
  return out;
}

FiniteGraph FiniteGraph::induced(const VertexSet& keep) const {
  FiniteGraph out(radius_);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!keep.count(ids_[i])) continue;
    int k = out.add_vertex(ids_[i]);
    if (!depth_.empty()) out.set_depth(k, depth_[i]);
  }
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!keep.count(ids_[i])) continue;
    for (int j : adj_[i])
      if (ids_[i] < ids_[static_cast<std::size_t>(j)] && keep.count(ids_[static_cast<std::size_t>(j)]))
        out.add_edge(ids_[i], ids_[static_cast<std::size_t>(j)]);
  }
  return out;
}

// ------------------------------------------------------------------ LazyGraph

struct LazyGraph::Impl {
  std::string name;
  VertexId root;
  NeighborFn oracle;
  std::vector<EndDecl> ends;
  bool infinitely_many_ends = false;
  GraphOptions options;
  std::string params_text = "{}";
  DepthFn depth_hint;

  mutable std::recursive_mutex mu;
  mutable VertexMap<std::vector<VertexId>> neighbor_cache;
  mutable std::vector<VertexId> order;
  mutable VertexMap<int> dist;
  mutable std::vector<std::size_t> layer_start;  // layer r occupies [layer_start[r], layer_start[r+1])
  mutable std::map<int, std::shared_ptr<const FiniteGraph>> balls;

  const std::vector<VertexId>& neighbors(const VertexId& v) const {
    std::lock_guard lock(mu);
    auto it = neighbor_cache.find(v);
    if (it != neighbor_cache.end()) return it->second;
    std::vector<VertexId> list = oracle(v);
    if (list.size() > options.degree_bound) throw OracleFault(v.str(), "neighbor list exceeds degree bound");
    std::sort(list.begin(), list.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] == v) throw OracleFault(v.str(), "self loop");
      if (i > 0 && list[i] == list[i - 1]) throw OracleFault(v.str(), "repeated neighbor " + list[i].str());
    }
    return neighbor_cache.emplace(v, std::move(list)).first->second;
  }

  int explored() const { return static_cast<int>(layer_start.size()) - 1; }

  std::size_t layer_end(int r) const {
    return r + 1 < static_cast<int>(layer_start.size()) ? layer_start[static_cast<std::size_t>(r + 1)] : order.size();
  }

  // Returns false when the graph has no vertices at the next distance.
  bool expand_layer() const {
    int r = explored();
    std::size_t begin = layer_start[static_cast<std::size_t>(r)];
    std::size_t end = order.size();
    if (begin == end) return false;
    layer_start.push_back(end);
    for (std::size_t i = begin; i < end; ++i) {
      VertexId v = order[i];
      for (const auto& w : neighbors(v)) {
        if (dist.count(w)) continue;
        dist.emplace(w, r + 1);
        order.push_back(w);
      }
      if (order.size() > options.vertex_budget)
        throw ResourceLimit(name + ": BFS ball exceeds vertex budget at radius " + std::to_string(r + 1));
    }
    return true;
  }

  void ensure_radius(int n) const {
    if (order.empty()) {
      order.push_back(root);
      dist.emplace(root, 0);
      layer_start.push_back(0);
    }
    while (explored() < n)
      if (!expand_layer()) {
        // finite graph: keep appending empty layers so indices stay valid
        layer_start.push_back(order.size());
      }
  }
};

LazyGraph::LazyGraph(std::string name, VertexId root, NeighborFn neighbors, std::vector<EndDecl> ends,
                     bool infinitely_many_ends, GraphOptions options)
    : impl_(std::make_shared<Impl>()) {
  impl_->name = std::move(name);
  impl_->root = std::move(root);
  impl_->oracle = std::move(neighbors);
  impl_->ends = std::move(ends);
  impl_->infinitely_many_ends = infinitely_many_ends;
  impl_->options = options;
}

const std::string& LazyGraph::name() const { return impl_->name; }
const VertexId& LazyGraph::root() const { return impl_->root; }
const std::vector<EndDecl>& LazyGraph::ends() const { return impl_->ends; }
bool LazyGraph::infinitely_many_ends() const { return impl_->infinitely_many_ends; }
const std::string& LazyGraph::params_text() const { return impl_->params_text; }
void LazyGraph::set_params_text(std::string text) { impl_->params_text = std::move(text); }
void LazyGraph::set_depth_hint(DepthFn fn) { impl_->depth_hint = std::move(fn); }
bool LazyGraph::has_depth_hint() const { return static_cast<bool>(impl_->depth_hint); }

LazyGraph LazyGraph::with_metadata(std::vector<EndDecl> ends, bool infinitely_many_ends) const {
  LazyGraph out(impl_->name, impl_->root, impl_->oracle, std::move(ends), infinitely_many_ends, impl_->options);
  out.impl_->params_text = impl_->params_text;
  out.impl_->depth_hint = impl_->depth_hint;
  return out;
}

const EndDecl& LazyGraph::end(int id) const {
  for (const auto& e : impl_->ends)
    if (e.id == id) return e;
  throw InputError(impl_->name + " declares no end " + std::to_string(id));
}

const std::vector<VertexId>& LazyGraph::neighbors(const VertexId& v) const { return impl_->neighbors(v); }

int LazyGraph::depth(const VertexId& v) const {
  if (impl_->depth_hint)
    if (auto d = impl_->depth_hint(v)) return *d;
  std::lock_guard lock(impl_->mu);
  impl_->ensure_radius(0);
  for (;;) {
    auto it = impl_->dist.find(v);
    if (it != impl_->dist.end()) return it->second;
    if (!impl_->expand_layer()) throw InputError(v.str() + " is not reachable from the root of " + impl_->name);
  }
}

std::shared_ptr<const FiniteGraph> LazyGraph::ball(int n) const {
  if (n < 0) throw InputError("horizon must be non-negative");
  std::lock_guard lock(impl_->mu);
  if (auto it = impl_->balls.find(n); it != impl_->balls.end()) return it->second;
  impl_->ensure_radius(n);
  auto fg = std::make_shared<FiniteGraph>(n);
  std::size_t end = impl_->layer_end(n);
  for (std::size_t i = 0; i < end; ++i) {
    int k = fg->add_vertex(impl_->order[i]);
    fg->set_depth(k, impl_->dist.at(impl_->order[i]));
  }
  for (std::size_t i = 0; i < end; ++i) {
    const VertexId& v = impl_->order[i];
    for (const auto& w : impl_->neighbors(v)) {
      auto d = impl_->dist.find(w);
      if (d == impl_->dist.end() || d->second > n) continue;
      const auto& back = impl_->neighbors(w);
      if (!std::binary_search(back.begin(), back.end(), v))
        throw OracleFault(v.str(), "asymmetric neighbor " + w.str());
      if (v < w) fg->add_edge(v, w);
    }
  }
  impl_->balls.emplace(n, fg);
  return fg;
}

std::vector<VertexId> LazyGraph::bfs_order(int n) const {
  std::lock_guard lock(impl_->mu);
  impl_->ensure_radius(n);
  return {impl_->order.begin(), impl_->order.begin() + static_cast<std::ptrdiff_t>(impl_->layer_end(n))};
}

FiniteGraph truncate(const LazyGraph& g, int n) { return *g.ball(n); }

// ----------------------------------------------------------------- algorithms

int component_labels(const FiniteGraph& fg, const std::vector<char>& removed, std::vector<int>& label) {
  const int n = static_cast<int>(fg.vertex_count());
  label.assign(static_cast<std::size_t>(n), -1);
  int count = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (removed[static_cast<std::size_t>(s)] || label[static_cast<std::size_t>(s)] != -1) continue;
    label[static_cast<std::size_t>(s)] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : fg.adjacent(u))
        if (!removed[static_cast<std::size_t>(w)] && label[static_cast<std::size_t>(w)] == -1) {
          label[static_cast<std::size_t>(w)] = count;
          stack.push_back(w);
        }
    }
    ++count;
  }
  return count;
}

std::vector<std::vector<VertexId>> components(const FiniteGraph& fg, const VertexSet& removed) {
  for (const auto& v : removed)
    if (!fg.has_vertex(v)) throw InputError("removed vertex not in graph: " + v.str());
  std::vector<char> gone(fg.vertex_count(), 0);
  for (const auto& v : removed) gone[static_cast<std::size_t>(fg.index(v))] = 1;
  std::vector<int> label;
  int count = component_labels(fg, gone, label);
  std::vector<std::vector<VertexId>> parts(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < label.size(); ++i)
    if (label[i] >= 0) parts[static_cast<std::size_t>(label[i])].push_back(fg.id(static_cast<int>(i)));
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return parts;
}

bool is_connected(const FiniteGraph& fg) {
  if (fg.vertex_count() == 0) return true;
  std::vector<int> label;
  return component_labels(fg, std::vector<char>(fg.vertex_count(), 0), label) == 1;
}

namespace {

std::vector<int> sorted_indices(const FiniteGraph& fg, const std::vector<VertexId>& vs, const char* what) {
  std::vector<VertexId> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out;
  for (const auto& v : sorted) {
    auto i = fg.index_of(v);
    if (!i) throw InputError(std::string(what) + " vertex not in graph: " + v.str());
    out.push_back(*i);
  }
  return out;
}

struct SplitNetwork {
  FlowNetwork net;
  int source;
  int sink;
};

SplitNetwork build_split_network(const FiniteGraph& fg, const std::vector<int>& sources, const std::vector<int>& sinks,
                                 const std::vector<char>& uncuttable) {
  const int n = static_cast<int>(fg.vertex_count());
  SplitNetwork s{FlowNetwork(2 * n + 2), 2 * n, 2 * n + 1};
  for (int i = 0; i < n; ++i)
    s.net.add_arc(2 * i, 2 * i + 1, uncuttable[static_cast<std::size_t>(i)] ? FlowNetwork::kInfinite : 1);
  for (int i = 0; i < n; ++i)
    for (int j : fg.adjacent(i)) s.net.add_arc(2 * i + 1, 2 * j, FlowNetwork::kInfinite);
  for (int i : sources) s.net.add_arc(s.source, 2 * i, FlowNetwork::kInfinite);
  for (int i : sinks) s.net.add_arc(2 * i + 1, s.sink, FlowNetwork::kInfinite);
  return s;
}

VertexCut cut_from_flow(const FiniteGraph& fg, SplitNetwork& s, int flow, const std::vector<int>& sinks) {
  VertexCut out;
  const int n = static_cast<int>(fg.vertex_count());
  if (flow == 0) {
    out.connected = false;
    out.side_a = fg.sorted_vertices();
    return out;
  }
  auto reach = s.net.residual_reachable(s.source);
  std::vector<char> in_cut(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    if (reach[static_cast<std::size_t>(2 * i)] && !reach[static_cast<std::size_t>(2 * i + 1)]) {
      in_cut[static_cast<std::size_t>(i)] = 1;
      out.cut.push_back(fg.id(i));
    }
  std::vector<int> label;
  component_labels(fg, in_cut, label);
  std::vector<char> b_label(fg.vertex_count() + 1, 0);
  for (int t : sinks)
    if (!in_cut[static_cast<std::size_t>(t)]) b_label[static_cast<std::size_t>(label[static_cast<std::size_t>(t)])] = 1;
  for (int i = 0; i < n; ++i) {
    if (in_cut[static_cast<std::size_t>(i)]) continue;
    (b_label[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])] ? out.side_b : out.side_a)
        .push_back(fg.id(i));
  }
  std::sort(out.cut.begin(), out.cut.end());
  std::sort(out.side_a.begin(), out.side_a.end());
  std::sort(out.side_b.begin(), out.side_b.end());
  return out;
}

void check_disjoint_terminals(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) throw InputError("source and sink sets must be nonempty");
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (!common.empty()) throw InputError("source and sink sets intersect");
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

VertexCut min_vertex_cut(const FiniteGraph& fg, const std::vector<VertexId>& sources,
                         const std::vector<VertexId>& sinks) {
  auto src = sorted_indices(fg, sources, "source");
  auto snk = sorted_indices(fg, sinks, "sink");
  check_disjoint_terminals(src, snk);
  auto s = build_split_network(fg, src, snk, std::vector<char>(fg.vertex_count(), 0));
  int flow = s.net.max_flow(s.source, s.sink);
  return cut_from_flow(fg, s, flow, snk);
}

VertexCut min_vertex_cut_protected(const FiniteGraph& fg, const std::vector<VertexId>& sources,
                                   const std::vector<VertexId>& sinks, const VertexSet& uncuttable) {
  auto src = sorted_indices(fg, sources, "source");
  auto snk = sorted_indices(fg, sinks, "sink");
  check_disjoint_terminals(src, snk);
  std::vector<char> keep(fg.vertex_count(), 0);
  for (const auto& v : uncuttable)
    if (auto i = fg.index_of(v)) keep[static_cast<std::size_t>(*i)] = 1;
  auto s = build_split_network(fg, src, snk, keep);
  const int cap = static_cast<int>(fg.vertex_count()) + 1;
  int flow = s.net.max_flow(s.source, s.sink, cap);
  if (flow >= cap) throw InputError("protected vertices connect sources to sinks; no vertex cut exists");
  return cut_from_flow(fg, s, flow, snk);
}

IndexCut min_vertex_cut_protected(const FiniteGraph& fg, std::vector<int> sources, std::vector<int> sinks,
                                  const std::vector<char>& uncuttable) {
  const int n = static_cast<int>(fg.vertex_count());
  if (uncuttable.size() != fg.vertex_count()) throw InputError("protection mask does not match the graph");
  for (auto* v : {&sources, &sinks}) {
    sort_unique(*v);
    if (!v->empty() && (v->front() < 0 || v->back() >= n)) throw InputError("terminal index out of range");
  }
  check_disjoint_terminals(sources, sinks);
  auto s = build_split_network(fg, sources, sinks, uncuttable);
  const int cap = n + 1;
  int flow = s.net.max_flow(s.source, s.sink, cap);
  if (flow >= cap) throw InputError("protected vertices connect sources to sinks; no vertex cut exists");
  IndexCut out;
  if (flow == 0) {
    out.connected = false;
    return out;
  }
  auto reach = s.net.residual_reachable(s.source);
  for (int i = 0; i < n; ++i)
    if (reach[static_cast<std::size_t>(2 * i)] && !reach[static_cast<std::size_t>(2 * i + 1)]) out.cut.push_back(i);
  std::sort(out.cut.begin(), out.cut.end(), [&](int a, int b) { return fg.id(a) < fg.id(b); });
  return out;
}

std::vector<Path> vertex_disjoint_paths(const FiniteGraph& fg, const std::vector<VertexId>& sources,
                                        const std::vector<VertexId>& sinks) {
  auto src = sorted_indices(fg, sources, "source");
  auto snk = sorted_indices(fg, sinks, "sink");
  check_disjoint_terminals(src, snk);
  auto s = build_split_network(fg, src, snk, std::vector<char>(fg.vertex_count(), 0));
  int flow = s.net.max_flow(s.source, s.sink);
  std::vector<Path> paths;
  // walk flow-carrying arcs from the super source; vertex capacities are 1 so
  // there are no flow cycles through real vertices
  std::map<int, int> consumed;
  for (int k = 0; k < flow; ++k) {
    Path p;
    int node = s.source;
    while (node != s.sink) {
      int next_arc = -1;
      for (int a : s.net.out_arcs(node))
        if (s.net.is_forward(a) && s.net.flow_on(a) - consumed[a] > 0) {
          next_arc = a;
          break;
        }
      if (next_arc < 0) throw UpstreamFault("flow decomposition failed");
      ++consumed[next_arc];
      node = s.net.head(next_arc);
      if (node != s.sink && node % 2 == 0) p.push_back(fg.id(node / 2));
    }
    paths.push_back(std::move(p));
  }
  return paths;
}

namespace {

// Unit-capacity undirected network over fg with optional bans. Returns net
// flow successor lists after cancelling opposite flows.
struct EdgeFlow {
  std::vector<std::vector<int>> succ;  // indices into fg, sorted by id
  std::vector<int> to_sink;
  int value = 0;
};

EdgeFlow edge_flow(const FiniteGraph& fg, int s, const std::vector<int>& targets, int limit,
                   const EdgeSet& banned_edges, const std::vector<char>& banned_vertex) {
  const int n = static_cast<int>(fg.vertex_count());
  FlowNetwork net(n + 1);
  const int sink = n;
  std::vector<std::vector<std::pair<int, int>>> arcs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (banned_vertex[static_cast<std::size_t>(i)]) continue;
    for (int j : fg.adjacent(i)) {
      if (banned_vertex[static_cast<std::size_t>(j)]) continue;
      if (!banned_edges.empty() && banned_edges.count(EdgeId(fg.id(i), fg.id(j)))) continue;
      arcs[static_cast<std::size_t>(i)].emplace_back(j, net.add_arc(i, j, 1));
    }
  }
  std::vector<std::pair<int, int>> sink_arcs;
  for (int t : targets) sink_arcs.emplace_back(t, net.add_arc(t, sink, FlowNetwork::kInfinite));
  EdgeFlow out;
  out.value = net.max_flow(s, sink, limit);
  out.to_sink.assign(static_cast<std::size_t>(n), 0);
  for (auto [t, a] : sink_arcs) out.to_sink[static_cast<std::size_t>(t)] = net.flow_on(a);
  out.succ.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (auto [j, a] : arcs[static_cast<std::size_t>(i)]) {
      if (net.flow_on(a) <= 0) continue;
      int back = 0;
      for (auto [k, b] : arcs[static_cast<std::size_t>(j)])
        if (k == i) back = net.flow_on(b);
      if (back <= 0) out.succ[static_cast<std::size_t>(i)].push_back(j);
    }
  return out;
}

Path loop_erase(const Path& walk) {
  Path out;
  VertexMap<std::size_t> pos;
  for (const auto& v : walk) {
    auto it = pos.find(v);
    if (it != pos.end()) {
      for (std::size_t k = it->second + 1; k < out.size(); ++k) pos.erase(out[k]);
      out.resize(it->second + 1);
      continue;
    }
    pos.emplace(v, out.size());
    out.push_back(v);
  }
  return out;
}

std::vector<Path> decompose(const FiniteGraph& fg, EdgeFlow& flow, int s) {
  std::vector<Path> paths;
  for (int k = 0; k < flow.value; ++k) {
    Path walk{fg.id(s)};
    int u = s;
    while (true) {
      if (flow.to_sink[static_cast<std::size_t>(u)] > 0) {
        --flow.to_sink[static_cast<std::size_t>(u)];
        break;
      }
      auto& next = flow.succ[static_cast<std::size_t>(u)];
      if (next.empty()) throw UpstreamFault("edge flow decomposition failed");
      int v = next.front();
      next.erase(next.begin());
      walk.push_back(fg.id(v));
      u = v;
    }
    paths.push_back(loop_erase(walk));
  }
  return paths;
}

}  // namespace

std::vector<Path> max_edge_disjoint_paths(const FiniteGraph& fg, const VertexId& s, const VertexId& t) {
  if (s == t) throw InputError("s and t must differ");
  auto is = fg.index_of(s);
  auto it = fg.index_of(t);
  if (!is || !it) throw InputError("endpoint not in graph");
  std::vector<char> none(fg.vertex_count(), 0);
  auto flow = edge_flow(fg, *is, {*it}, FlowNetwork::kInfinite, {}, none);
  return decompose(fg, flow, *is);
}

std::vector<Path> edge_disjoint_paths_to_set(const FiniteGraph& fg, const VertexId& s, const VertexSet& targets,
                                             std::size_t limit, const EdgeSet& banned_edges,
                                             const VertexSet& banned_vertices) {
  auto is = fg.index_of(s);
  if (!is) throw InputError("start not in graph: " + s.str());
  std::vector<char> banned(fg.vertex_count(), 0);
  for (const auto& v : banned_vertices)
    if (auto i = fg.index_of(v)) banned[static_cast<std::size_t>(*i)] = 1;
  std::vector<VertexId> sorted_targets(targets.begin(), targets.end());
  std::sort(sorted_targets.begin(), sorted_targets.end());
  std::vector<int> tix;
  for (const auto& t : sorted_targets)
    if (auto i = fg.index_of(t); i && *i != *is) tix.push_back(*i);
  if (tix.empty() || limit == 0) return {};
  int cap = static_cast<int>(std::min<std::size_t>(limit, FlowNetwork::kInfinite));
  auto flow = edge_flow(fg, *is, tix, cap, banned_edges, banned);
  return decompose(fg, flow, *is);
}

Path shortest_path(const FiniteGraph& fg, const VertexSet& from, const VertexSet& to, const EdgeSet& banned_edges,
                   const VertexSet& banned_vertices) {
  std::vector<VertexId> starts;
  for (const auto& v : from)
    if (fg.has_vertex(v) && !banned_vertices.count(v)) starts.push_back(v);
  std::sort(starts.begin(), starts.end());
  for (const auto& v : starts)
    if (to.count(v)) return {v};
  std::vector<int> parent(fg.vertex_count(), -2);
  std::deque<int> queue;
  for (const auto& v : starts) {
    int i = fg.index(v);
    parent[static_cast<std::size_t>(i)] = -1;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : fg.adjacent(u)) {
      if (parent[static_cast<std::size_t>(w)] != -2) continue;
      if (banned_vertices.count(fg.id(w))) continue;
      if (!banned_edges.empty() && banned_edges.count(EdgeId(fg.id(u), fg.id(w)))) continue;
      parent[static_cast<std::size_t>(w)] = u;
      if (to.count(fg.id(w))) {
        Path p;
        for (int x = w; x != -1; x = parent[static_cast<std::size_t>(x)]) p.push_back(fg.id(x));
        std::reverse(p.begin(), p.end());
        return p;
      }
      queue.push_back(w);
    }
  }
  return {};
}

}  // namespace edr
