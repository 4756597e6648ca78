#include "edr/verify_suite.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "edr/connectors.hpp"
#include "edr/errors.hpp"
#include "edr/extraction.hpp"
#include "edr/instances.hpp"
#include "edr/pipeline.hpp"
#include "edr/separations.hpp"

namespace edr {

std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return bound == 0 ? 0 : rng() % bound; }

ConnectorCase random_connector_case(std::mt19937_64& rng, std::size_t max_vertices) {
  ConnectorCase c;
  const std::size_t n = 2 + draw(rng, max_vertices - 1);
  auto name = [](std::size_t i) { return VertexId("g" + std::to_string(i)); };
  for (std::size_t i = 0; i < n; ++i) c.graph.add_vertex(name(i));
  for (std::size_t i = 1; i < n; ++i) c.graph.add_edge(name(i), name(draw(rng, i)));
  const std::size_t extra = draw(rng, 2 * n);
  for (std::size_t e = 0; e < extra; ++e) {
    std::size_t a = draw(rng, n), b = draw(rng, n);
    if (a != b) c.graph.add_edge(name(a), name(b));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i-- > 1;) std::swap(order[i], order[draw(rng, i + 1)]);
  const std::size_t s = 1 + draw(rng, std::min<std::size_t>(n, 6));
  for (std::size_t i = 0; i < s; ++i) c.S.push_back(name(order[i]));
  std::sort(c.S.begin(), c.S.end());

  // Members are random walks from a terminal over edges no member has used.
  EdgeSet used;
  const std::size_t members = draw(rng, 9);
  for (std::size_t m = 0; m < members; ++m) {
    VertexId cur = c.S[draw(rng, c.S.size())];
    EdgeList edges;
    const std::size_t steps = 1 + draw(rng, 10);
    for (std::size_t t = 0; t < steps; ++t) {
      std::vector<VertexId> options;
      for (int j : c.graph.adjacent(c.graph.index(cur))) {
        EdgeId e(cur, c.graph.id(j));
        if (!used.count(e)) options.push_back(c.graph.id(j));
      }
      if (options.empty()) break;
      VertexId next = options[draw(rng, options.size())];
      EdgeId e(cur, next);
      used.insert(e);
      edges.push_back(e);
      cur = next;
    }
    if (!edges.empty()) c.H.push_back(std::move(edges));
  }
  return c;
}

ShapingLevels random_shaping_levels(std::mt19937_64& rng, std::size_t levels, std::size_t window, int colours,
                                    int pair_colours, unsigned undefined_percent) {
  ShapingLevels out(levels);
  for (std::size_t i = 0; i < levels; ++i)
    for (std::size_t m = 0; m <= i; ++m) {
      Shaping s;
      s.colour.resize(window);
      s.pair_colour.assign(window, std::vector<int>(window, 0));
      const std::size_t keep = draw(rng, window);
      for (std::size_t j = 0; j < window; ++j) {
        if (j == keep || draw(rng, 100) >= undefined_percent)
          s.colour[j] = static_cast<int>(draw(rng, static_cast<std::size_t>(colours)));
        for (std::size_t j2 = j + 1; j2 < window; ++j2)
          s.pair_colour[j][j2] = static_cast<int>(draw(rng, static_cast<std::size_t>(pair_colours)));
      }
      out[i].push_back(std::move(s));
    }
  return out;
}

namespace {

CheckRecord check_capture(const std::string& label, const LazyGraph& g, int end, std::size_t count, int horizon,
                          std::optional<std::size_t> corrupt) {
  CheckRecord rec{label, true, ""};
  try {
    auto seq = capture_end(g, end, count, horizon);
    if (corrupt) {
      if (*corrupt >= seq.seps.size()) throw InputError("no separation " + std::to_string(*corrupt) + " to corrupt");
      auto sep = seq.seps[*corrupt].separator();
      sep.pop_back();
      seq.seps[*corrupt] = Separation(sep, seq.seps[*corrupt].truncation_ptr());
    }
    auto report = verify_capture(seq, g, horizon);
    rec.pass = report.ok();
    rec.detail = report.ok() ? std::to_string(seq.seps.size()) + " separations of order " + std::to_string(seq.k)
                             : "fails " + report.first_failure();
  } catch (const Error& e) {
    rec.pass = false;
    rec.detail = e.what();
  }
  return rec;
}

CheckRecord check_connectors(std::mt19937_64& rng, std::size_t cases) {
  CheckRecord rec{"connector/fuzz", true, ""};
  std::size_t worst = 0;
  for (std::size_t t = 0; t < cases && rec.pass; ++t) {
    auto c = random_connector_case(rng);
    auto fail = [&](const std::string& why) {
      rec.pass = false;
      rec.detail = "case " + std::to_string(t) + ": " + why;
    };
    ConnectorResult res;
    try {
      res = finite_connector(c.graph, c.S, c.H);
    } catch (const Error& e) {
      fail(e.what());
      break;
    }
    if (!is_connected(res.tree)) fail("connector is disconnected");
    for (const auto& s : c.S)
      if (!res.tree.has_vertex(s)) fail("connector misses " + s.str());
    if (res.touched.size() + 2 > 2 * c.S.size()) fail("too many members touched");
    std::set<std::size_t> touched(res.touched.begin(), res.touched.end());
    for (std::size_t m = 0; m < c.H.size(); ++m) {
      if (touched.count(m)) continue;
      for (const auto& e : c.H[m])
        if (res.tree.has_edge(e.first(), e.second())) fail("shares an edge with untouched member " + std::to_string(m));
    }
    worst = std::max(worst, res.touched.size());
  }
  if (rec.pass) rec.detail = std::to_string(cases) + " cases, at most " + std::to_string(worst) + " members touched";
  return rec;
}

CheckRecord check_strands() {
  CheckRecord rec{"strands/thick_ladder", true, ""};
  try {
    auto g = instance("thick_ladder");
    auto seq = capture_end_window(g, 0, 128);
    auto run = two_rays_stream(*canonical_generator(g), seq, 4, 128);
    std::vector<Path> prefixes;
    for (const auto& t : run.rays) {
      prefixes.push_back(t.first.at(128));
      prefixes.push_back(t.second.at(128));
    }
    if (auto c = first_edge_conflict(prefixes)) {
      rec.pass = false;
      rec.detail = "rays " + std::to_string(c->first) + " and " + std::to_string(c->second) + " share an edge";
    } else {
      rec.detail = std::to_string(run.rays.size()) + " edge-disjoint 2-rays from checked strands";
    }
  } catch (const Error& e) {
    rec.pass = false;
    rec.detail = e.what();
  }
  return rec;
}

CheckRecord check_shapings(std::mt19937_64& rng, std::size_t cases) {
  CheckRecord rec{"shaping/random", true, ""};
  std::size_t total = 0;
  for (std::size_t t = 0; t < cases && rec.pass; ++t) {
    auto levels = random_shaping_levels(rng, 1 + draw(rng, 12), 2 + draw(rng, 5), 1 + static_cast<int>(draw(rng, 2)),
                                        1 + static_cast<int>(draw(rng, 2)), static_cast<unsigned>(draw(rng, 40)));
    std::size_t n = longest_shaping_selection(levels);
    total += n;
    if (n == 0) continue;
    auto problems = check_shaping_selection(levels, shaping_select(levels, n));
    if (!problems.empty()) {
      rec.pass = false;
      rec.detail = "case " + std::to_string(t) + ": " + problems.front();
    }
  }
  if (rec.pass) rec.detail = std::to_string(cases) + " cases, " + std::to_string(total) + " steps selected";
  return rec;
}

CheckRecord check_run(const std::string& name, std::size_t m, int horizon) {
  CheckRecord rec{"extract/" + name, true, ""};
  try {
    auto g = instance(name);
    auto res = extract_double_rays(g, canonical_generator(g), m, horizon);
    auto problems = audit_double_rays(g, res.double_rays, 2 * horizon);
    rec.pass = problems.empty() && res.double_rays.size() == m;
    rec.detail = res.tag.text() + ", " + std::to_string(res.double_rays.size()) + " double rays" +
                 (problems.empty() ? "" : ", " + problems.front());
  } catch (const Error& e) {
    rec.pass = false;
    rec.detail = e.what();
  }
  return rec;
}

}  // namespace

std::vector<CheckRecord> run_verify_suite(const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<CheckRecord> out;
  auto ladder = instance("thick_ladder");
  out.push_back(check_capture("capture/thick_ladder", ladder, 0, 10, 200, std::nullopt));
  if (options.corrupt_separator)
    out.push_back(check_capture("capture/thick_ladder/corrupted", ladder, 0, 10, 200, options.corrupt_separator));
  out.push_back(check_connectors(rng, options.connector_cases));
  out.push_back(check_strands());
  out.push_back(check_shapings(rng, options.shaping_cases));
  out.push_back(check_run("binary_tree", 5, 64));
  out.push_back(check_run("thick_ladder", 3, 128));
  out.push_back(check_run("double_thick_ladder", 3, 64));
  return out;
}

}  // namespace edr
