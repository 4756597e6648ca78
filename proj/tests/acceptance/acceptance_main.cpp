// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "edr/connectors.hpp"
#include "edr/errors.hpp"
#include "edr/extraction.hpp"
#include "edr/instances.hpp"
#include "edr/io.hpp"
#include "edr/pipeline.hpp"
#include "edr/rays.hpp"
#include "edr/separations.hpp"
#include "edr/shapes.hpp"
#include "edr/shaping.hpp"
#include "edr/verify_suite.hpp"
#include "families.hpp"
#include "oracles.hpp"

using namespace edr;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  // First failure wins the detail line.
  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<Verdict()> run;
};

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

bool prefix_stable(const Path& now, const Path& later) { return oracle::contains_block(later, now); }

// ------------------------------------------------------------------ 1

Verdict connector_fuzz() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::size_t worst = 0, cases = 0;
  for (; cases < 250 && v.pass; ++cases) {
    auto c = random_connector_case(rng, 40);
    const std::string tag = "case " + std::to_string(cases) + ": ";
    ConnectorResult res;
    try {
      res = finite_connector(c.graph, c.S, c.H);
    } catch (const Error& e) {
      v.require(false, tag + e.what());
      break;
    }
    v.require(oracle::connected(res.tree), tag + "connector is disconnected");
    for (const auto& s : c.S) v.require(res.tree.has_vertex(s), tag + "connector misses " + s.str());
    for (const auto& e : res.tree.edges())
      v.require(c.graph.has_edge(e.first(), e.second()), tag + "connector uses non-edge " + e.str());
    std::vector<std::size_t> touched;
    for (std::size_t m = 0; m < c.H.size(); ++m)
      for (const auto& e : c.H[m])
        if (res.tree.has_edge(e.first(), e.second())) {
          touched.push_back(m);
          break;
        }
    v.require(touched == res.touched, tag + "reported touched members differ from the edges used");
    v.require(touched.size() + 2 <= std::max<std::size_t>(2, 2 * c.S.size()),
              tag + std::to_string(touched.size()) + " members touched for |S| = " + std::to_string(c.S.size()));
    worst = std::max(worst, touched.size());
  }
  if (v.pass) v.detail = std::to_string(cases) + " graphs, at most " + std::to_string(worst) + " members touched";
  return v;
}

// ------------------------------------------------------------------ 2

Verdict ladder_capture() {
  Verdict v;
  auto g = instance("thick_ladder");
  auto seq = capture_end(g, 0, 10, 200);
  v.require(seq.seps.size() == 10, "got " + std::to_string(seq.seps.size()) + " separations");
  for (const auto& s : seq.seps) v.require(s.order() == 2, "separator of order " + std::to_string(s.order()));
  auto report = verify_capture(seq, g, 200);
  v.require(report.ok() && report.bullets.size() == 5, "full sequence fails " + report.first_failure());
  std::size_t subsequences = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << seq.seps.size()) && v.pass; ++mask) {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < seq.seps.size(); ++j)
      if ((mask >> j) & 1) keep.push_back(j);
    auto sub = verify_capture(subsequence(seq, keep), g, 200);
    v.require(sub.ok(), "subsequence " + std::to_string(mask) + " fails " + sub.first_failure());
    ++subsequences;
  }
  if (v.pass)
    v.detail = "10 separations of order 2, 5 conditions hold, " + std::to_string(subsequences) + " subsequences pass";
  return v;
}

// ------------------------------------------------------------------ 3

Verdict shape_counts() {
  Verdict v;
  v.require(two_shape_count(1) == 3, "two_shape_count(1) = " + std::to_string(two_shape_count(1)));
  std::vector<std::string> got;
  for (const auto& w : enumerate_shapes({"u", "v"})) got.push_back(w.text());
  std::set<std::string> want{"ε", "u", "v", "u l v", "u r v", "v l u", "v r u"};
  v.require(std::set<std::string>(got.begin(), got.end()) == want && got.size() == want.size(),
            "two-vertex shapes are " + join(got));
  v.require(two_shape_count(2) == 15, "two_shape_count(2) = " + std::to_string(two_shape_count(2)));
  v.require(link_bound(2) == 2, "link_bound(2) = " + std::to_string(link_bound(2)));
  v.require(shape_pair_count(2) == 49, "shape_pair_count(2) = " + std::to_string(shape_pair_count(2)));

  // Closure both ways: every listed link passes the checker, and every word
  // the checker accepts over the vertex union is listed.
  std::size_t pairs = 0, links = 0;
  for (const auto& a : enumerate_shapes({"u", "v"}))
    for (const auto& b : enumerate_shapes({"x", "y"})) {
      if (a.empty() || b.empty()) continue;
      ++pairs;
      auto listed = enumerate_allowed_links(a, b);
      links += listed.size();
      for (const auto& w : listed) v.require(is_allowed_link(w, a, b).ok(), "listed link " + w.text() + " is rejected");
      std::set<VertexId> all(a.vertices.begin(), a.vertices.end());
      all.insert(b.vertices.begin(), b.vertices.end());
      std::vector<VertexId> order(all.begin(), all.end());
      std::set<Word> accepted;
      do {
        std::size_t combos = 1;
        for (std::size_t i = 1; i < order.size(); ++i) combos *= 3;
        for (std::size_t c = 0; c < combos; ++c) {
          Word w;
          w.vertices = order;
          for (std::size_t i = 1, x = c; i < order.size(); ++i, x /= 3) w.letters.push_back("lmr"[x % 3]);
          if (is_allowed_link(w, a, b).ok()) accepted.insert(w);
        }
      } while (std::next_permutation(order.begin(), order.end()));
      v.require(accepted == std::set<Word>(listed.begin(), listed.end()),
                "accepted and listed links differ for " + a.text() + " -> " + b.text());
      auto text_rules = oracle::allowed_links(a, b);
      v.require(text_rules == std::vector<Word>(accepted.begin(), accepted.end()),
                "text rules disagree for " + a.text() + " -> " + b.text());
    }
  if (v.pass)
    v.detail = "two_shape_count(1)=3 two_shape_count(2)=15 link_bound(2)=2 shape_pair_count(2)=49; " +
               std::to_string(pairs) + " shape pairs, " + std::to_string(links) + " links closed both ways";
  return v;
}

// ------------------------------------------------------------------ 4

Verdict strand_facts() {
  Verdict v;
  std::mt19937_64 rng(77);
  std::size_t families_checked = 0, strands = 0, attempts = 0;
  while (families_checked < 1000 && v.pass) {
    ++attempts;
    if (attempts > 5000) {
      v.require(false, "only " + std::to_string(families_checked) + " aligned families in 5000 draws");
      break;
    }
    auto c = families::random_aligned_case(rng);
    if (!c) continue;
    ++families_checked;
    for (std::size_t i = 0; i < c->m; ++i)
      for (int side = 0; side < 2; ++side) {
        const auto& s = c->strands[i];
        const FiniteGraph& g = side ? s.second : s.first;
        const std::string tag =
            "family " + std::to_string(families_checked) + " level " + std::to_string(i + 1) + (side ? " T: " : " S: ");
        auto facts = oracle::degree_facts(g);
        v.require(facts.max_degree <= 2, tag + "degree " + std::to_string(facts.max_degree));
        std::size_t base_leaves = 0;
        for (const auto& x : facts.leaves) {
          v.require(s.base.count(x) || s.frontier.count(x), tag + "leaf " + x.str() + " away from base and frontier");
          base_leaves += s.base.count(x);
        }
        v.require(base_leaves % 2 == 1, tag + std::to_string(base_leaves) + " base leaves");
        const auto& shape = side ? c->aligned.shape_here[i].second : c->aligned.shape_here[i].first;
        auto [diff, total] = oracle::sentinel_counts(shape);
        v.require(diff == 1, tag + "lvr - rvl = " + std::to_string(diff) + " in " + shape.text());
        v.require(total == base_leaves,
                  tag + "word count " + std::to_string(total) + " vs " + std::to_string(base_leaves) + " base leaves");
        auto deg = check_strand_degrees(s, c->aligned, side == 1);
        auto par = check_parity(s, shape, side == 1);
        v.require(deg.ok() && par.ok(), tag + "library check disagrees");
        ++strands;
      }
  }
  if (v.pass)
    v.detail = std::to_string(families_checked) + " aligned families (" + std::to_string(attempts) + " draws), " +
               std::to_string(strands) + " strand graphs";
  return v;
}

// ------------------------------------------------------------------ 5

Verdict two_ray_stream() {
  Verdict v;
  auto g = instance("thick_ladder");
  auto seq = capture_end_window(g, 0, 300);
  auto run = two_rays_stream(*canonical_generator(g), seq, 10, 300);
  v.require(run.rays.size() == 10, std::to_string(run.rays.size()) + " 2-rays");
  std::vector<Path> later;
  for (std::size_t i = 0; i < run.rays.size(); ++i) {
    const auto& t = run.rays[i];
    for (const RayStream* r : {&t.first, &t.second}) {
      Path now = r->at(300), ext = r->at(600);
      v.require(now.size() <= ext.size() && std::equal(now.begin(), now.end(), ext.begin()),
                "2-ray " + std::to_string(i) + " changed its prefix");
      v.require(is_simple(ext) && is_walk_in(g, ext), "2-ray " + std::to_string(i) + " is not a path of the graph");
      later.push_back(std::move(ext));
    }
    std::set<VertexId> a(later[later.size() - 2].begin(), later[later.size() - 2].end());
    for (const auto& x : later.back()) v.require(!a.count(x), "2-ray " + std::to_string(i) + " meets itself");
  }
  if (auto c = first_edge_conflict(later))
    v.require(false, "rays " + std::to_string(c->first) + " and " + std::to_string(c->second) + " share an edge");
  if (v.pass) v.detail = "10 edge-disjoint 2-rays, prefixes at 300 kept at 600";
  return v;
}

// ------------------------------------------------------------------ 6

Verdict one_ended() {
  Verdict v;
  auto g = instance("thick_ladder");
  auto res = extract_double_rays(g, canonical_generator(g), 10, 300);
  v.require(res.tag.kind == CaseKind::OneThinEnd, "classified as " + res.tag.text());
  v.require(res.double_rays.size() == 10, std::to_string(res.double_rays.size()) + " double rays");
  auto audit = audit_double_rays(g, res.double_rays, 600);
  v.require(audit.empty(), audit.empty() ? "" : audit.front());
  std::set<std::size_t> regions(res.connector_regions.begin(), res.connector_regions.end());
  v.require(res.connector_regions.size() == 10 && regions.size() == 10, "connector regions repeat");
  for (std::size_t i = 0; i < res.double_rays.size(); ++i)
    v.require(prefix_stable(res.double_rays[i].at(300), res.double_rays[i].at(600)),
              "double ray " + std::to_string(i) + " changed under doubling");
  if (v.pass) {
    std::string rs;
    for (auto r : res.connector_regions) rs += " " + std::to_string(r);
    v.detail = "10 edge-disjoint double rays, regions" + rs;
  }
  return v;
}

// ------------------------------------------------------------------ 7

Verdict two_ended() {
  Verdict v;
  auto g = instance("double_thick_ladder");
  const int h = 300, inner = 150;
  auto res = extract_double_rays(g, canonical_generator(g), 10, h);
  v.require(res.tag.kind == CaseKind::TwoThinEnds, "classified as " + res.tag.text());
  v.require(res.double_rays.size() == 10, std::to_string(res.double_rays.size()) + " double rays");
  auto audit = audit_double_rays(g, res.double_rays, 2 * h);
  v.require(audit.empty(), audit.empty() ? "" : audit.front());

  // End components: pieces of the ball beyond depth 150, named by the end
  // whose witness ray runs through them.
  auto ball = g.ball(h);
  VertexSet core;
  for (const auto& x : ball->vertices())
    if (ball->depth(x) <= inner) core.insert(x);
  std::map<VertexId, int> end_of;
  for (const auto& part : components(*ball, core)) {
    std::set<VertexId> inside(part.begin(), part.end());
    for (const auto& end : g.ends())
      for (const auto& w : end.witness_rays)
        for (std::size_t n = 0; n < 4 * static_cast<std::size_t>(h); ++n)
          if (inside.count(w(n))) {
            for (const auto& x : part) end_of[x] = end.id;
            break;
          }
  }
  auto end_at = [&](const Path& arm) -> int {
    for (auto it = arm.rbegin(); it != arm.rend(); ++it)
      if (ball->has_vertex(*it) && ball->depth(*it) >= inner + 1) return end_of.count(*it) ? end_of[*it] : -1;
    return -1;
  };
  for (std::size_t i = 0; i < res.double_rays.size(); ++i) {
    const auto& d = res.double_rays[i];
    Path left = d.left().at(h), right = d.right().at(h);
    int dl = 0, dr = 0;
    for (const auto& x : left) dl = std::max(dl, g.depth(x));
    for (const auto& x : right) dr = std::max(dr, g.depth(x));
    const std::string tag = "double ray " + std::to_string(i) + ": ";
    v.require(dl >= inner && dr >= inner, tag + "depths " + std::to_string(dl) + " and " + std::to_string(dr));
    int el = end_at(left), er = end_at(right);
    v.require(el >= 0 && er >= 0 && el != er,
              tag + "arms end in components of ends " + std::to_string(el) + " and " + std::to_string(er));
    v.require(prefix_stable(d.at(h), d.at(2 * h)), tag + "changed under doubling");
  }
  if (v.pass) v.detail = res.tag.text() + ", 10 double rays reach depth 150 toward both ends";
  return v;
}

// ------------------------------------------------------------------ 8

Verdict tree() {
  Verdict v;
  auto g = instance("binary_tree");
  auto res = extract_double_rays(g, std::nullopt, 25, 300);
  v.require(res.tag.kind == CaseKind::InfinitelyManyEnds, "classified as " + res.tag.text());
  v.require(res.double_rays.size() == 25, std::to_string(res.double_rays.size()) + " double rays");
  v.require(res.branch_counts.size() == 25, std::to_string(res.branch_counts.size()) + " branch counts");
  std::size_t least = 1000;
  for (auto c : res.branch_counts) least = std::min(least, c);
  v.require(least >= 3, "a peel left " + std::to_string(least) + " deep branches");
  auto audit = audit_double_rays(g, res.double_rays, 600);
  v.require(audit.empty(), audit.empty() ? "" : audit.front());
  if (v.pass) v.detail = "25 edge-disjoint double rays, fewest deep branches " + std::to_string(least);
  return v;
}

// ------------------------------------------------------------------ 9

Shaping window_two(std::optional<int> a, std::optional<int> b, int pair) {
  Shaping s;
  s.colour = {a, b};
  s.pair_colour = {{0, pair}, {0, 0}};
  return s;
}

void check_instance(Verdict& v, const ShapingLevels& inst, const std::string& tag) {
  std::size_t n = longest_shaping_selection(inst);
  v.require(oracle::shaping_selection_exists(inst, n), tag + ": no selection of length " + std::to_string(n));
  v.require(!oracle::shaping_selection_exists(inst, n + 1),
            tag + ": missed a selection of length " + std::to_string(n + 1));
  if (n == 0) return;
  auto problems = check_shaping_selection(inst, shaping_select(inst, n));
  v.require(problems.empty(), tag + ": " + (problems.empty() ? "" : problems.front()));
}

Verdict shapings() {
  Verdict v;
  std::vector<Shaping> states;
  for (int a : {0, 1})
    for (int b : {0, 1})
      for (int p : {0, 1}) states.push_back(window_two(a, b, p));
  std::size_t exhaustive = 0;
  for (std::size_t levels = 1; levels <= 3 && v.pass; ++levels) {
    const std::size_t cells = levels * (levels + 1) / 2;
    std::vector<std::size_t> pick(cells, 0);
    while (v.pass) {
      ShapingLevels inst(levels);
      for (std::size_t i = 0, c = 0; i < levels; ++i)
        for (std::size_t m = 0; m <= i; ++m) inst[i].push_back(states[pick[c++]]);
      check_instance(v, inst, "exhaustive " + std::to_string(exhaustive));
      ++exhaustive;
      std::size_t pos = 0;
      while (pos < cells && ++pick[pos] == states.size()) pick[pos++] = 0;
      if (pos == cells) break;
    }
  }
  std::mt19937_64 rng(99);
  std::size_t steps = 0;
  for (int t = 0; t < 500 && v.pass; ++t) {
    auto inst = random_shaping_levels(rng, 1 + draw(rng, 12), 2 + draw(rng, 4), 1 + static_cast<int>(draw(rng, 2)),
                                      1 + static_cast<int>(draw(rng, 2)), static_cast<unsigned>(draw(rng, 40)));
    check_instance(v, inst, "random " + std::to_string(t));
    steps += longest_shaping_selection(inst);
  }
  if (v.pass)
    v.detail =
        std::to_string(exhaustive) + " exhaustive and 500 random instances, " + std::to_string(steps) + " random steps";
  return v;
}

// ------------------------------------------------------------------ 10

std::string run_outputs(unsigned long long seed) {
  std::ostringstream out;
  auto ladder = instance("thick_ladder");
  auto res = extract_double_rays(ladder, canonical_generator(ladder), 4, 128);
  out << result_json(result_record(ladder.name(), res, 4));
  auto tree = instance("binary_tree");
  out << result_json(result_record(tree.name(), extract_double_rays(tree, std::nullopt, 5, 64), 5));
  out << capture_json(capture_end(ladder, 0, 10, 200));
  SuiteOptions opt;
  opt.seed = seed;
  out << checks_json(run_verify_suite(opt), seed);
  return out.str();
}

Verdict determinism() {
  Verdict v;
  auto first = run_outputs(7);
  auto second = run_outputs(7);
  v.require(first == second, "outputs differ between runs with seed 7");
  if (v.pass) v.detail = std::to_string(first.size()) + " bytes of result, capture and check JSON identical";
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "connector fuzz", 5, connector_fuzz},
      {2, "thick_ladder capture", 2, ladder_capture},
      {3, "shape and link counts", 5, shape_counts},
      {4, "strand degree and parity", 30, strand_facts},
      {5, "2-ray stream on thick_ladder", 10, two_ray_stream},
      {6, "one-ended double rays", 15, one_ended},
      {7, "two-ended double rays", 15, two_ended},
      {8, "binary tree double rays", 5, tree},
      {9, "shaping selection", 60, shapings},
      {10, "deterministic JSON", 120, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (v.pass && secs >= c.limit_seconds) {
      v.pass = false;
      v.detail = "over the time limit; " + v.detail;
    }
    if (!v.pass) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, c.limit_seconds);
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << c.number << "] " << c.name << " (" << timing << "): " << v.detail
              << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
