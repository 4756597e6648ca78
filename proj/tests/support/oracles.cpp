#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace oracle {

using edr::FiniteGraph;
using edr::VertexId;
using edr::Word;

namespace {

// Reachability avoiding a vertex mask.
bool reaches(const FiniteGraph& fg, const std::vector<int>& from, const std::vector<char>& target,
             const std::vector<char>& blocked) {
  std::vector<char> seen(fg.vertex_count(), 0);
  std::vector<int> stack;
  for (int s : from)
    if (!blocked[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (target[static_cast<std::size_t>(v)]) return true;
    for (int w : fg.adjacent(v))
      if (!seen[static_cast<std::size_t>(w)] && !blocked[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  return false;
}

std::vector<std::string> tokens(const Word& w) {
  std::istringstream in(w.text());
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  if (out.size() == 1 && w.empty()) out.clear();
  return out;
}

std::set<std::string> triples(const std::vector<std::string>& t, const std::string& letter) {
  std::set<std::string> out;
  for (std::size_t i = 1; i + 1 < t.size(); i += 2)
    if (t[i] == letter) out.insert(t[i - 1] + " " + letter + " " + t[i + 1]);
  return out;
}

bool before_all(const std::vector<std::string>& link, const std::vector<std::string>& shape) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < link.size(); i += 2) pos[link[i]] = i;
  for (std::size_t i = 2; i < shape.size(); i += 2) {
    if (!pos.count(shape[i - 2]) || !pos.count(shape[i])) return false;
    if (pos[shape[i - 2]] >= pos[shape[i]]) return false;
  }
  return true;
}

bool link_ok(const std::vector<std::string>& t, const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty() || t.empty()) return false;
  std::multiset<std::string> mine;
  std::set<std::string> distinct;
  for (std::size_t i = 0; i < t.size(); i += 2) {
    mine.insert(t[i]);
    distinct.insert(t[i]);
  }
  if (distinct.size() != mine.size()) return false;
  std::set<std::string> wanted;
  for (std::size_t i = 0; i < a.size(); i += 2) wanted.insert(a[i]);
  for (std::size_t i = 0; i < b.size(); i += 2) wanted.insert(b[i]);
  if (wanted != distinct) return false;
  if (!before_all(t, a) || !before_all(t, b)) return false;
  if (t.front() != a.front() || t.back() != b.back()) return false;
  for (std::size_t i = 1; i < t.size(); i += 2)
    if (t[i] != "l" && t[i] != "m" && t[i] != "r") return false;
  return triples(t, "l") == triples(a, "l") && triples(t, "r") == triples(b, "r");
}

}  // namespace

bool connected(const FiniteGraph& fg) {
  if (fg.vertex_count() == 0) return true;
  std::vector<char> seen(fg.vertex_count(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : fg.adjacent(v))
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == fg.vertex_count();
}

std::size_t min_vertex_cut(const FiniteGraph& fg, const std::vector<VertexId>& sources,
                           const std::vector<VertexId>& sinks) {
  const std::size_t n = fg.vertex_count();
  std::vector<int> from;
  for (const auto& s : sources) from.push_back(fg.index(s));
  std::vector<char> target(n, 0);
  for (const auto& t : sinks) target[static_cast<std::size_t>(fg.index(t))] = 1;
  std::size_t best = n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= best) continue;
    std::vector<char> blocked(n, 0);
    for (std::size_t i = 0; i < n; ++i) blocked[i] = (mask >> i) & 1;
    if (!reaches(fg, from, target, blocked)) best = size;
  }
  return best;
}

std::size_t min_edge_cut(const FiniteGraph& fg, const VertexId& s, const VertexId& t) {
  const std::size_t n = fg.vertex_count();
  const auto si = static_cast<std::size_t>(fg.index(s));
  const auto ti = static_cast<std::size_t>(fg.index(t));
  std::size_t best = fg.edge_count();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (!((mask >> si) & 1) || ((mask >> ti) & 1)) continue;
    std::size_t crossing = 0;
    for (const auto& e : fg.edges()) {
      auto a = static_cast<std::size_t>(fg.index(e.first()));
      auto b = static_cast<std::size_t>(fg.index(e.second()));
      if (((mask >> a) & 1) != ((mask >> b) & 1)) ++crossing;
    }
    best = std::min(best, crossing);
  }
  return best;
}

std::vector<Word> shapes(const std::vector<VertexId>& separator) {
  std::vector<Word> out{Word{}};
  std::vector<VertexId> xs = separator;
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<VertexId> pick;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1) pick.push_back(xs[i]);
    do {
      for (std::size_t letters = 0; letters < (std::size_t{1} << (pick.size() - 1)); ++letters) {
        Word w;
        w.vertices = pick;
        for (std::size_t i = 0; i + 1 < pick.size(); ++i) w.letters.push_back((letters >> i) & 1 ? 'r' : 'l');
        out.push_back(w);
      }
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return out;
}

std::vector<Word> allowed_links(const Word& from, const Word& to) {
  std::vector<Word> out;
  if (from.empty() || to.empty()) return out;
  std::set<VertexId> all(from.vertices.begin(), from.vertices.end());
  all.insert(to.vertices.begin(), to.vertices.end());
  std::vector<VertexId> vs(all.begin(), all.end());
  auto a = tokens(from);
  auto b = tokens(to);
  do {
    std::size_t gaps = vs.size() - 1;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < gaps; ++i) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
      Word w;
      w.vertices = vs;
      std::size_t x = c;
      for (std::size_t i = 0; i < gaps; ++i, x /= 3) w.letters.push_back("lmr"[x % 3]);
      if (link_ok(tokens(w), a, b)) out.push_back(w);
    }
  } while (std::next_permutation(vs.begin(), vs.end()));
  std::sort(out.begin(), out.end());
  return out;
}

bool shaping_selection_exists(const edr::ShapingLevels& levels, std::size_t count) {
  if (count == 0) return true;
  struct Step {
    std::size_t level, index;
    std::vector<std::size_t> members;
  };
  std::vector<Step> chosen;
  std::set<std::vector<long>> dead;  // chosen steps from which no completion exists
  std::function<bool(std::size_t)> search = [&](std::size_t n) -> bool {
    if (n == count) return true;
    std::size_t first_level = chosen.empty() ? 0 : chosen.back().level + 1;
    std::size_t first_index = chosen.empty() ? 0 : chosen.back().index + 1;
    for (std::size_t i = first_level; i < levels.size(); ++i) {
      const auto& lvl = levels[i];
      if (lvl.size() < n + 1) continue;
      const std::size_t window = lvl[0].window();
      for (std::size_t j = first_index; j < window; ++j) {
        // Earlier step must agree at j and on its pair colour up to j.
        std::optional<int> colour;
        bool prev_ok = true;
        if (!chosen.empty()) {
          const Step& p = chosen.back();
          std::set<int> pair;
          for (auto m : p.members) {
            const auto& sh = levels[p.level][m];
            auto c = sh.at(j);
            if (!c || (colour && *colour != *c)) prev_ok = false;
            if (c) colour = c;
            pair.insert(sh.between(p.index, j));
          }
          if (pair.size() != 1) prev_ok = false;
        }
        if (!prev_ok) continue;
        // Every (n+1)-subset of the level whose colours at j agree.
        std::vector<std::size_t> pick;
        std::function<bool(std::size_t)> choose = [&](std::size_t from) -> bool {
          if (pick.size() == n + 1) {
            // What the following step sees: per later index, the shared colour or -1.
            std::vector<long> key{static_cast<long>(n), static_cast<long>(i), static_cast<long>(j)};
            for (std::size_t k = j + 1; k < window; ++k) {
              std::set<int> colours, pairs;
              bool defined = true;
              for (auto m : pick) {
                auto c = lvl[m].at(k);
                if (!c)
                  defined = false;
                else
                  colours.insert(*c);
                pairs.insert(lvl[m].between(j, k));
              }
              key.push_back(defined && colours.size() == 1 && pairs.size() == 1 ? *colours.begin() : -1);
            }
            if (dead.count(key)) return false;
            chosen.push_back({i, j, pick});
            bool ok = search(n + 1);
            chosen.pop_back();
            if (!ok) dead.insert(key);
            return ok;
          }
          for (std::size_t m = from; m < lvl.size(); ++m) {
            auto c = lvl[m].at(j);
            if (!c) continue;
            std::optional<int> want = colour;
            if (!pick.empty()) want = lvl[pick[0]].at(j);
            if (want && *want != *c) continue;
            pick.push_back(m);
            if (choose(m + 1)) return true;
            pick.pop_back();
          }
          return false;
        };
        if (choose(0)) return true;
      }
    }
    return false;
  };
  return search(0);
}

std::pair<long, std::size_t> sentinel_counts(const Word& w) {
  std::string letters = "l";
  for (char c : w.letters) letters += c;
  letters += 'r';
  long lvr = 0, rvl = 0;
  for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
    if (letters[i] == 'l' && letters[i + 1] == 'r') ++lvr;
    if (letters[i] == 'r' && letters[i + 1] == 'l') ++rvl;
  }
  return {lvr - rvl, static_cast<std::size_t>(lvr + rvl)};
}

DegreeFacts degree_facts(const FiniteGraph& fg) {
  DegreeFacts f;
  std::map<VertexId, std::size_t> deg;
  for (const auto& e : fg.edges()) {
    ++deg[e.first()];
    ++deg[e.second()];
  }
  for (const auto& [v, d] : deg) {
    f.max_degree = std::max(f.max_degree, d);
    if (d == 1) f.leaves.push_back(v);
  }
  return f;
}

bool contains_block(const edr::Path& b, const edr::Path& a) {
  if (a.empty()) return true;
  return std::search(b.begin(), b.end(), a.begin(), a.end()) != b.end();
}

}  // namespace oracle
