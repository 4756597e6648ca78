#include "edr/shapes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <utility>

#include "edr/errors.hpp"

namespace edr {

namespace {
const std::string kEmptyText = "\xce\xb5";  // ε
}

std::string Word::text() const {
  if (vertices.empty()) return kEmptyText;
  std::string out = vertices[0].str();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    out += ' ';
    out += letters[i];
    out += ' ';
    out += vertices[i + 1].str();
  }
  return out;
}

Word Word::parse(const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty() || (tokens.size() == 1 && tokens[0] == kEmptyText)) return w;
  if (tokens.size() % 2 == 0) throw InputError("word has a dangling letter: " + text);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i % 2 == 0) {
      w.vertices.emplace_back(tokens[i]);
    } else {
      if (tokens[i] != "l" && tokens[i] != "m" && tokens[i] != "r") throw InputError("bad letter in word: " + text);
      w.letters.push_back(tokens[i][0]);
    }
  }
  return w;
}

Word Word::join(const Word& p, char letter, const Word& q) {
  if (p.empty()) return q;
  if (q.empty()) return p;
  Word w = p;
  w.letters.push_back(letter);
  w.vertices.insert(w.vertices.end(), q.vertices.begin(), q.vertices.end());
  w.letters.insert(w.letters.end(), q.letters.begin(), q.letters.end());
  return w;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.vertices.size() <=> b.vertices.size(); c != 0) return c;
  if (auto c = a.vertices <=> b.vertices; c != 0) return c;
  return a.letters <=> b.letters;
}

bool LinkCheck::violates(const std::string& name) const {
  return std::find(violations.begin(), violations.end(), name) != violations.end();
}

namespace {

void require_beyond(const Path& prefix, const Separation& sep) {
  if (prefix.empty() || sep.side_of(prefix.back()) != Side::B)
    throw NeedsLongerPrefix("prefix does not end beyond the separator");
}

// Letter for a segment from classify(edge), which must agree on all edges.
template <class Classify>
char segment_letter(const Path& p, std::size_t from, std::size_t to, Classify classify) {
  char letter = classify(p[from], p[from + 1]);
  for (std::size_t q = from + 1; q < to; ++q)
    if (classify(p[q], p[q + 1]) != letter)
      throw UpstreamFault("segment " + p[from].str() + " .. " + p[to].str() + " crosses sides");
  return letter;
}

template <class OnSep, class Classify>
Word induce(const Path& prefix, OnSep on_sep, Classify classify) {
  Word w;
  std::optional<std::size_t> prev;
  VertexSet seen;
  for (std::size_t q = 0; q < prefix.size(); ++q) {
    if (!on_sep(prefix[q])) continue;
    if (!seen.insert(prefix[q]).second) throw UpstreamFault("ray repeats " + prefix[q].str());
    if (prev) w.letters.push_back(segment_letter(prefix, *prev, q, classify));
    w.vertices.push_back(prefix[q]);
    prev = q;
  }
  return w;
}

}  // namespace

ShapeWord induce_shape(const Path& prefix, const Separation& sep) {
  require_beyond(prefix, sep);
  return induce(
      prefix, [&](const VertexId& v) { return sep.in_x(v); },
      [&](const VertexId& a, const VertexId& b) { return sep.edge_side(a, b) == Side::A ? 'l' : 'r'; });
}

LinkWord induce_link(const Path& prefix, const Separation& first, const Separation& second) {
  require_beyond(prefix, first);
  require_beyond(prefix, second);
  return induce(
      prefix, [&](const VertexId& v) { return first.in_x(v) || second.in_x(v); },
      [&](const VertexId& a, const VertexId& b) {
        if (first.edge_side(a, b) == Side::A) return 'l';
        if (second.edge_side(a, b) == Side::B) return 'r';
        return 'm';
      });
}

namespace {

std::set<std::pair<VertexId, VertexId>> subwords(const Word& w, char letter) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (std::size_t i = 0; i < w.letters.size(); ++i)
    if (w.letters[i] == letter) out.emplace(w.vertices[i], w.vertices[i + 1]);
  return out;
}

}  // namespace

LinkCheck is_allowed_link(const LinkWord& link, const ShapeWord& from, const ShapeWord& to) {
  LinkCheck out;
  auto fail = [&](const char* name) { out.violations.emplace_back(name); };
  if (from.empty() || to.empty()) fail(bullet::kNonempty);

  std::set<VertexId> mine(link.vertices.begin(), link.vertices.end());
  std::set<VertexId> theirs(from.vertices.begin(), from.vertices.end());
  theirs.insert(to.vertices.begin(), to.vertices.end());
  if (mine != theirs) fail(bullet::kVertexSet);

  std::map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < link.vertices.size(); ++i) pos.emplace(link.vertices[i], i);
  bool ordered = true;
  for (const Word* s : {&from, &to}) {
    for (std::size_t i = 0; i + 1 < s->vertices.size(); ++i) {
      auto a = pos.find(s->vertices[i]);
      auto b = pos.find(s->vertices[i + 1]);
      if (a == pos.end() || b == pos.end() || a->second >= b->second) ordered = false;
    }
  }
  if (!ordered) fail(bullet::kOrder);

  bool ends = !link.empty() && !from.empty() && !to.empty() && link.vertices.front() == from.vertices.front() &&
              link.vertices.back() == to.vertices.back();
  if (!ends) fail(bullet::kEndpoints);

  bool letters_ok =
      link.letters.size() + 1 == std::max<std::size_t>(link.vertices.size(), 1) &&
      std::all_of(link.letters.begin(), link.letters.end(), [](char c) { return c == 'l' || c == 'm' || c == 'r'; });
  if (!letters_ok) fail(bullet::kLetters);

  if (subwords(link, 'l') != subwords(from, 'l')) fail(bullet::kLeftWords);
  if (subwords(link, 'r') != subwords(to, 'r')) fail(bullet::kRightWords);
  if (mine.size() != link.vertices.size()) fail(bullet::kDistinct);
  return out;
}

std::vector<ShapeWord> enumerate_shapes(const std::vector<VertexId>& separator, std::size_t bound) {
  if (separator.size() > bound)
    throw InputError("separator of size " + std::to_string(separator.size()) + " exceeds the shape bound");
  std::vector<VertexId> xs = separator;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<ShapeWord> out{Word{}};
  for (std::size_t n = 1; n <= xs.size(); ++n) {
    std::vector<VertexId> seq;
    std::vector<char> used(xs.size(), 0);
    std::function<void()> pick = [&] {
      if (seq.size() == n) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
          Word w;
          w.vertices = seq;
          for (std::size_t i = 0; i + 1 < n; ++i) w.letters.push_back((mask >> (n - 2 - i)) & 1 ? 'r' : 'l');
          out.push_back(std::move(w));
        }
        return;
      }
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        seq.push_back(xs[i]);
        pick();
        seq.pop_back();
        used[i] = 0;
      }
    };
    pick();
  }
  return out;
}

std::vector<TwoShape> enumerate_two_shapes(const std::vector<VertexId>& separator, bool all_pairs, std::size_t bound) {
  auto shapes = enumerate_shapes(separator, bound);
  std::vector<TwoShape> out;
  for (const auto& a : shapes) {
    std::set<VertexId> av(a.vertices.begin(), a.vertices.end());
    for (const auto& b : shapes) {
      bool disjoint =
          std::none_of(b.vertices.begin(), b.vertices.end(), [&](const VertexId& v) { return av.count(v) != 0; });
      if (all_pairs || disjoint) out.push_back({a, b});
    }
  }
  return out;
}

std::vector<LinkWord> enumerate_allowed_links(const ShapeWord& from, const ShapeWord& to) {
  std::vector<LinkWord> out;
  if (from.empty() || to.empty()) return out;
  std::set<VertexId> all(from.vertices.begin(), from.vertices.end());
  all.insert(to.vertices.begin(), to.vertices.end());
  std::vector<VertexId> vs(all.begin(), all.end());
  // Predecessors each vertex needs placed first.
  std::map<VertexId, std::vector<VertexId>> before;
  for (const Word* s : {&from, &to})
    for (std::size_t i = 0; i + 1 < s->vertices.size(); ++i) before[s->vertices[i + 1]].push_back(s->vertices[i]);
  auto lefts = subwords(from, 'l');
  auto rights = subwords(to, 'r');

  Word cur;
  std::set<VertexId> placed;
  std::function<void()> grow = [&] {
    if (cur.vertices.size() == vs.size()) {
      if (is_allowed_link(cur, from, to).ok()) out.push_back(cur);
      return;
    }
    for (const auto& v : vs) {
      if (placed.count(v)) continue;
      if (cur.empty() && v != from.vertices.front()) continue;
      auto& need = before[v];
      if (!std::all_of(need.begin(), need.end(), [&](const VertexId& u) { return placed.count(u) != 0; })) continue;
      if (!cur.empty()) {
        std::pair<VertexId, VertexId> pair{cur.vertices.back(), v};
        bool l = lefts.count(pair) != 0;
        bool r = rights.count(pair) != 0;
        if (l && r) continue;
        cur.letters.push_back(l ? 'l' : r ? 'r' : 'm');
      }
      cur.vertices.push_back(v);
      placed.insert(v);
      grow();
      placed.erase(v);
      cur.vertices.pop_back();
      if (!cur.vertices.empty()) cur.letters.pop_back();
    }
  };
  grow();
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<VertexId> generic_separator(const std::string& tag, std::size_t k) {
  std::vector<VertexId> xs;
  for (std::size_t i = 0; i < k; ++i) xs.emplace_back(tag + std::to_string(i));
  return xs;
}

struct Counts {
  std::size_t disjoint = 0;
  std::size_t all = 0;
  std::size_t links = 0;
};

const Counts& counts(std::size_t k) {
  static std::mutex mu;
  static std::map<std::size_t, Counts> memo;
  std::lock_guard lock(mu);
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  Counts c;
  auto near = generic_separator("u", k);
  auto far = generic_separator("w", k);
  c.disjoint = enumerate_two_shapes(near).size();
  c.all = enumerate_two_shapes(near, true).size();
  auto s1 = enumerate_shapes(near);
  auto s2 = enumerate_shapes(far);
  for (const auto& a : s1)
    for (const auto& b : s2) c.links = std::max(c.links, enumerate_allowed_links(a, b).size());
  return memo.emplace(k, c).first->second;
}

}  // namespace

std::size_t two_shape_count(std::size_t k) { return counts(k).disjoint; }
std::size_t shape_pair_count(std::size_t k) { return counts(k).all; }
std::size_t link_bound(std::size_t k) { return counts(k).links; }
std::size_t two_shape_link_bound(std::size_t k) { return link_bound(k) * link_bound(k); }

}  // namespace edr
