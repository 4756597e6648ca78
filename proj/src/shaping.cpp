#include "edr/shaping.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "edr/errors.hpp"

namespace edr {

namespace {

struct Dense {
  std::size_t level_count = 0, window = 0, colour_count = 0, pair_count = 0;
  // colour index per level, member, window index; colour_count means undefined
  std::vector<std::vector<std::vector<std::size_t>>> colour_at;
  std::vector<std::vector<std::vector<std::vector<std::size_t>>>> pair_at;
  std::vector<int> colours;
  std::vector<int> pair_colours;
};

Dense densify(const ShapingLevels& levels) {
  Dense d;
  d.level_count = levels.size();
  if (d.level_count == 0) return d;
  d.window = levels[0].empty() ? 0 : levels[0][0].window();
  std::set<int> cs, ps;
  for (std::size_t i = 0; i < d.level_count; ++i) {
    if (levels[i].size() != i + 1)
      throw InputError("level " + std::to_string(i) + " must hold " + std::to_string(i + 1) + " shapings");
    for (const auto& s : levels[i]) {
      if (s.window() != d.window || s.pair_colour.size() != d.window)
        throw InputError("shapings disagree on the window length");
      bool any = false;
      for (std::size_t j = 0; j < d.window; ++j) {
        if (s.pair_colour[j].size() != d.window) throw InputError("pair colouring is not square");
        if (s.colour[j]) {
          cs.insert(*s.colour[j]);
          any = true;
        }
        for (std::size_t j2 = j + 1; j2 < d.window; ++j2) ps.insert(s.between(j, j2));
      }
      if (!any)
        throw NeedsLargerHorizon("a shaping of level " + std::to_string(i) + " has no defined colour in the window", 0,
                                 0);
    }
  }
  d.colours.assign(cs.begin(), cs.end());
  d.pair_colours.assign(ps.begin(), ps.end());
  d.colour_count = d.colours.size();
  d.pair_count = d.pair_colours.size();
  auto rank = [](const std::vector<int>& v, int x) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  d.colour_at.resize(d.level_count);
  d.pair_at.resize(d.level_count);
  for (std::size_t i = 0; i < d.level_count; ++i)
    for (const auto& s : levels[i]) {
      std::vector<std::size_t> row(d.window, d.colour_count);
      std::vector<std::vector<std::size_t>> pairs(d.window, std::vector<std::size_t>(d.window, 0));
      for (std::size_t j = 0; j < d.window; ++j) {
        if (s.colour[j]) row[j] = rank(d.colours, *s.colour[j]);
        for (std::size_t j2 = j + 1; j2 < d.window; ++j2) pairs[j][j2] = rank(d.pair_colours, s.between(j, j2));
      }
      d.colour_at[i].push_back(std::move(row));
      d.pair_at[i].push_back(std::move(pairs));
    }
  return d;
}

// ok[n][i][j][k]: step n can sit at level i and index j with colour k and the
// remaining steps up to count still fit.
class Solver {
 public:
  Solver(const Dense& d, std::size_t count) : d_(d), steps_(count) {
    ok_.assign(steps_ * d.level_count * d.window * d.colour_count, 0);
    later_.assign(steps_ * d.level_count * d.window * d.colour_count, 0);
    if (steps_ == 0 || d.colour_count == 0) return;
    for (std::size_t n = steps_; n-- > 0;) {
      for (std::size_t i = d.level_count; i-- > 0;)
        for (std::size_t j = 0; j < d.window; ++j)
          for (std::size_t k = 0; k < d.colour_count; ++k) {
            bool good = n + 1 == steps_ ? last_count(i, j, k) >= steps_ : next_step(n, i, j, k).has_value();
            ok_[at(n, i, j, k)] = good;
            // later_ at level i covers levels strictly above i.
            if (i + 1 < d.level_count) later_[at(n, i, j, k)] = later_[at(n, i + 1, j, k)] || ok_[at(n, i + 1, j, k)];
          }
    }
  }

  bool ok(std::size_t n, std::size_t i, std::size_t j, std::size_t k) const { return ok_[at(n, i, j, k)]; }
  bool feasible() const {
    for (std::size_t i = 0; i < d_.level_count; ++i)
      for (std::size_t j = 0; j < d_.window; ++j)
        for (std::size_t k = 0; k < d_.colour_count; ++k)
          if (ok(0, i, j, k)) return true;
    return steps_ == 0;
  }

  struct Move {
    std::size_t level, index, colour, pair;
  };

  // Least (level, index, colour, pair colour) continuing from step n.
  std::optional<Move> next_step(std::size_t n, std::size_t i, std::size_t j, std::size_t k) const {
    std::optional<Move> best;
    for (std::size_t j2 = j + 1; j2 < d_.window; ++j2)
      for (std::size_t k2 = 0; k2 < d_.colour_count; ++k2) {
        if (!later_[at(n + 1, i, j2, k2)]) continue;
        std::vector<std::size_t> by_pair(d_.pair_count, 0);
        for (std::size_t m = 0; m <= i; ++m)
          if (d_.colour_at[i][m][j] == k && d_.colour_at[i][m][j2] == k2) ++by_pair[d_.pair_at[i][m][j][j2]];
        for (std::size_t g = 0; g < d_.pair_count; ++g) {
          if (by_pair[g] < n + 1) continue;
          std::size_t i2 = i + 1;
          while (!ok(n + 1, i2, j2, k2)) ++i2;
          Move mv{i2, j2, k2, g};
          if (!best || std::tie(mv.level, mv.index, mv.colour, mv.pair) <
                           std::tie(best->level, best->index, best->colour, best->pair))
            best = mv;
          break;
        }
      }
    return best;
  }

  std::size_t last_count(std::size_t i, std::size_t j, std::size_t k) const {
    std::size_t c = 0;
    for (std::size_t m = 0; m <= i; ++m)
      if (d_.colour_at[i][m][j] == k) ++c;
    return c;
  }

 private:
  std::size_t at(std::size_t n, std::size_t i, std::size_t j, std::size_t k) const {
    return ((n * d_.level_count + i) * d_.window + j) * d_.colour_count + k;
  }

  const Dense& d_;
  std::size_t steps_;
  std::vector<char> ok_;
  std::vector<char> later_;
};

std::size_t longest(const Dense& d) {
  std::size_t best = 0;
  for (std::size_t n = 1; n <= d.level_count; ++n) {
    if (!Solver(d, n).feasible()) break;
    best = n;
  }
  return best;
}

}  // namespace

std::size_t longest_shaping_selection(const ShapingLevels& levels) { return longest(densify(levels)); }

ShapingSelection shaping_select(const ShapingLevels& levels, std::size_t count) {
  ShapingSelection sel;
  if (count == 0) return sel;
  Dense d = densify(levels);
  Solver solver(d, count);
  if (!solver.feasible()) {
    std::size_t got = longest(d);
    throw NeedsLargerHorizon("the window supports " + std::to_string(got) + " of " + std::to_string(count) + " steps",
                             got, 0);
  }
  std::size_t i = 0, j = 0, k = 0;
  [&] {
    for (i = 0; i < d.level_count; ++i)
      for (j = 0; j < d.window; ++j)
        for (k = 0; k < d.colour_count; ++k)
          if (solver.ok(0, i, j, k)) return;
  }();
  for (std::size_t n = 0; n < count; ++n) {
    sel.levels.push_back(i);
    sel.indices.push_back(j);
    std::vector<std::size_t> members;
    if (n + 1 == count) {
      for (std::size_t m = 0; m <= i; ++m)
        if (d.colour_at[i][m][j] == k) members.push_back(m);
      sel.members.push_back(std::move(members));
      break;
    }
    auto mv = solver.next_step(n, i, j, k);
    if (!mv) throw UpstreamFault("shaping table lost a feasible continuation");
    for (std::size_t m = 0; m <= i; ++m)
      if (d.colour_at[i][m][j] == k && d.colour_at[i][m][mv->index] == mv->colour &&
          d.pair_at[i][m][j][mv->index] == mv->pair)
        members.push_back(m);
    sel.members.push_back(std::move(members));
    i = mv->level;
    j = mv->index;
    k = mv->colour;
  }
  return sel;
}

std::vector<std::string> check_shaping_selection(const ShapingLevels& levels, const ShapingSelection& sel) {
  std::vector<std::string> out;
  const std::size_t N = sel.levels.size();
  if (sel.indices.size() != N || sel.members.size() != N) {
    out.push_back("selection arrays differ in length");
    return out;
  }
  auto name = [](std::size_t n) { return "step " + std::to_string(n); };
  for (std::size_t n = 0; n < N; ++n) {
    if (sel.levels[n] >= levels.size()) {
      out.push_back(name(n) + ": level out of range");
      return out;
    }
    if (n && sel.levels[n] <= sel.levels[n - 1]) out.push_back(name(n) + ": levels not increasing");
    if (n && sel.indices[n] <= sel.indices[n - 1]) out.push_back(name(n) + ": indices not increasing");
    std::set<std::size_t> distinct(sel.members[n].begin(), sel.members[n].end());
    if (distinct.size() != sel.members[n].size()) out.push_back(name(n) + ": repeated member");
    if (distinct.size() < n + 1) out.push_back(name(n) + ": fewer than " + std::to_string(n + 1) + " members");
    for (auto m : distinct)
      if (m >= levels[sel.levels[n]].size()) out.push_back(name(n) + ": member out of range");
  }
  if (!out.empty()) return out;
  auto member = [&](std::size_t n, std::size_t m) -> const Shaping& { return levels[sel.levels[n]][m]; };
  for (std::size_t n = 0; n < N; ++n) {
    std::set<std::optional<int>> seen;
    for (std::size_t s = (n ? n - 1 : n); s <= n; ++s)
      for (auto m : sel.members[s]) {
        const auto& sh = member(s, m);
        if (sel.indices[n] >= sh.window()) {
          out.push_back(name(n) + ": index outside the window");
          return out;
        }
        seen.insert(sh.at(sel.indices[n]));
      }
    if (seen.size() != 1 || !*seen.begin()) out.push_back(name(n) + ": colours at the index differ or are undefined");
    if (n + 1 < N) {
      std::set<int> pairs;
      for (auto m : sel.members[n]) pairs.insert(member(n, m).between(sel.indices[n], sel.indices[n + 1]));
      if (pairs.size() != 1) out.push_back(name(n) + ": pair colours differ");
    }
  }
  return out;
}

}  // namespace edr
