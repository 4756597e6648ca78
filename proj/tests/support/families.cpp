#include "families.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "edr/errors.hpp"
#include "edr/instances.hpp"
#include "edr/rays.hpp"
#include "edr/separations.hpp"
#include "edr/shapes.hpp"

namespace families {

using namespace edr;

namespace {

std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return bound == 0 ? 0 : rng() % bound; }

struct Setting {
  LazyGraph graph;
  CapturingSequence seq;
  std::vector<TwoRayStream> pool;
};

constexpr std::size_t kMaxLevels = 3;

// Building captures and pools dominates; every (base, horizon) is built once.
const Setting& setting(long long base, int horizon) {
  static std::map<std::pair<long long, int>, std::unique_ptr<Setting>> cache;
  auto& slot = cache[{base, horizon}];
  if (!slot) {
    auto g = instance("thick_ladder", {{"base", base}, {"rails", 2}});
    auto seq = capture_end_window(g, 0, horizon);
    auto gen = canonical_generator(g);
    const std::size_t want = 5 * two_shape_count(seq.k) * two_shape_link_bound(seq.k) * kMaxLevels / 4;
    std::vector<TwoRayStream> pool;
    for (const auto& d : gen->produce(want)) pool.push_back(to_two_ray(d, horizon));
    slot = std::make_unique<Setting>(Setting{g, std::move(seq), std::move(pool)});
  }
  return *slot;
}

}  // namespace

std::optional<AlignedCase> random_aligned_case(std::mt19937_64& rng) {
  AlignedCase out;
  out.base = 2 + static_cast<long long>(draw(rng, 4));
  out.horizon = draw(rng, 2) ? 64 : 48;
  const Setting& s = setting(out.base, out.horizon);
  const std::size_t levels = 2 + draw(rng, kMaxLevels - 1);
  out.m = levels - 1;

  // Keep each separation with probability 3/4, but never the first.
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < s.seq.seps.size(); ++j)
    if (j == 0 || draw(rng, 4) != 0) keep.push_back(j);
  CapturingSequence seq = subsequence(s.seq, keep);

  const std::size_t shape_classes = two_shape_count(seq.k), link_classes = two_shape_link_bound(seq.k);
  std::vector<std::vector<TwoRayStream>> fams;
  for (std::size_t i = 1; i <= levels; ++i) {
    std::vector<std::size_t> order(s.pool.size());
    for (std::size_t x = 0; x < order.size(); ++x) order[x] = x;
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(std::min(order.size(), shape_classes * link_classes * i));
    std::sort(order.begin(), order.end());
    std::vector<TwoRayStream> fam;
    for (std::size_t x : order) {
      TwoRayStream t = s.pool[x];
      if (draw(rng, 3) == 0) t.first = tail_of(t.first, draw(rng, 3));
      if (draw(rng, 3) == 0) t.second = tail_of(t.second, draw(rng, 3));
      fam.push_back(std::move(t));
    }
    fams.push_back(std::move(fam));
  }
  try {
    ShapeTable table = refine_same_shape_internal(fams, seq, shape_classes, link_classes);
    Alignment a = align_shapes_external(table, out.m);
    out.aligned = build_aligned(table, a, seq, out.m);
    out.strands = assemble_strands(out.aligned);
  } catch (const NeedsLargerHorizon&) {
    return std::nullopt;
  } catch (const InputError&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace families
