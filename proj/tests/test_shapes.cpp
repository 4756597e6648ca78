#include <gtest/gtest.h>

#include <random>

#include "edr/errors.hpp"
#include "edr/instances.hpp"
#include "edr/separations.hpp"
#include "edr/shapes.hpp"
#include "oracles.hpp"

using namespace edr;

namespace {

std::vector<std::string> texts(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.text());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t oracle_max_links(const std::vector<VertexId>& near, const std::vector<VertexId>& far) {
  std::size_t best = 0;
  for (const auto& a : oracle::shapes(near))
    for (const auto& b : oracle::shapes(far)) best = std::max(best, oracle::allowed_links(a, b).size());
  return best;
}

}  // namespace

TEST(Word, TextRoundTrip) {
  for (const char* t : {"u", "u l v", "v r u m w"}) EXPECT_EQ(Word::parse(t).text(), t);
  EXPECT_EQ(Word{}.text(), "ε");
  EXPECT_TRUE(Word::parse("ε").empty());
  EXPECT_EQ(Word::join(Word::parse("u"), 'l', Word::parse("v")).text(), "u l v");
  EXPECT_EQ(Word::join(Word{}, 'l', Word::parse("v")).text(), "v");
}

TEST(Shapes, SingleVertexSeparator) {
  EXPECT_EQ(texts(enumerate_shapes({"u"})), (std::vector<std::string>{"u", "ε"}));
  EXPECT_EQ(two_shape_count(1), 3u);
}

TEST(Shapes, TwoVertexSeparatorListsSevenShapes) {
  auto got = texts(enumerate_shapes({"u", "v"}));
  std::vector<std::string> want{"u", "u l v", "u r v", "v", "v l u", "v r u", "ε"};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(Shapes, EnumerationMatchesPermutationOracle) {
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<VertexId> xs;
    for (std::size_t i = 0; i < k; ++i) xs.emplace_back("x" + std::to_string(i));
    EXPECT_EQ(texts(enumerate_shapes(xs)), texts(oracle::shapes(xs))) << "k=" << k;
  }
}

TEST(Shapes, PairCountsForTwoVertices) {
  // Independent count: pairs of oracle shapes with disjoint vertex sets.
  auto shapes = oracle::shapes({"u", "v"});
  std::size_t disjoint = 0;
  for (const auto& a : shapes)
    for (const auto& b : shapes) {
      bool meet = false;
      for (const auto& x : a.vertices) meet |= std::find(b.vertices.begin(), b.vertices.end(), x) != b.vertices.end();
      disjoint += !meet;
    }
  EXPECT_EQ(disjoint, 15u);
  EXPECT_EQ(two_shape_count(2), disjoint);
  EXPECT_EQ(shape_pair_count(2), shapes.size() * shapes.size());
  EXPECT_EQ(shape_pair_count(2), 49u);
  EXPECT_EQ(enumerate_two_shapes({"u", "v"}).size(), 15u);
}

TEST(Links, MaximumLinkCountForTwoVertices) {
  const std::size_t want = oracle_max_links({"u0", "u1"}, {"w0", "w1"});
  EXPECT_EQ(want, 2u);
  EXPECT_EQ(link_bound(2), want);
  EXPECT_EQ(two_shape_link_bound(2), want * want);
  EXPECT_EQ(link_bound(1), oracle_max_links({"u0"}, {"w0"}));
}

TEST(Links, EnumerationMatchesTextOracleForEveryTwoVertexPair) {
  auto near = enumerate_shapes({"u", "v"});
  auto far = enumerate_shapes({"x", "y"});
  for (const auto& a : near)
    for (const auto& b : far) {
      auto got = enumerate_allowed_links(a, b);
      EXPECT_EQ(texts(got), texts(oracle::allowed_links(a, b))) << a.text() << " -> " << b.text();
      for (const auto& w : got) EXPECT_TRUE(is_allowed_link(w, a, b).ok()) << w.text();
    }
}

TEST(Links, SampledThreeVertexPairsMatchOracle) {
  auto near = enumerate_shapes({"u", "v", "w"});
  auto far = enumerate_shapes({"x", "y", "z"});
  std::mt19937_64 rng(2);
  for (int t = 0; t < 4; ++t) {
    const auto& a = near[1 + rng() % (near.size() - 1)];
    const auto& b = far[1 + rng() % (far.size() - 1)];
    EXPECT_EQ(texts(enumerate_allowed_links(a, b)), texts(oracle::allowed_links(a, b)))
        << a.text() << " -> " << b.text();
  }
}

TEST(Links, ViolationsAreNamed) {
  auto from = Word::parse("u l v");
  auto to = Word::parse("x");
  EXPECT_TRUE(is_allowed_link(Word::parse("u l v m x"), from, to).ok());
  EXPECT_TRUE(is_allowed_link(Word::parse("u l v r x"), from, to).violates(bullet::kRightWords));
  EXPECT_TRUE(is_allowed_link(Word::parse("u l v l x"), from, to).violates(bullet::kLeftWords));
  EXPECT_TRUE(is_allowed_link(Word::parse("u r v m x"), from, to).violates(bullet::kLeftWords));
  EXPECT_TRUE(is_allowed_link(Word::parse("v l u m x"), from, to).violates(bullet::kOrder));
  EXPECT_TRUE(is_allowed_link(Word::parse("u l v"), from, to).violates(bullet::kVertexSet));
  EXPECT_TRUE(is_allowed_link(Word::parse("u l v m x"), Word{}, to).violates(bullet::kNonempty));
  EXPECT_TRUE(is_allowed_link(Word::parse("u l x m v"), from, to).violates(bullet::kEndpoints));
}

TEST(Induce, WitnessRailMeetsTheSeparator) {
  auto g = instance("thick_ladder");
  auto seq = capture_end(g, 0, 3, 40);
  const Separation& sep = seq.seps[1];
  // A witness rail walks from the root side through the separator outward.
  Path rail;
  for (std::size_t n = 0; n < 60; ++n) rail.push_back(g.ends()[0].witness_rays[0](n));
  auto w = induce_shape(rail, sep);
  EXPECT_FALSE(w.empty());
  for (const auto& v : w.vertices) EXPECT_TRUE(sep.in_x(v));
  ASSERT_EQ(w.letters.size() + 1, w.vertices.size());
}
