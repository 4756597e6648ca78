#include <gtest/gtest.h>

#include <set>

#include "edr/errors.hpp"
#include "edr/instances.hpp"
#include "edr/pipeline.hpp"
#include "edr/streams.hpp"
#include "oracles.hpp"

using namespace edr;

namespace {

void expect_prefix_stable(const std::vector<DoubleRayStream>& rays, int h) {
  for (const auto& d : rays) {
    Path now = d.at(h), later = d.at(2 * h);
    EXPECT_TRUE(oracle::contains_block(later, now));
  }
}

}  // namespace

TEST(Classify, BuiltInInstances) {
  EXPECT_EQ(classify(instance("binary_tree"), 64).kind, CaseKind::InfinitelyManyEnds);
  auto one = classify(instance("thick_ladder"), 64);
  EXPECT_EQ(one.kind, CaseKind::OneThinEnd);
  EXPECT_EQ(one.text(), "OneThinEnd(0)");
  auto two = classify(instance("double_thick_ladder"), 64);
  EXPECT_EQ(two.kind, CaseKind::TwoThinEnds);
  EXPECT_EQ(two.text(), "TwoThinEnds(0,1)");
}

TEST(Classify, TreeHasGrowingComponentCounts) {
  auto counts = unbounded_component_counts(instance("binary_tree"), 32);
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_LT(counts[0], counts[1]);
  EXPECT_GE(counts[0], 3u);
}

TEST(Classify, InconsistentMetadataIsRejected) {
  auto ladder = instance("thick_ladder");
  auto extra = ladder.ends();
  extra.push_back({1, 2, {}});
  EXPECT_THROW(classify(ladder.with_metadata(extra, false), 64), MetadataInconsistency);
  EXPECT_THROW(classify(ladder.with_metadata({}, false), 64), MetadataInconsistency);
  EXPECT_THROW(classify(ladder.with_metadata(ladder.ends(), true), 64), MetadataInconsistency);
  auto thick = ladder.ends();
  thick[0].vertex_degree.reset();
  EXPECT_THROW(classify(ladder.with_metadata(thick, false), 64), UnsupportedCase);
}

TEST(Classify, ManyThinEndsNeedAFamily) {
  EXPECT_THROW(classify(instance("figure2_graph"), 32), InputError);
  auto g = instance("figure2_graph");
  EXPECT_THROW(extract_double_rays(g, canonical_generator(g), 1, 32), InputError);
}

TEST(Audit, FlagsSharedEdges) {
  auto g = instance("thick_ladder");
  auto gen = canonical_generator(g);
  auto rays = gen->produce(3);
  EXPECT_TRUE(audit_double_rays(g, rays, 40).empty());
  std::vector<DoubleRayStream> twice{rays[0], rays[0]};
  EXPECT_FALSE(audit_double_rays(g, twice, 40).empty());
}

TEST(Tree, BinaryTreeRaysBranchAtLeastThreeWays) {
  auto g = instance("binary_tree");
  auto res = extract_double_rays(g, std::nullopt, 6, 80);
  ASSERT_EQ(res.double_rays.size(), 6u);
  EXPECT_TRUE(audit_double_rays(g, res.double_rays, 160).empty());
  EXPECT_EQ(res.branch_counts.size(), 6u);
  for (auto c : res.branch_counts) EXPECT_GE(c, 3u);
  expect_prefix_stable(res.double_rays, 80);
}

TEST(TwoEnded, DoubleLadderRaysReachBothSides) {
  auto g = instance("double_thick_ladder");
  auto res = extract_double_rays(g, canonical_generator(g), 4, 96);
  ASSERT_EQ(res.double_rays.size(), 4u);
  EXPECT_TRUE(audit_double_rays(g, res.double_rays, 192).empty());
  for (const auto& d : res.double_rays) {
    Path left = d.left().at(192), right = d.right().at(192);
    EXPECT_GE(g.depth(left.back()), 96);
    EXPECT_GE(g.depth(right.back()), 96);
  }
  expect_prefix_stable(res.double_rays, 96);
}

TEST(OneEnded, LadderRaysUseDistinctRegions) {
  auto g = instance("thick_ladder");
  auto res = extract_double_rays(g, canonical_generator(g), 3, 128);
  ASSERT_EQ(res.double_rays.size(), 3u);
  EXPECT_TRUE(audit_double_rays(g, res.double_rays, 256).empty());
  std::set<std::size_t> regions(res.connector_regions.begin(), res.connector_regions.end());
  EXPECT_EQ(regions.size(), 3u);
  expect_prefix_stable(res.double_rays, 128);
}

TEST(Run, EdgeCases) {
  auto g = instance("thick_ladder");
  EXPECT_THROW(extract_double_rays(g, canonical_generator(g), 2, 0), InputError);
  auto none = extract_double_rays(g, canonical_generator(g), 0, 50);
  EXPECT_TRUE(none.double_rays.empty());
  EXPECT_EQ(none.tag.kind, CaseKind::OneThinEnd);
  EXPECT_THROW(extract_double_rays(g, std::nullopt, 2, 128), InputError);
  EXPECT_THROW(extract_double_rays(g, canonical_generator(g), 4, 6), NeedsLargerHorizon);
}
