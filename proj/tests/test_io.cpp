#include <gtest/gtest.h>

#include "edr/errors.hpp"
#include "edr/instances.hpp"
#include "edr/io.hpp"
#include "edr/pipeline.hpp"
#include "edr/separations.hpp"
#include "edr/verify_suite.hpp"

using namespace edr;

TEST(InstanceSpec, RoundTripsThroughJson) {
  auto spec = spec_of(instance("thick_ladder", {{"base", 3}, {"rails", 2}}));
  auto text = instance_spec_json(spec);
  auto back = parse_instance_spec(text);
  EXPECT_EQ(back.name, "thick_ladder");
  EXPECT_EQ(back.params.at("base"), 3);
  ASSERT_TRUE(back.ends.has_value());
  ASSERT_EQ(back.ends->size(), 1u);
  EXPECT_EQ(back.ends->at(0).vertex_degree, 2);
  EXPECT_EQ(instance_spec_json(back), text);
}

TEST(InstanceSpec, ThickEndsAndOverrides) {
  auto spec = parse_instance_spec(R"({"name": "thick_ladder", "ends": [{"id": 0, "vertex_degree": "thick"}]})");
  auto g = load_instance(spec);
  EXPECT_FALSE(g.end(0).thin());
  EXPECT_EQ(g.end(0).witness_rays.size(), 2u);
  EXPECT_THROW(classify(g, 64), UnsupportedCase);
}

TEST(InstanceSpec, MalformedInputIsRejected) {
  EXPECT_THROW(parse_instance_spec("{"), InputError);
  EXPECT_THROW(parse_instance_spec("[]"), InputError);
  EXPECT_THROW(parse_instance_spec(R"({"params": {}})"), InputError);
  EXPECT_THROW(parse_instance_spec(R"({"name": "x", "params": {"base": "four"}})"), InputError);
  EXPECT_THROW(parse_instance_spec(R"({"name": "x", "ends": [{"id": 0, "vertex_degree": 0}]})"), InputError);
  EXPECT_THROW(load_instance(parse_instance_spec(R"({"name": "no_such_graph"})")), InputError);
}

TEST(Capture, JsonRoundTripKeepsTheSequence) {
  auto g = instance("thick_ladder");
  auto seq = capture_end(g, 0, 4, 60);
  auto text = capture_json(seq);
  auto back = capture_from_json(g, text);
  ASSERT_EQ(back.seps.size(), seq.seps.size());
  for (std::size_t i = 0; i < seq.seps.size(); ++i) EXPECT_EQ(back.seps[i].separator(), seq.seps[i].separator());
  EXPECT_EQ(capture_json(back), text);
  EXPECT_TRUE(verify_capture(back, g, 60).ok());
  auto report = capture_report_json(verify_capture(back, g, 60));
  EXPECT_NE(report.find("\"ok\": true"), std::string::npos);
  EXPECT_THROW(capture_from_json(g, R"({"end_id": 0, "k": 2})"), InputError);
}

TEST(Result, JsonRoundTripIsExact) {
  auto g = instance("binary_tree");
  auto res = extract_double_rays(g, std::nullopt, 3, 40);
  auto rec = result_record(g.name(), res, 3);
  auto text = result_json(rec);
  auto back = parse_result_json(text);
  EXPECT_EQ(back, rec);
  EXPECT_EQ(result_json(back), text);
  EXPECT_EQ(back.case_tag, "InfinitelyManyEnds");
  EXPECT_EQ(back.double_rays.size(), 3u);
}

TEST(Result, PartialRecordCarriesAchievedCount) {
  NeedsLargerHorizon signal("too short", 2, 80);
  auto rec = partial_record("thick_ladder", signal, 5, 40);
  auto text = result_json(rec);
  EXPECT_NE(text.find("\"achieved\": 2"), std::string::npos);
  EXPECT_NE(text.find("needs-larger-horizon"), std::string::npos);
  EXPECT_EQ(parse_result_json(text).suggested_horizon, 80);
}

TEST(Dot, OverlayColoursRayEdges) {
  FiniteGraph fg;
  fg.add_path({"a", "b", "c"});
  auto text = dot(fg, {{"a", "b"}});
  EXPECT_EQ(text.rfind("graph truncation {", 0), 0u);
  EXPECT_NE(text.find("\"a\" -- \"b\" [color=red, penwidth=2, ray=0]"), std::string::npos);
  EXPECT_NE(text.find("\"b\" -- \"c\";"), std::string::npos);
}

TEST(Checks, SuiteJsonIsDeterministic) {
  SuiteOptions opt;
  opt.seed = 9;
  opt.connector_cases = 20;
  opt.shaping_cases = 20;
  auto a = checks_json(run_verify_suite(opt), opt.seed);
  auto b = checks_json(run_verify_suite(opt), opt.seed);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"ok\": true"), std::string::npos) << a;
}

TEST(Checks, CorruptedSeparatorFailsTheSuite) {
  SuiteOptions opt;
  opt.connector_cases = 5;
  opt.shaping_cases = 5;
  opt.corrupt_separator = 3;
  bool found = false;
  for (const auto& c : run_verify_suite(opt))
    if (c.name == "capture/thick_ladder/corrupted") {
      found = true;
      EXPECT_FALSE(c.pass);
      EXPECT_NE(c.detail.find(kBulletDisjoint), std::string::npos);
    }
  EXPECT_TRUE(found);
}
