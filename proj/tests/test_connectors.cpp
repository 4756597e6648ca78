#include <gtest/gtest.h>

#include <random>

#include "edr/connectors.hpp"
#include "edr/errors.hpp"
#include "edr/verify_suite.hpp"
#include "oracles.hpp"

using namespace edr;

namespace {

std::vector<std::size_t> members_sharing_edges(const FiniteGraph& tree, const std::vector<EdgeList>& H) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < H.size(); ++m)
    for (const auto& e : H[m])
      if (tree.has_edge(e.first(), e.second())) {
        out.push_back(m);
        break;
      }
  return out;
}

void expect_valid(const ConnectorCase& c, const ConnectorResult& res, const std::string& label) {
  EXPECT_TRUE(oracle::connected(res.tree)) << label;
  for (const auto& s : c.S) EXPECT_TRUE(res.tree.has_vertex(s)) << label << " misses " << s;
  for (const auto& e : res.tree.edges()) EXPECT_TRUE(c.graph.has_edge(e.first(), e.second())) << label;
  auto touched = members_sharing_edges(res.tree, c.H);
  EXPECT_EQ(touched, res.touched) << label;
  EXPECT_LE(touched.size() + 2, std::max<std::size_t>(2, 2 * c.S.size())) << label;
}

}  // namespace

TEST(Connector, SingleTerminalTouchesNothing) {
  ConnectorCase c;
  c.graph.add_path({"a", "b", "c"});
  c.S = {"b"};
  c.H = {{EdgeId("a", "b"), EdgeId("b", "c")}};
  auto res = finite_connector(c.graph, c.S, c.H);
  EXPECT_TRUE(res.touched.empty());
  EXPECT_TRUE(res.tree.has_vertex("b"));
}

TEST(Connector, UsesMemberEdgesWhenForced) {
  // The only route from a to c runs through the member.
  ConnectorCase c;
  c.graph.add_path({"a", "b", "c"});
  c.S = {"a", "c"};
  c.H = {{EdgeId("a", "b")}};
  auto res = finite_connector(c.graph, c.S, c.H);
  expect_valid(c, res, "path");
  EXPECT_EQ(res.touched, std::vector<std::size_t>{0});
}

TEST(Connector, StarOfMembersStaysWithinBudget) {
  // Three members hang off the hub and each reaches a terminal.
  ConnectorCase c;
  for (const char* leaf : {"p", "q", "r", "s"})
    c.graph.add_path({"hub", VertexId(leaf), VertexId(std::string(leaf) + "2")});
  c.S = {"p2", "q2", "r2"};
  c.H = {{EdgeId("hub", "p"), EdgeId("p", "p2")},
         {EdgeId("hub", "q"), EdgeId("q", "q2")},
         {EdgeId("hub", "r"), EdgeId("r", "r2")}};
  auto res = finite_connector(c.graph, c.S, c.H);
  expect_valid(c, res, "star");
  EXPECT_FALSE(res.tree.has_vertex("s2"));
}

TEST(Connector, RejectsBadInput) {
  FiniteGraph g;
  g.add_path({"a", "b"});
  g.add_vertex("z");
  EXPECT_THROW(finite_connector(g, {"a"}, {}), InputError);
  FiniteGraph h;
  h.add_path({"a", "b", "c"});
  EXPECT_THROW(finite_connector(h, {}, {}), InputError);
  EXPECT_THROW(finite_connector(h, {"q"}, {}), InputError);
  EXPECT_THROW(finite_connector(h, {"a"}, {{EdgeId("a", "c")}}), InputError);
  EXPECT_THROW(finite_connector(h, {"a"}, {{EdgeId("a", "b")}, {EdgeId("a", "b")}}), InputError);
}

TEST(Connector, RandomCasesStayWithinBudget) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    auto c = random_connector_case(rng);
    auto res = finite_connector(c.graph, c.S, c.H);
    expect_valid(c, res, "case " + std::to_string(t));
  }
}
