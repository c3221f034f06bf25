#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "secroute/error.hpp"
#include "secroute/graph.hpp"
#include "test_graphs.hpp"

namespace secroute {
namespace {

ErrorKind kind_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_graph(in);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::kIo;
}

TEST(GraphFormat, RoundTripAtTwelveDigits) {
  std::mt19937_64 rng(17);
  const CostGraph g = testing_support::random_graph(rng, 7, 0.5, true);
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream in(out.str());
  const CostGraph back = read_graph(in);
  ASSERT_EQ(back.node_count, g.node_count);
  ASSERT_EQ(back.edges.size(), g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    EXPECT_EQ(back.edges[i].from, g.edges[i].from);
    EXPECT_EQ(back.edges[i].to, g.edges[i].to);
    EXPECT_NEAR(back.edges[i].c1, g.edges[i].c1, 1e-11 * std::abs(g.edges[i].c1));
    EXPECT_NEAR(back.edges[i].c2, g.edges[i].c2, 1e-11 * g.edges[i].c2);
  }
  std::ostringstream again;
  write_graph(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(GraphFormat, CommentsAndParallelEdges) {
  std::istringstream in("# header\nnodes 3  # three\n\nedge 0 1 1.5 2\nedge 0 1 -0.5 0\nedge 1 2 1e-3 4.25\n");
  const CostGraph g = read_graph(in);
  EXPECT_EQ(g.node_count, 3);
  ASSERT_EQ(g.edges.size(), 3u);
  EXPECT_EQ(g.edges[1].c1, -0.5);
  EXPECT_EQ(g.edges[2].c2, 4.25);
}

TEST(GraphFormat, Errors) {
  EXPECT_EQ(kind_of("edge 0 1 1 1\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("nodes 2\nedge 0 0 1 1\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("nodes 2\nedge 0 2 1 1\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("nodes 2\nedge 0 1 1 -1\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("nodes 2\nedge 0 1 1\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("nodes 2\nedge 0 1 1 1 7\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of("nodes 2\nvertex 0\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(""), ErrorKind::kParse);
  EXPECT_EQ(kind_of("nodes 2\nnodes 3\n"), ErrorKind::kParse);
}

TEST(GraphFormat, ErrorNamesLine) {
  std::istringstream in("nodes 2\n\nedge 0 1 x 1\n");
  try {
    read_graph(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(GraphFormat, MissingFileNamesPath) {
  const auto path = std::filesystem::temp_directory_path() / "secroute_absent_graph.txt";
  std::filesystem::remove(path);
  try {
    read_graph_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
    EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
  }
}

TEST(GraphFormat, FileRoundTrip) {
  CostGraph g;
  g.node_count = 2;
  g.add_edge(0, 1, 0.125, 3.5);
  const auto path = std::filesystem::temp_directory_path() / "secroute_graph_roundtrip.txt";
  write_graph_file(path, g);
  const CostGraph back = read_graph_file(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.edges.size(), 1u);
  EXPECT_EQ(back.edges[0].c1, 0.125);
}

TEST(Graph, AddEdgeRejectsBadInput) {
  CostGraph g;
  g.node_count = 3;
  EXPECT_THROW(g.add_edge(1, 1, 0, 0), Error);
  EXPECT_THROW(g.add_edge(0, 3, 0, 0), Error);
  EXPECT_THROW(g.add_edge(0, 1, 0, -0.1), Error);
  EXPECT_THROW(g.add_edge(0, 1, std::nan(""), 0), Error);
  g.add_edge(0, 1, -4, 0);
  EXPECT_NO_THROW(validate_graph(g));
  g.edges.push_back(Edge{2, 2, 0, 0, -1});
  EXPECT_THROW(validate_graph(g), Error);
}

TEST(Graph, PathCostAndNodes) {
  CostGraph g;
  g.node_count = 4;
  g.add_edge(0, 1, 1.0, 0.5);
  g.add_edge(1, 2, -0.5, 1.0);
  g.add_edge(2, 3, 2.0, 0.5);
  const std::vector<std::size_t> edges{0, 1, 2};
  EXPECT_DOUBLE_EQ(continuous_path_cost(g, edges), 2.5 + 4.0);
  EXPECT_EQ(path_nodes(g, edges), (std::vector<NodeId>{0, 1, 2, 3}));
  EXPECT_TRUE(path_nodes(g, {}).empty());
}

}  // namespace
}  // namespace secroute
