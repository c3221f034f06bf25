#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "secroute/linkcost.hpp"

namespace secroute {

// Directed edge carrying the two routing metrics. `link` indexes the link
// table the graph was built from, or is -1 for abstract graphs.
struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::int32_t link = -1;
};

// Multigraph; parallel edges are allowed, self-loops are not.
struct CostGraph {
  std::int32_t node_count = 0;
  std::vector<Edge> edges;

  void add_edge(NodeId from, NodeId to, double c1, double c2, std::int32_t link = -1);
};

void validate_graph(const CostGraph& graph);

// Line format: `nodes <N>` then `edge <u> <v> <c1> <c2>` per edge, `#` comments.
// Reals are written with 12 significant digits.
CostGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const CostGraph& graph);
CostGraph read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const CostGraph& graph);

// Sum of c1 in path order plus the squared sum of c2.
double continuous_path_cost(const CostGraph& graph, std::span<const std::size_t> edges);

// Node sequence of an edge sequence starting at the first edge's tail.
std::vector<NodeId> path_nodes(const CostGraph& graph, std::span<const std::size_t> edges);

}  // namespace secroute
