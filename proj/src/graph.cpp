#include "secroute/graph.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "secroute/error.hpp"

namespace secroute {

namespace {

std::string format12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  fail(ErrorKind::kParse, "graph line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void CostGraph::add_edge(NodeId from, NodeId to, double c1, double c2, std::int32_t link) {
  if (from == to) fail(ErrorKind::kInvalidInstance, "self-loop on node " + std::to_string(from));
  if (from < 0 || to < 0 || from >= node_count || to >= node_count) {
    fail(ErrorKind::kInvalidInstance, "edge endpoint outside [0, " + std::to_string(node_count) + ")");
  }
  if (!(c2 >= 0.0) || !std::isfinite(c2) || !std::isfinite(c1)) {
    fail(ErrorKind::kInvalidInstance, "edge metrics must be finite with c2 >= 0");
  }
  edges.push_back(Edge{from, to, c1, c2, link});
}

void validate_graph(const CostGraph& graph) {
  if (graph.node_count < 1) fail(ErrorKind::kInvalidInstance, "graph has no nodes");
  for (const Edge& e : graph.edges) {
    if (e.from == e.to) fail(ErrorKind::kInvalidInstance, "self-loop on node " + std::to_string(e.from));
    if (e.from < 0 || e.to < 0 || e.from >= graph.node_count || e.to >= graph.node_count) {
      fail(ErrorKind::kInvalidInstance, "edge endpoint out of range");
    }
    if (!(e.c2 >= 0.0) || !std::isfinite(e.c2) || !std::isfinite(e.c1)) {
      fail(ErrorKind::kInvalidInstance, "edge metrics must be finite with c2 >= 0");
    }
  }
}

CostGraph read_graph(std::istream& in) {
  CostGraph g;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    if (keyword == "nodes") {
      if (have_header) parse_error(line_no, "duplicate nodes header");
      long long n = 0;
      if (!(ls >> n) || n < 1 || n > 1'000'000) parse_error(line_no, "bad node count");
      g.node_count = static_cast<std::int32_t>(n);
      have_header = true;
    } else if (keyword == "edge") {
      if (!have_header) parse_error(line_no, "edge before nodes header");
      long long u = 0;
      long long v = 0;
      double c1 = 0.0;
      double c2 = 0.0;
      if (!(ls >> u >> v >> c1 >> c2)) parse_error(line_no, "expected: edge <u> <v> <c1> <c2>");
      try {
        g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), c1, c2);
      } catch (const Error& e) {
        parse_error(line_no, e.what());
      }
    } else {
      parse_error(line_no, "unknown keyword '" + keyword + "'");
    }
    std::string extra;
    if (ls >> extra) parse_error(line_no, "trailing token '" + extra + "'");
  }
  if (!have_header) fail(ErrorKind::kParse, "graph has no nodes header");
  return g;
}

void write_graph(std::ostream& out, const CostGraph& graph) {
  out << "nodes " << graph.node_count << '\n';
  for (const Edge& e : graph.edges) {
    out << "edge " << e.from << ' ' << e.to << ' ' << format12(e.c1) << ' ' << format12(e.c2) << '\n';
  }
}

CostGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open graph file '" + path.string() + "'");
  return read_graph(in);
}

void write_graph_file(const std::filesystem::path& path, const CostGraph& graph) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot write graph file '" + path.string() + "'");
  write_graph(out, graph);
}

double continuous_path_cost(const CostGraph& graph, std::span<const std::size_t> edges) {
  double c1 = 0.0;
  double c2 = 0.0;
  for (std::size_t e : edges) {
    c1 += graph.edges[e].c1;
    c2 += graph.edges[e].c2;
  }
  return c1 + c2 * c2;
}

std::vector<NodeId> path_nodes(const CostGraph& graph, std::span<const std::size_t> edges) {
  std::vector<NodeId> nodes;
  if (edges.empty()) return nodes;
  nodes.push_back(graph.edges[edges.front()].from);
  for (std::size_t e : edges) nodes.push_back(graph.edges[e].to);
  return nodes;
}

}  // namespace secroute
