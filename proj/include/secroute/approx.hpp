#pragma once

#include <cstdint>
#include <vector>

#include "secroute/graph.hpp"
#include "secroute/routing.hpp"

namespace secroute {

// Hop-indexed view of a quantized graph. Node u at hop h is the replica u(h)
// for h in 1..layers; the source only exists at hop 0. Edges run from hop
// h - 1 to hop h, never into the source and never out of the target, so a
// path ending at target(h) has exactly h edges. Every c1 is raised by `delta`.
struct ExpandedGraph {
  QuantizedGraph base;
  NodeId source = 0;
  NodeId target = 0;
  std::int32_t layers = 0;
  double delta = 0.0;

  std::int32_t replica(NodeId u, std::int32_t h) const { return h * base.base.node_count + u; }
  double biased(std::size_t edge) const { return base.base.edges[edge].c1 + delta; }
  bool allowed(std::size_t edge, std::int32_t h) const;
};

ExpandedGraph expand_network(const QuantizedGraph& graph, NodeId source, NodeId target);

/// Explicit layered graph with replica ids h * N + u and biased c1; the link
/// field holds the base edge index. Meant for inspection and small tests.
CostGraph materialize(const ExpandedGraph& graph);

enum class RspMethod {
  kFrontier,     // exact: non-dominated (delay, cost) labels per replica
  kBudgetTable,  // exact: min cost per (replica, delay)
  kCostRounding, // (1 + epsilon) approximation: costs rounded to a grid, min delay per rounded cost
};

struct RSPQuery {
  const ExpandedGraph* graph = nullptr;
  std::int32_t hops = 1;  // the query target is target(hops)
  std::int64_t delay_bound = 0;
  double epsilon = 0.1;
  RspMethod method = RspMethod::kFrontier;
};

struct RSPResult {
  bool feasible = false;
  std::vector<std::size_t> edges;  // base edge indices
  double cost = 0.0;               // biased
  std::int64_t delay = 0;
};

RSPResult epsilon_rsp(const RSPQuery& query);

/// ceil((1 + eta)^l) for l = 0..L, L the smallest index whose value is >= bound.
std::vector<std::int64_t> sweep_bounds(std::int64_t bound, double eta);

struct EpsOptions {
  RspMethod method = RspMethod::kFrontier;
  bool prune_budget = true;
  std::size_t max_states = 60'000'000;
};

RouteResult epsilon_smer(const QuantizedGraph& graph, NodeId source, NodeId target, double epsilon,
                         const EpsOptions& options = {});

}  // namespace secroute
