#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "secroute/channel.hpp"
#include "secroute/graph.hpp"
#include "secroute/linkcost.hpp"
#include "secroute/pathcost.hpp"

namespace secroute {

// c2 scaled to non-negative integers with a bound on any simple path's sum.
struct QuantizedGraph {
  CostGraph base;
  double quantum = 1.0;
  std::vector<std::int64_t> weight;  // round(c2 / quantum), at least 1 when c2 > 0
  std::int64_t bound = 0;            // (N - 1) * max weight
  bool degenerate = false;           // quantum exceeds every c2
};

/// max(c2) / (200 (N - 1)); 1 when every c2 is zero.
double default_quantum(const CostGraph& graph);
QuantizedGraph quantize(const CostGraph& graph, double quantum);

/// sum c1 (in path order) + (quantum * sum weight)^2.
double quantized_path_cost(const QuantizedGraph& graph, std::span<const std::size_t> edges);

enum class Algorithm { kDpSmer, kEpsSmer, kSasp };
std::string_view to_string(Algorithm algorithm);

struct RouteResult {
  Algorithm algorithm = Algorithm::kDpSmer;
  std::vector<NodeId> nodes;
  std::vector<std::size_t> edges;
  double cost = 0.0;            // sum c1 + (sum c2)^2 with unquantized c2
  double quantized_cost = 0.0;  // sum c1 + (quantum * budget)^2 of the returned path
  std::int64_t budget_used = 0;
  bool shortcut = false;        // the optimal walk repeated a node and was shortened

  // Filled by annotate_route when the graph came from a link table.
  SecrecyAllocation allocation;
  std::vector<double> source_power;
  std::vector<double> jam_power;
  double energy = 0.0;
};

// Min c1 for every (node, exact budget) pair. Row-major by node.
struct BudgetTable {
  std::int32_t node_count = 0;
  std::int64_t max_budget = 0;
  std::vector<double> cost;
  std::vector<std::int32_t> hops;
  std::vector<std::int32_t> parent;  // edge index

  std::size_t width() const { return static_cast<std::size_t>(max_budget) + 1; }
  std::size_t at(NodeId v, std::int64_t b) const {
    return static_cast<std::size_t>(v) * width() + static_cast<std::size_t>(b);
  }
};

/// Fills the table for budgets 0..max_budget. Budget levels are processed in
/// blocks of the smallest positive weight so each edge relaxes a contiguous
/// run of budgets at once; zero-weight edges are closed within each level.
BudgetTable budget_dp(const QuantizedGraph& graph, NodeId source, std::int64_t max_budget);
std::vector<std::size_t> trace_budget_path(const QuantizedGraph& graph, const BudgetTable& table,
                                           NodeId target, std::int64_t budget);

struct DpOptions {
  // Skip budgets whose squared term alone exceeds a feasible path's cost.
  bool prune_budget = true;
  std::size_t max_states = 60'000'000;
};

/// Smallest quantized cost among a few cheap heuristic paths (fewest hops,
/// least c2, least clipped c1, least c1 + (q w)^2); +inf when the target is
/// unreachable.
double heuristic_cost(const QuantizedGraph& graph, NodeId source, NodeId target);

/// min(0, min c1).
double min_c1(const CostGraph& graph);

/// Largest budget an optimal simple path can use: sqrt(UB - LB) / q where UB
/// is the cost of a heuristic path and LB = (N - 1) min(0, min c1), tightened
/// to sqrt(UB / (1 - lambda)) / q when every negative c1 is at least
/// -lambda (q w)^2 for some lambda < 1.
std::int64_t budget_cap(const QuantizedGraph& graph, NodeId source, NodeId target);

RouteResult dp_smer(const QuantizedGraph& graph, NodeId source, NodeId target, const DpOptions& options = {});

/// Drops every cycle from a walk, keeping the first visit to each node.
std::vector<std::size_t> remove_cycles(const CostGraph& graph, std::span<const std::size_t> walk, bool& changed);

/// Minimum total source power route (Dijkstra), ignoring eavesdroppers.
/// `links` is the table the graph's edges index into.
RouteResult sasp(const ChannelParams& params, const CostGraph& graph, std::span<const LinkSpec> links,
                 NodeId source, NodeId target);

/// Fills allocation, per-link powers and energy for a route over `links`.
void annotate_route(const ChannelParams& params, const CostGraph& graph, std::span<const LinkSpec> links,
                    double pi, RouteResult& route);

PathSpec route_path(const CostGraph& graph, std::span<const LinkSpec> links, const RouteResult& route);

/// pi / h on each of h links.
SecrecyAllocation equal_allocation(std::size_t hops, double pi);

/// Chain of values.size() + 1 nodes; hop i has an upper edge (2K v_i, 0) and a
/// lower edge (0, v_i), where 2K = sum(values).
CostGraph partition_gadget(std::span<const std::int64_t> values);

/// Breadth-first reachability; throws kUnreachable when target cannot be reached.
void require_reachable(const CostGraph& graph, NodeId source, NodeId target);

}  // namespace secroute
