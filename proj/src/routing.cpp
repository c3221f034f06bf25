#include "secroute/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "secroute/error.hpp"
#include "secroute/kernels.hpp"

namespace secroute {

namespace {

void check_endpoints(const CostGraph& graph, NodeId source, NodeId target) {
  if (source < 0 || target < 0 || source >= graph.node_count || target >= graph.node_count) {
    fail(ErrorKind::kInvalidParameter, "source or target outside the graph");
  }
  if (source == target) fail(ErrorKind::kInvalidParameter, "source and target must differ");
}

std::vector<std::vector<std::size_t>> out_edges(const CostGraph& graph) {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(graph.node_count));
  for (std::size_t e = 0; e < graph.edges.size(); ++e) out[static_cast<std::size_t>(graph.edges[e].from)].push_back(e);
  return out;
}

// Dijkstra on a non-negative per-edge weight; ties go to fewer hops, then to
// the smaller predecessor id. Returns the edge sequence or empty.
std::vector<std::size_t> dijkstra_path(const CostGraph& graph, std::span<const double> weight, NodeId source,
                                       NodeId target) {
  const auto n = static_cast<std::size_t>(graph.node_count);
  const auto out = out_edges(graph);
  using Key = std::tuple<double, std::int32_t, NodeId>;
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::int32_t> hops(n, std::numeric_limits<std::int32_t>::max());
  std::vector<std::size_t> via(n, std::numeric_limits<std::size_t>::max());
  std::vector<bool> done(n, false);
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  dist[static_cast<std::size_t>(source)] = 0.0;
  hops[static_cast<std::size_t>(source)] = 0;
  heap.emplace(0.0, 0, source);
  while (!heap.empty()) {
    const auto [d, h, u] = heap.top();
    heap.pop();
    const auto ui = static_cast<std::size_t>(u);
    if (done[ui]) continue;
    done[ui] = true;
    if (u == target) break;
    for (std::size_t e : out[ui]) {
      const auto vi = static_cast<std::size_t>(graph.edges[e].to);
      if (done[vi]) continue;
      const double nd = d + weight[e];
      const std::int32_t nh = h + 1;
      const bool better = nd < dist[vi] || (nd == dist[vi] && nh < hops[vi]) ||
                          (nd == dist[vi] && nh == hops[vi] && graph.edges[e].from < graph.edges[via[vi]].from);
      if (better) {
        dist[vi] = nd;
        hops[vi] = nh;
        via[vi] = e;
        heap.emplace(nd, nh, graph.edges[e].to);
      }
    }
  }
  std::vector<std::size_t> path;
  if (!done[static_cast<std::size_t>(target)]) return path;
  for (NodeId v = target; v != source;) {
    const std::size_t e = via[static_cast<std::size_t>(v)];
    path.push_back(e);
    v = graph.edges[e].from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<std::size_t> remove_cycles(const CostGraph& graph, std::span<const std::size_t> walk, bool& changed) {
  std::vector<std::size_t> out;
  std::vector<NodeId> nodes;
  changed = false;
  if (walk.empty()) return out;
  nodes.push_back(graph.edges[walk.front()].from);
  for (std::size_t e : walk) {
    const NodeId v = graph.edges[e].to;
    const auto seen = std::find(nodes.begin(), nodes.end(), v);
    if (seen != nodes.end()) {
      const auto keep = static_cast<std::size_t>(seen - nodes.begin());
      nodes.resize(keep + 1);
      out.resize(keep);
      changed = true;
    } else {
      nodes.push_back(v);
      out.push_back(e);
    }
  }
  return out;
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kDpSmer: return "DP-SMER";
    case Algorithm::kEpsSmer: return "eps-SMER";
    case Algorithm::kSasp: return "SASP";
  }
  return "unknown";
}

double default_quantum(const CostGraph& graph) {
  double max_c2 = 0.0;
  for (const Edge& e : graph.edges) max_c2 = std::max(max_c2, e.c2);
  if (!(max_c2 > 0.0)) return 1.0;
  const double hops = std::max(1, graph.node_count - 1);
  return max_c2 / (200.0 * hops);
}

QuantizedGraph quantize(const CostGraph& graph, double quantum) {
  if (!(quantum > 0.0) || !std::isfinite(quantum)) fail(ErrorKind::kInvalidParameter, "quantum must be positive");
  validate_graph(graph);
  QuantizedGraph q;
  q.base = graph;
  q.quantum = quantum;
  q.weight.reserve(graph.edges.size());
  std::int64_t max_w = 0;
  double max_c2 = 0.0;
  for (const Edge& e : graph.edges) {
    const double scaled = e.c2 / quantum;
    if (scaled > 4e15) fail(ErrorKind::kResourceLimit, "quantum too small for the c2 range");
    // Positive c2 never rounds to zero: a zero-budget edge with negative c1
    // could close a cycle that the budget never pays for.
    auto w = static_cast<std::int64_t>(std::llround(scaled));
    if (w == 0 && e.c2 > 0.0) w = 1;
    q.weight.push_back(w);
    max_w = std::max(max_w, w);
    max_c2 = std::max(max_c2, e.c2);
  }
  q.bound = static_cast<std::int64_t>(std::max(0, graph.node_count - 1)) * max_w;
  q.degenerate = !graph.edges.empty() && quantum > max_c2;
  return q;
}

double quantized_path_cost(const QuantizedGraph& graph, std::span<const std::size_t> edges) {
  double c1 = 0.0;
  std::int64_t budget = 0;
  for (std::size_t e : edges) {
    c1 += graph.base.edges[e].c1;
    budget += graph.weight[e];
  }
  const double qb = graph.quantum * static_cast<double>(budget);
  return c1 + qb * qb;
}

BudgetTable budget_dp(const QuantizedGraph& graph, NodeId source, std::int64_t max_budget) {
  const CostGraph& g = graph.base;
  if (max_budget < 0) fail(ErrorKind::kInvalidParameter, "negative budget");
  BudgetTable t;
  t.node_count = g.node_count;
  t.max_budget = max_budget;
  const std::size_t states = static_cast<std::size_t>(g.node_count) * t.width();
  t.cost.assign(states, kernels::kUnreached);
  t.hops.assign(states, kernels::kNoHops);
  t.parent.assign(states, kernels::kNoParent);
  t.cost[t.at(source, 0)] = 0.0;
  t.hops[t.at(source, 0)] = 0;

  std::vector<std::size_t> zero_edges;
  std::vector<std::size_t> positive_edges;
  std::int64_t block = max_budget + 1;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (graph.weight[e] == 0) {
      zero_edges.push_back(e);
    } else {
      positive_edges.push_back(e);
      block = std::min(block, graph.weight[e]);
    }
  }

  const kernels::KernelTable& k = kernels::active();
  const kernels::KernelTable& scalar = kernels::scalar_table();
  auto relax_run = [&](const kernels::KernelTable& table, std::size_t e, std::int64_t src_b, std::int64_t dst_b,
                       std::size_t n) {
    const Edge& edge = g.edges[e];
    const std::size_t d0 = t.at(edge.to, dst_b);
    const std::size_t s0 = t.at(edge.from, src_b);
    table.relax(std::span(t.cost).subspan(d0, n), std::span(t.hops).subspan(d0, n),
                std::span(t.parent).subspan(d0, n), std::span<const double>(t.cost).subspan(s0, n),
                std::span<const std::int32_t>(t.hops).subspan(s0, n), edge.c1, static_cast<std::int32_t>(e));
  };

  for (std::int64_t b0 = 0; b0 <= max_budget; b0 += block) {
    const std::int64_t b_end = std::min(b0 + block, max_budget + 1);
    // Levels in [b0, b_end) only receive from levels below b0, so they are
    // final once their zero-weight closure is done.
    if (!zero_edges.empty()) {
      for (std::int64_t b = b0; b < b_end; ++b) {
        for (std::int32_t round = 0; round < g.node_count; ++round) {
          bool changed = false;
          for (std::size_t e : zero_edges) {
            const std::size_t d = t.at(g.edges[e].to, b);
            const double before = t.cost[d];
            const std::int32_t before_h = t.hops[d];
            const std::int32_t before_p = t.parent[d];
            relax_run(scalar, e, b, b, 1);
            changed = changed || t.cost[d] != before || t.hops[d] != before_h || t.parent[d] != before_p;
          }
          if (!changed) break;
        }
      }
    }
    for (std::size_t e : positive_edges) {
      const std::int64_t w = graph.weight[e];
      if (b0 + w > max_budget) continue;
      const std::int64_t src_end = std::min(b_end, max_budget + 1 - w);
      relax_run(k, e, b0, b0 + w, static_cast<std::size_t>(src_end - b0));
    }
  }
  return t;
}

std::vector<std::size_t> trace_budget_path(const QuantizedGraph& graph, const BudgetTable& table, NodeId target,
                                           std::int64_t budget) {
  std::vector<std::size_t> walk;
  NodeId v = target;
  std::int64_t b = budget;
  const std::size_t limit = table.cost.size() + 1;
  while (table.parent[table.at(v, b)] != kernels::kNoParent) {
    const auto e = static_cast<std::size_t>(table.parent[table.at(v, b)]);
    walk.push_back(e);
    b -= graph.weight[e];
    v = graph.base.edges[e].from;
    if (walk.size() > limit) fail(ErrorKind::kInvalidInstance, "parent chain does not terminate");
  }
  std::reverse(walk.begin(), walk.end());
  return walk;
}

void require_reachable(const CostGraph& graph, NodeId source, NodeId target) {
  check_endpoints(graph, source, target);
  const auto out = out_edges(graph);
  std::vector<bool> seen(static_cast<std::size_t>(graph.node_count), false);
  std::vector<NodeId> stack{source};
  seen[static_cast<std::size_t>(source)] = true;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (std::size_t e : out[static_cast<std::size_t>(u)]) {
      const NodeId v = graph.edges[e].to;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        stack.push_back(v);
      }
    }
  }
  if (!seen[static_cast<std::size_t>(target)]) {
    fail(ErrorKind::kUnreachable, "node " + std::to_string(target) + " is unreachable from " + std::to_string(source));
  }
}

double heuristic_cost(const QuantizedGraph& graph, NodeId source, NodeId target) {
  const CostGraph& g = graph.base;
  std::vector<double> unit(g.edges.size(), 1.0);
  std::vector<double> c2(g.edges.size());
  std::vector<double> c1_clip(g.edges.size());
  std::vector<double> separable(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    c2[e] = g.edges[e].c2;
    c1_clip[e] = std::max(0.0, g.edges[e].c1);
    const double qw = graph.quantum * static_cast<double>(graph.weight[e]);
    separable[e] = std::max(0.0, g.edges[e].c1 + qw * qw);
  }
  double upper = std::numeric_limits<double>::infinity();
  for (const auto* w : {&unit, &c2, &c1_clip, &separable}) {
    const auto path = dijkstra_path(g, *w, source, target);
    if (!path.empty()) upper = std::min(upper, quantized_path_cost(graph, path));
  }
  return upper;
}

double min_c1(const CostGraph& graph) {
  double m = 0.0;
  for (const Edge& e : graph.edges) m = std::min(m, e.c1);
  return m;
}

std::int64_t budget_cap(const QuantizedGraph& graph, NodeId source, NodeId target) {
  const double upper = heuristic_cost(graph, source, target);
  if (!std::isfinite(upper)) return graph.bound;
  const double lower = static_cast<double>(std::max(0, graph.base.node_count - 1)) * min_c1(graph.base);
  double span = std::sqrt(std::max(0.0, upper - lower)) / graph.quantum;
  // If every c1 >= -lambda (q w)^2 with lambda < 1, then
  // sum c1 + (q b)^2 >= (1 - lambda) (q b)^2.
  double lambda = 0.0;
  for (std::size_t e = 0; e < graph.base.edges.size(); ++e) {
    const double c1 = graph.base.edges[e].c1;
    if (c1 >= 0.0) continue;
    const double qw = graph.quantum * static_cast<double>(graph.weight[e]);
    lambda = qw > 0.0 ? std::max(lambda, -c1 / (qw * qw)) : std::numeric_limits<double>::infinity();
  }
  if (lambda < 1.0) span = std::min(span, std::sqrt(std::max(0.0, upper) / (1.0 - lambda)) / graph.quantum);
  if (span >= static_cast<double>(graph.bound)) return graph.bound;
  return std::min(graph.bound, static_cast<std::int64_t>(std::floor(span)) + 1);
}

RouteResult dp_smer(const QuantizedGraph& graph, NodeId source, NodeId target, const DpOptions& options) {
  require_reachable(graph.base, source, target);
  const std::int64_t cap = options.prune_budget ? budget_cap(graph, source, target) : graph.bound;
  const std::size_t states = static_cast<std::size_t>(graph.base.node_count) * (static_cast<std::size_t>(cap) + 1);
  if (states > options.max_states) {
    fail(ErrorKind::kResourceLimit, "budget table would need " + std::to_string(states) +
                                        " states; use a coarser quantum");
  }
  const BudgetTable table = budget_dp(graph, source, cap);
  const std::size_t row = table.at(target, 0);
  const kernels::BudgetMin best =
      kernels::active().budget_min(std::span<const double>(table.cost).subspan(row, table.width()),
                                   std::span<const std::int32_t>(table.hops).subspan(row, table.width()),
                                   graph.quantum, 0);
  if (!best.found) fail(ErrorKind::kUnreachable, "no walk reaches the target within the budget bound");

  RouteResult r;
  r.algorithm = Algorithm::kDpSmer;
  const auto walk = trace_budget_path(graph, table, target, static_cast<std::int64_t>(best.index));
  r.edges = remove_cycles(graph.base, walk, r.shortcut);
  r.nodes = path_nodes(graph.base, r.edges);
  r.budget_used = 0;
  for (std::size_t e : r.edges) r.budget_used += graph.weight[e];
  r.quantized_cost = r.shortcut ? quantized_path_cost(graph, r.edges) : best.value;
  r.cost = continuous_path_cost(graph.base, r.edges);
  return r;
}

RouteResult sasp(const ChannelParams& params, const CostGraph& graph, std::span<const LinkSpec> links,
                 NodeId source, NodeId target) {
  require_reachable(graph, source, target);
  std::vector<double> power(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const std::int32_t l = graph.edges[e].link;
    if (l < 0 || static_cast<std::size_t>(l) >= links.size()) {
      fail(ErrorKind::kInvalidParameter, "SASP needs every edge to reference a link");
    }
    const LinkSpec& link = links[static_cast<std::size_t>(l)];
    power[e] = source_power(params, distance(link.source, link.dest));
  }
  RouteResult r;
  r.algorithm = Algorithm::kSasp;
  r.edges = dijkstra_path(graph, power, source, target);
  if (r.edges.empty()) fail(ErrorKind::kUnreachable, "no route from source to target");
  r.nodes = path_nodes(graph, r.edges);
  r.cost = continuous_path_cost(graph, r.edges);
  r.quantized_cost = r.cost;
  return r;
}

PathSpec route_path(const CostGraph& graph, std::span<const LinkSpec> links, const RouteResult& route) {
  PathSpec path;
  for (std::size_t e : route.edges) {
    const std::int32_t l = graph.edges[e].link;
    if (l < 0 || static_cast<std::size_t>(l) >= links.size()) {
      fail(ErrorKind::kInvalidParameter, "route edge does not reference a link");
    }
    path.links.push_back(links[static_cast<std::size_t>(l)]);
  }
  return path;
}

void annotate_route(const ChannelParams& params, const CostGraph& graph, std::span<const LinkSpec> links, double pi,
                    RouteResult& route) {
  const PathSpec path = route_path(graph, links, route);
  route.allocation = allocate_secrecy(params, path, pi);
  const PathEnergy energy = path_energy_direct(params, path, pi);
  route.source_power = energy.source;
  route.jam_power = energy.jamming;
  route.energy = energy.total;
}

SecrecyAllocation equal_allocation(std::size_t hops, double pi) {
  if (hops == 0) fail(ErrorKind::kInvalidParameter, "path has no links");
  if (!(pi > 0.0 && pi < 1.0)) fail(ErrorKind::kInvalidParameter, "eavesdropping budget must lie in (0, 1)");
  SecrecyAllocation a;
  a.pi_per_link.assign(hops, pi / static_cast<double>(hops));
  a.large_share = pi / static_cast<double>(hops) > 0.2;
  return a;
}

CostGraph partition_gadget(std::span<const std::int64_t> values) {
  if (values.empty()) fail(ErrorKind::kInvalidInstance, "partition instance is empty");
  std::int64_t sum = 0;
  for (std::int64_t v : values) {
    if (v <= 0) fail(ErrorKind::kInvalidInstance, "partition values must be positive");
    sum += v;
  }
  if (sum % 2 != 0) fail(ErrorKind::kInvalidInstance, "partition values must have an even sum");
  const std::int64_t k = sum / 2;
  CostGraph g;
  g.node_count = static_cast<std::int32_t>(values.size()) + 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto u = static_cast<NodeId>(i);
    g.add_edge(u, u + 1, static_cast<double>(2 * k * values[i]), 0.0);
    g.add_edge(u, u + 1, 0.0, static_cast<double>(values[i]));
  }
  return g;
}

}  // namespace secroute
