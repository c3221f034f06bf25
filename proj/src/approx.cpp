#include "secroute/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "secroute/error.hpp"

namespace secroute {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kNoDelay = std::numeric_limits<std::int64_t>::max();

// Out-edge lists of the base graph restricted to edges the expansion keeps.
struct Adjacency {
  std::vector<std::vector<std::size_t>> out;

  explicit Adjacency(const ExpandedGraph& g) : out(static_cast<std::size_t>(g.base.base.node_count)) {
    const auto& edges = g.base.base.edges;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].to == g.source || edges[e].from == g.target) continue;
      out[static_cast<std::size_t>(edges[e].from)].push_back(e);
    }
  }
};

struct Label {
  std::int64_t delay;
  double cost;
  std::int32_t parent;  // arena index, -1 at the source
  std::int32_t edge;
};

// Pareto labels reaching target(h) for h = 1..hops, each list sorted by
// increasing delay and strictly decreasing cost.
struct Frontier {
  std::vector<Label> arena;
  std::vector<std::vector<std::int32_t>> at_target;  // index h
};

// Lower bounds on what the rest of a route from each node to the target adds
// to sum c1 + (q b)^2 when the prefix already spent delay d:
// rest_cost[v] + 2 q^2 d rest_delay[v]. Uses (sum w)^2 >= sum w^2, so each
// edge alone contributes at least c1 + (q w)^2.
struct RestBound {
  std::vector<double> rest_cost;
  std::vector<double> rest_delay;

  double at(std::size_t v, std::int64_t d, double q) const {
    return rest_cost[v] + 2.0 * q * q * static_cast<double>(d) * rest_delay[v];
  }
};

RestBound rest_bound(const ExpandedGraph& g) {
  const CostGraph& base = g.base.base;
  const auto n = static_cast<std::size_t>(base.node_count);
  const double q = g.base.quantum;
  RestBound r;
  r.rest_cost.assign(n, kInf);
  r.rest_delay.assign(n, kInf);
  r.rest_cost[static_cast<std::size_t>(g.target)] = 0.0;
  r.rest_delay[static_cast<std::size_t>(g.target)] = 0.0;
  bool settled = false;
  for (std::size_t round = 0; round <= n && !settled; ++round) {
    settled = true;
    for (std::size_t e = 0; e < base.edges.size(); ++e) {
      const Edge& edge = base.edges[e];
      const auto u = static_cast<std::size_t>(edge.from);
      const auto v = static_cast<std::size_t>(edge.to);
      const double qw = q * static_cast<double>(g.base.weight[e]);
      if (r.rest_cost[v] + edge.c1 + qw * qw < r.rest_cost[u]) {
        r.rest_cost[u] = r.rest_cost[v] + edge.c1 + qw * qw;
        settled = false;
      }
      if (r.rest_delay[v] + static_cast<double>(g.base.weight[e]) < r.rest_delay[u]) {
        r.rest_delay[u] = r.rest_delay[v] + static_cast<double>(g.base.weight[e]);
        settled = false;
      }
    }
  }
  if (!settled) {
    // A cycle with negative c1 + (q w)^2: fall back to the hop-count bound.
    const double floor = static_cast<double>(g.layers) * min_c1(base);
    for (double& c : r.rest_cost) c = std::min(c, floor);
  }
  return r;
}

// Layered label-setting search. After each layer `after_layer(h, frontier)`
// returns the current pruning limit: labels whose cost plus rest bound exceed
// it are dropped.
template <typename AfterLayer>
Frontier run_frontier(const ExpandedGraph& g, std::int32_t hops, std::int64_t delay_cap, double limit,
                      AfterLayer after_layer) {
  const Adjacency adj(g);
  const auto n = static_cast<std::size_t>(g.base.base.node_count);
  const double q = g.base.quantum;
  const RestBound rest = rest_bound(g);
  Frontier f;
  f.at_target.resize(static_cast<std::size_t>(hops) + 1);
  f.arena.push_back({0, 0.0, -1, -1});
  std::vector<std::vector<std::int32_t>> current(n);
  current[static_cast<std::size_t>(g.source)].push_back(0);

  struct Candidate {
    NodeId node;
    std::int64_t delay;
    double cost;
    std::int32_t edge;
    std::int32_t parent;
  };
  std::vector<Candidate> cand;
  for (std::int32_t h = 1; h <= hops; ++h) {
    cand.clear();
    for (std::size_t u = 0; u < n; ++u) {
      if (current[u].empty()) continue;
      for (std::size_t e : adj.out[u]) {
        if (!g.allowed(e, h)) continue;
        const Edge& edge = g.base.base.edges[e];
        const auto v = static_cast<std::size_t>(edge.to);
        if (!std::isfinite(rest.rest_cost[v])) continue;
        const std::int64_t w = g.base.weight[e];
        const double c = g.biased(e);
        for (std::int32_t li : current[u]) {
          const Label& l = f.arena[static_cast<std::size_t>(li)];
          const std::int64_t d = l.delay + w;
          if (d > delay_cap) continue;
          const double cost = l.cost + c;
          const double qd = q * static_cast<double>(d);
          if (cost - h * g.delta + qd * qd + rest.at(v, d, q) > limit + 1e-9 * std::fabs(limit)) continue;
          cand.push_back({edge.to, d, cost, static_cast<std::int32_t>(e), li});
        }
      }
    }
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
      if (a.node != b.node) return a.node < b.node;
      if (a.delay != b.delay) return a.delay < b.delay;
      if (a.cost != b.cost) return a.cost < b.cost;
      if (a.edge != b.edge) return a.edge < b.edge;
      return a.parent < b.parent;
    });
    std::vector<std::vector<std::int32_t>> next(n);
    double best = kInf;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (i == 0 || cand[i].node != cand[i - 1].node) best = kInf;
      if (!(cand[i].cost < best)) continue;
      best = cand[i].cost;
      f.arena.push_back({cand[i].delay, cand[i].cost, cand[i].parent, cand[i].edge});
      next[static_cast<std::size_t>(cand[i].node)].push_back(static_cast<std::int32_t>(f.arena.size() - 1));
    }
    f.at_target[static_cast<std::size_t>(h)] = std::move(next[static_cast<std::size_t>(g.target)]);
    next[static_cast<std::size_t>(g.target)].clear();
    current = std::move(next);
    limit = std::min(limit, after_layer(h, f));
  }
  return f;
}

std::vector<std::size_t> frontier_path(const Frontier& f, std::int32_t label) {
  std::vector<std::size_t> edges;
  for (std::int32_t i = label; f.arena[static_cast<std::size_t>(i)].parent >= 0;
       i = f.arena[static_cast<std::size_t>(i)].parent) {
    edges.push_back(static_cast<std::size_t>(f.arena[static_cast<std::size_t>(i)].edge));
  }
  std::reverse(edges.begin(), edges.end());
  return edges;
}

// Min biased cost for every (hop, node, exact delay), layers 0..hops.
struct LayerTable {
  std::size_t nodes = 0;
  std::size_t width = 0;
  std::vector<double> cost;
  std::vector<std::int32_t> parent;

  std::size_t at(std::int32_t h, NodeId v, std::int64_t b) const {
    return (static_cast<std::size_t>(h) * nodes + static_cast<std::size_t>(v)) * width + static_cast<std::size_t>(b);
  }
};

LayerTable run_table(const ExpandedGraph& g, std::int32_t hops, std::int64_t delay_bound, std::size_t max_states) {
  LayerTable t;
  t.nodes = static_cast<std::size_t>(g.base.base.node_count);
  t.width = static_cast<std::size_t>(delay_bound) + 1;
  const double states = static_cast<double>(hops + 1) * static_cast<double>(t.nodes) * static_cast<double>(t.width);
  if (states > static_cast<double>(max_states)) {
    fail(ErrorKind::kResourceLimit, "layered delay table would need " + std::to_string(states) + " states");
  }
  const std::size_t total = static_cast<std::size_t>(states);
  t.cost.assign(total, kInf);
  t.parent.assign(total, -1);
  t.cost[t.at(0, g.source, 0)] = 0.0;
  const Adjacency adj(g);
  for (std::int32_t h = 1; h <= hops; ++h) {
    for (std::size_t u = 0; u < t.nodes; ++u) {
      for (std::size_t e : adj.out[u]) {
        if (!g.allowed(e, h)) continue;
        const std::int64_t w = g.base.weight[e];
        if (w > delay_bound) continue;
        const double c = g.biased(e);
        const std::size_t src = t.at(h - 1, static_cast<NodeId>(u), 0);
        const std::size_t dst = t.at(h, g.base.base.edges[e].to, w);
        const std::size_t run = t.width - static_cast<std::size_t>(w);
        for (std::size_t b = 0; b < run; ++b) {
          const double cand = t.cost[src + b] + c;
          if (cand < t.cost[dst + b]) {
            t.cost[dst + b] = cand;
            t.parent[dst + b] = static_cast<std::int32_t>(e);
          }
        }
      }
    }
  }
  return t;
}

std::vector<std::size_t> table_path(const ExpandedGraph& g, const LayerTable& t, std::int32_t h, std::int64_t b) {
  std::vector<std::size_t> edges;
  NodeId v = g.target;
  for (; h > 0; --h) {
    const auto e = static_cast<std::size_t>(t.parent[t.at(h, v, b)]);
    edges.push_back(e);
    b -= g.base.weight[e];
    v = g.base.base.edges[e].from;
  }
  std::reverse(edges.begin(), edges.end());
  return edges;
}

// Min delay for every (hop, node, rounded cost) with rounded cost <= cap.
// Returns the path to target(hops) with the smallest rounded cost whose delay
// fits, or an empty vector.
std::vector<std::size_t> rounded_search(const ExpandedGraph& g, const Adjacency& adj, std::int32_t hops,
                                        std::int64_t delay_bound, double theta, std::int64_t cap) {
  const auto n = static_cast<std::size_t>(g.base.base.node_count);
  const auto width = static_cast<std::size_t>(cap) + 1;
  auto at = [&](std::int32_t h, std::size_t v, std::int64_t r) {
    return (static_cast<std::size_t>(h) * n + v) * width + static_cast<std::size_t>(r);
  };
  std::vector<std::int64_t> delay(static_cast<std::size_t>(hops + 1) * n * width, kNoDelay);
  std::vector<std::int32_t> parent(delay.size(), -1);
  delay[at(0, static_cast<std::size_t>(g.source), 0)] = 0;
  for (std::int32_t h = 1; h <= hops; ++h) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t e : adj.out[u]) {
        if (!g.allowed(e, h)) continue;
        const double scaled = std::floor(g.biased(e) / theta);
        if (scaled > static_cast<double>(cap)) continue;
        const auto r = static_cast<std::int64_t>(scaled);
        const std::int64_t w = g.base.weight[e];
        const auto v = static_cast<std::size_t>(g.base.base.edges[e].to);
        for (std::int64_t k = 0; k + r <= cap; ++k) {
          const std::int64_t d = delay[at(h - 1, u, k)];
          if (d == kNoDelay || d + w > delay_bound) continue;
          const std::size_t dst = at(h, v, k + r);
          if (d + w < delay[dst]) {
            delay[dst] = d + w;
            parent[dst] = static_cast<std::int32_t>(e);
          }
        }
      }
    }
  }
  const auto t = static_cast<std::size_t>(g.target);
  for (std::int64_t k = 0; k <= cap; ++k) {
    if (delay[at(hops, t, k)] == kNoDelay) continue;
    std::vector<std::size_t> edges;
    std::size_t v = t;
    for (std::int32_t h = hops; h > 0; --h) {
      const auto e = static_cast<std::size_t>(parent[at(h, v, k)]);
      edges.push_back(e);
      k -= static_cast<std::int64_t>(std::floor(g.biased(e) / theta));
      v = static_cast<std::size_t>(g.base.base.edges[e].from);
    }
    std::reverse(edges.begin(), edges.end());
    return edges;
  }
  return {};
}

RSPResult describe(const ExpandedGraph& g, std::vector<std::size_t> edges) {
  RSPResult r;
  r.feasible = true;
  for (std::size_t e : edges) {
    r.cost += g.biased(e);
    r.delay += g.base.weight[e];
  }
  r.edges = std::move(edges);
  return r;
}

// Least-delay path to target(hops) using only edges accepted by `use`.
template <typename Use>
std::vector<std::size_t> least_delay(const ExpandedGraph& g, const Adjacency& adj, std::int32_t hops, Use use) {
  const auto n = static_cast<std::size_t>(g.base.base.node_count);
  std::vector<std::int64_t> prev(n, kNoDelay);
  std::vector<std::int32_t> parent(static_cast<std::size_t>(hops + 1) * n, -1);
  prev[static_cast<std::size_t>(g.source)] = 0;
  for (std::int32_t h = 1; h <= hops; ++h) {
    std::vector<std::int64_t> cur(n, kNoDelay);
    for (std::size_t u = 0; u < n; ++u) {
      if (prev[u] == kNoDelay) continue;
      for (std::size_t e : adj.out[u]) {
        if (!g.allowed(e, h) || !use(e)) continue;
        const auto v = static_cast<std::size_t>(g.base.base.edges[e].to);
        const std::int64_t d = prev[u] + g.base.weight[e];
        if (d < cur[v]) {
          cur[v] = d;
          parent[static_cast<std::size_t>(h) * n + v] = static_cast<std::int32_t>(e);
        }
      }
    }
    prev = std::move(cur);
  }
  if (prev[static_cast<std::size_t>(g.target)] == kNoDelay) return {};
  std::vector<std::size_t> edges;
  auto v = static_cast<std::size_t>(g.target);
  for (std::int32_t h = hops; h > 0; --h) {
    const auto e = static_cast<std::size_t>(parent[static_cast<std::size_t>(h) * n + v]);
    edges.push_back(e);
    v = static_cast<std::size_t>(g.base.base.edges[e].from);
  }
  std::reverse(edges.begin(), edges.end());
  return edges;
}

RSPResult rounding_rsp(const RSPQuery& q) {
  const ExpandedGraph& g = *q.graph;
  const Adjacency adj(g);
  const std::int32_t h = q.hops;
  auto fits = [&](const std::vector<std::size_t>& p) {
    std::int64_t d = 0;
    for (std::size_t e : p) d += g.base.weight[e];
    return !p.empty() && d <= q.delay_bound;
  };
  const auto fastest = least_delay(g, adj, h, [](std::size_t) { return true; });
  if (!fits(fastest)) return {};
  const auto free = least_delay(g, adj, h, [&](std::size_t e) { return g.biased(e) == 0.0; });
  if (fits(free)) return describe(g, free);

  // Every feasible path now uses a positive-cost edge.
  double smallest = kInf;
  for (std::size_t e = 0; e < g.base.base.edges.size(); ++e) {
    if (g.biased(e) > 0.0) smallest = std::min(smallest, g.biased(e));
  }
  // Find V with V / 2 < OPT <= 2 V: a search with step V / h and cap h finds
  // a path iff some path costs at most V (approximately).
  double v = smallest;
  const double upper = describe(g, fastest).cost;
  while (v < upper && rounded_search(g, adj, h, q.delay_bound, v / h, h).empty()) v *= 2.0;
  const double theta = q.epsilon * 0.5 * v / h;
  const auto cap = static_cast<std::int64_t>(std::ceil(2.0 * v / theta)) + h;
  auto path = rounded_search(g, adj, h, q.delay_bound, theta, cap);
  if (path.empty()) path = fastest;
  RSPResult r = describe(g, path);
  const RSPResult alt = describe(g, fastest);
  return alt.cost < r.cost ? alt : r;
}

void check_query(const RSPQuery& q) {
  if (q.graph == nullptr) fail(ErrorKind::kInvalidParameter, "query has no graph");
  if (q.delay_bound < 0) fail(ErrorKind::kInvalidParameter, "delay bound must be non-negative");
  if (!(q.epsilon > 0.0)) fail(ErrorKind::kInvalidParameter, "epsilon must be positive");
  if (q.hops < 1 || q.hops > q.graph->layers) fail(ErrorKind::kInvalidParameter, "hop count outside the expansion");
}

// One candidate per (hop count, sweep bound).
struct Choice {
  double estimate = kInf;  // biased cost - h delta + (q D_l)^2
  double actual = kInf;
  std::int32_t hops = 0;
  std::size_t sweep = 0;
  std::vector<std::size_t> edges;
};

bool better(const Choice& a, const Choice& b) {
  if (a.estimate != b.estimate) return a.estimate < b.estimate;
  if (a.actual != b.actual) return a.actual < b.actual;
  if (a.hops != b.hops) return a.hops < b.hops;
  return a.sweep < b.sweep;
}

}  // namespace

bool ExpandedGraph::allowed(std::size_t edge, std::int32_t h) const {
  const Edge& e = base.base.edges[edge];
  if (h < 1 || h > layers || e.to == source || e.from == target) return false;
  return h == 1 ? e.from == source : e.from != source;
}

ExpandedGraph expand_network(const QuantizedGraph& graph, NodeId source, NodeId target) {
  const CostGraph& g = graph.base;
  if (source < 0 || target < 0 || source >= g.node_count || target >= g.node_count || source == target) {
    fail(ErrorKind::kInvalidParameter, "expansion needs two distinct nodes of the graph");
  }
  ExpandedGraph x;
  x.base = graph;
  x.source = source;
  x.target = target;
  x.layers = std::max(1, g.node_count - 1);
  x.delta = std::max(0.0, -min_c1(g));
  return x;
}

CostGraph materialize(const ExpandedGraph& graph) {
  const std::int32_t n = graph.base.base.node_count;
  CostGraph out;
  out.node_count = (graph.layers + 1) * n;
  for (std::int32_t h = 1; h <= graph.layers; ++h) {
    for (std::size_t e = 0; e < graph.base.base.edges.size(); ++e) {
      if (!graph.allowed(e, h)) continue;
      const Edge& edge = graph.base.base.edges[e];
      out.add_edge(graph.replica(edge.from, h - 1), graph.replica(edge.to, h), graph.biased(e), edge.c2,
                   static_cast<std::int32_t>(e));
    }
  }
  return out;
}

RSPResult epsilon_rsp(const RSPQuery& query) {
  check_query(query);
  const ExpandedGraph& g = *query.graph;
  switch (query.method) {
    case RspMethod::kFrontier: {
      const Frontier f = run_frontier(g, query.hops, query.delay_bound, kInf, [](std::int32_t, const Frontier&) { return kInf; });
      const auto& labels = f.at_target[static_cast<std::size_t>(query.hops)];
      if (labels.empty()) return {};
      return describe(g, frontier_path(f, labels.back()));
    }
    case RspMethod::kBudgetTable: {
      const LayerTable t = run_table(g, query.hops, query.delay_bound, std::numeric_limits<std::size_t>::max());
      double best = kInf;
      std::int64_t at = -1;
      for (std::int64_t b = 0; b <= query.delay_bound; ++b) {
        if (t.cost[t.at(query.hops, g.target, b)] < best) {
          best = t.cost[t.at(query.hops, g.target, b)];
          at = b;
        }
      }
      if (at < 0) return {};
      return describe(g, table_path(g, t, query.hops, at));
    }
    case RspMethod::kCostRounding:
      return rounding_rsp(query);
  }
  return {};
}

std::vector<std::int64_t> sweep_bounds(std::int64_t bound, double eta) {
  if (!(eta > 0.0)) fail(ErrorKind::kInvalidParameter, "sweep ratio must be positive");
  std::vector<std::int64_t> out;
  double level = 1.0;
  for (;;) {
    const auto d = static_cast<std::int64_t>(std::ceil(level));
    out.push_back(d);
    if (d >= bound) break;
    level *= 1.0 + eta;
  }
  return out;
}

RouteResult epsilon_smer(const QuantizedGraph& graph, NodeId source, NodeId target, double epsilon,
                         const EpsOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 3.0)) fail(ErrorKind::kInvalidParameter, "epsilon must lie in (0, 3)");
  require_reachable(graph.base, source, target);
  const ExpandedGraph g = expand_network(graph, source, target);
  const std::int64_t bound = options.prune_budget ? budget_cap(graph, source, target) : graph.bound;
  const std::vector<std::int64_t> sweep = sweep_bounds(bound, epsilon / 3.0);
  const std::int64_t widest = sweep.back();
  const double q = graph.quantum;

  Choice best;
  auto consider = [&](std::int32_t h, std::size_t l, double biased, std::int64_t delay, auto&& path) {
    const double qd = q * static_cast<double>(sweep[l]);
    const double qb = q * static_cast<double>(delay);
    Choice c;
    c.estimate = biased - h * g.delta + qd * qd;
    c.actual = biased - h * g.delta + qb * qb;
    c.hops = h;
    c.sweep = l;
    if (better(c, best)) {
      c.edges = path();
      best = std::move(c);
    }
  };

  switch (options.method) {
    case RspMethod::kFrontier: {
      double limit = kInf;
      if (options.prune_budget) {
        const double upper = heuristic_cost(graph, source, target);
        limit = (1.0 + epsilon) * upper;
      }
      auto after_layer = [&](std::int32_t h, const Frontier& f) {
        const auto& labels = f.at_target[static_cast<std::size_t>(h)];
        std::size_t i = 0;
        for (std::size_t l = 0; l < sweep.size(); ++l) {
          while (i < labels.size() && f.arena[static_cast<std::size_t>(labels[i])].delay <= sweep[l]) ++i;
          if (i == 0) continue;
          const std::int32_t id = labels[i - 1];
          const Label& lab = f.arena[static_cast<std::size_t>(id)];
          consider(h, l, lab.cost, lab.delay, [&] { return frontier_path(f, id); });
        }
        return best.estimate;
      };
      run_frontier(g, g.layers, widest, limit, after_layer);
      break;
    }
    case RspMethod::kBudgetTable: {
      const LayerTable t = run_table(g, g.layers, widest, options.max_states);
      for (std::int32_t h = 1; h <= g.layers; ++h) {
        double run_best = kInf;
        std::int64_t at = -1;
        std::int64_t b = 0;
        for (std::size_t l = 0; l < sweep.size(); ++l) {
          for (; b <= sweep[l]; ++b) {
            const double c = t.cost[t.at(h, target, b)];
            if (c < run_best) {
              run_best = c;
              at = b;
            }
          }
          if (at < 0) continue;
          consider(h, l, run_best, at, [&] { return table_path(g, t, h, at); });
        }
      }
      break;
    }
    case RspMethod::kCostRounding: {
      for (std::int32_t h = 1; h <= g.layers; ++h) {
        for (std::size_t l = 0; l < sweep.size(); ++l) {
          if (l > 0 && sweep[l] == sweep[l - 1]) continue;
          const RSPResult r = epsilon_rsp({&g, h, sweep[l], epsilon, RspMethod::kCostRounding});
          if (!r.feasible) continue;
          consider(h, l, r.cost, r.delay, [&] { return r.edges; });
        }
      }
      break;
    }
  }
  if (best.edges.empty()) fail(ErrorKind::kUnreachable, "no layered path reaches the target within the budget");

  RouteResult r;
  r.algorithm = Algorithm::kEpsSmer;
  r.edges = remove_cycles(graph.base, best.edges, r.shortcut);
  r.nodes = path_nodes(graph.base, r.edges);
  for (std::size_t e : r.edges) r.budget_used += graph.weight[e];
  r.quantized_cost = quantized_path_cost(graph, r.edges);
  r.cost = continuous_path_cost(graph.base, r.edges);
  return r;
}

}  // namespace secroute
