#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "secroute/error.hpp"
#include "secroute/kernels.hpp"
#include "secroute/network.hpp"
#include "secroute/routing.hpp"
#include "test_graphs.hpp"

namespace secroute {
namespace {

using testing_support::random_graph;

bool reachable(const CostGraph& g, NodeId s, NodeId t) {
  try {
    require_reachable(g, s, t);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Raises negative c1 to -0.9 (q w)^2 so that no cycle pays for its budget.
void clip_negative(QuantizedGraph& qg) {
  for (std::size_t e = 0; e < qg.weight.size(); ++e) {
    const double qw = qg.quantum * static_cast<double>(qg.weight[e]);
    auto& c1 = qg.base.edges[e].c1;
    if (c1 < 0.0) c1 = std::max(c1, -0.9 * qw * qw);
  }
}

double gadget_cost(const std::vector<std::int64_t>& values) {
  const CostGraph g = partition_gadget(values);
  return dp_smer(quantize(g, 1.0), 0, g.node_count - 1).quantized_cost;
}

TEST(Quantize, RoundingExamples) {
  CostGraph g;
  g.node_count = 3;
  g.add_edge(0, 1, 0, 0.34);
  g.add_edge(1, 2, 0, 1.27);
  const QuantizedGraph q = quantize(g, 0.1);
  EXPECT_EQ(q.weight, (std::vector<std::int64_t>{3, 13}));
  EXPECT_EQ(q.bound, 2 * 13);
  EXPECT_FALSE(q.degenerate);
}

TEST(Quantize, ExactMultiplesAndBoundary) {
  CostGraph g;
  g.node_count = 3;
  g.add_edge(0, 1, 0, 0.75);
  g.add_edge(1, 2, 0, 1.5);
  g.add_edge(0, 2, 0, 0.0);
  EXPECT_EQ(quantize(g, 0.25).weight, (std::vector<std::int64_t>{3, 6, 0}));
  const QuantizedGraph top = quantize(g, 1.5);
  for (auto w : top.weight) EXPECT_LE(w, 1);
  EXPECT_TRUE(quantize(g, 2.0).degenerate);
}

TEST(Quantize, PositiveC2NeverRoundsToZero) {
  CostGraph g;
  g.node_count = 2;
  g.add_edge(0, 1, -1.0, 0.01);
  EXPECT_EQ(quantize(g, 1.0).weight[0], 1);
}

TEST(Quantize, WithinHalfQuantum) {
  std::mt19937_64 rng(7);
  const CostGraph g = random_graph(rng, 8, 0.6);
  const double q = default_quantum(g);
  const QuantizedGraph qg = quantize(g, q);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    EXPECT_LE(std::abs(static_cast<double>(qg.weight[e]) * q - g.edges[e].c2), 0.5 * q + 1e-12);
  }
  EXPECT_THROW(quantize(g, 0.0), Error);
}

TEST(DefaultQuantum, Formula) {
  CostGraph g;
  g.node_count = 5;
  g.add_edge(0, 1, 0, 2.0);
  g.add_edge(1, 2, 0, 8.0);
  EXPECT_DOUBLE_EQ(default_quantum(g), 8.0 / 800.0);
}

TEST(BudgetDp, MatchesLevelOracle) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    CostGraph g = random_graph(rng, 6, 0.5);
    // A few zero-c2 edges exercise the closure within a level.
    g.add_edge(1, 2, 0.5, 0.0);
    g.add_edge(3, 4, 0.25, 0.0);
    const QuantizedGraph qg = quantize(g, 0.5);
    const std::int64_t max_b = 30;
    const BudgetTable table = budget_dp(qg, 0, max_b);
    const std::vector<double> want = oracle::level_dp(qg, 0, max_b);
    ASSERT_EQ(table.cost.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(table.cost[i], want[i]) << i;
  }
}

TEST(BudgetDp, TracedPathsReproduceTable) {
  std::mt19937_64 rng(14);
  const CostGraph g = random_graph(rng, 7, 0.5, true);
  const QuantizedGraph qg = quantize(g, 0.4);
  const BudgetTable table = budget_dp(qg, 0, 25);
  for (NodeId v = 1; v < 7; ++v) {
    for (std::int64_t b = 0; b <= 25; ++b) {
      if (table.cost[table.at(v, b)] == kernels::kUnreached) continue;
      const auto walk = trace_budget_path(qg, table, v, b);
      double c1 = 0.0;
      std::int64_t w = 0;
      for (std::size_t e : walk) {
        c1 += g.edges[e].c1;
        w += qg.weight[e];
      }
      EXPECT_EQ(w, b);
      EXPECT_EQ(c1, table.cost[table.at(v, b)]);
      ASSERT_FALSE(walk.empty());
      EXPECT_EQ(g.edges[walk.back()].to, v);
    }
  }
}

TEST(DpSmer, SingleEdge) {
  CostGraph g;
  g.node_count = 2;
  g.add_edge(0, 1, 1.5, 0.8);
  const RouteResult r = dp_smer(quantize(g, 0.01), 0, 1);
  EXPECT_EQ(r.edges, (std::vector<std::size_t>{0}));
  EXPECT_NEAR(r.cost, 1.5 + 0.64, 1e-12);
  EXPECT_NEAR(r.quantized_cost, r.cost, 0.01 * 2 * 0.8 + 1e-4);
}

TEST(DpSmer, MatchesBruteForce) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const std::int32_t n = 3 + t % 6;
    const CostGraph g = random_graph(rng, n, 0.45, t % 2 == 1);
    if (!reachable(g, 0, n - 1)) continue;
    QuantizedGraph qg = quantize(g, default_quantum(g) * (1 + t % 4) * 5.0);
    clip_negative(qg);
    const oracle::Best best = oracle::best_simple_path(qg, 0, n - 1);
    const RouteResult r = dp_smer(qg, 0, n - 1);
    EXPECT_EQ(r.quantized_cost, best.cost) << t;
    EXPECT_FALSE(r.shortcut);
    EXPECT_EQ(r.nodes.front(), 0);
    EXPECT_EQ(r.nodes.back(), n - 1);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (NodeId v : r.nodes) {
      EXPECT_FALSE(seen[static_cast<std::size_t>(v)]);
      seen[static_cast<std::size_t>(v)] = true;
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(DpSmer, PruningDoesNotChangeAnswer) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 60; ++t) {
    const CostGraph g = random_graph(rng, 9, 0.35, true);
    if (!reachable(g, 0, 8)) continue;
    QuantizedGraph qg = quantize(g, default_quantum(g));
    clip_negative(qg);
    DpOptions full;
    full.prune_budget = false;
    const RouteResult a = dp_smer(qg, 0, 8);
    const RouteResult b = dp_smer(qg, 0, 8, full);
    EXPECT_EQ(a.quantized_cost, b.quantized_cost);
    EXPECT_LE(budget_cap(qg, 0, 8), qg.bound);
    EXPECT_GE(budget_cap(qg, 0, 8), a.budget_used);
  }
}

TEST(DpSmer, HeuristicIsAnUpperBound) {
  std::mt19937_64 rng(78);
  for (int t = 0; t < 40; ++t) {
    const CostGraph g = random_graph(rng, 7, 0.4, true);
    if (!reachable(g, 0, 6)) {
      EXPECT_TRUE(std::isinf(heuristic_cost(quantize(g, 0.1), 0, 6)));
      continue;
    }
    QuantizedGraph qg = quantize(g, 0.1);
    clip_negative(qg);
    EXPECT_GE(heuristic_cost(qg, 0, 6), dp_smer(qg, 0, 6).quantized_cost);
  }
}

TEST(DpSmer, Errors) {
  CostGraph g;
  g.node_count = 3;
  g.add_edge(0, 1, 1, 1);
  const QuantizedGraph qg = quantize(g, 0.5);
  try {
    dp_smer(qg, 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnreachable);
  }
  EXPECT_THROW(dp_smer(qg, 1, 1), Error);
  DpOptions tiny;
  tiny.max_states = 2;
  tiny.prune_budget = false;
  try {
    dp_smer(qg, 0, 1, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
  }
}

TEST(DpSmer, WalkShortcutWhenCycleIsCheap) {
  // 0 -> 1 -> 2 -> 1 -> 3 is the best walk under the budget model: the
  // cycle through 2 earns more c1 than its budget costs. The returned path
  // drops the cycle and says so.
  CostGraph g;
  g.node_count = 4;
  g.add_edge(0, 1, 0.0, 1.0);
  g.add_edge(1, 2, -50.0, 1.0);
  g.add_edge(2, 1, -50.0, 1.0);
  g.add_edge(1, 3, 0.0, 1.0);
  g.add_edge(0, 3, 1000.0, 10.0);
  const RouteResult r = dp_smer(quantize(g, 1.0), 0, 3);
  EXPECT_TRUE(r.shortcut);
  EXPECT_EQ(r.nodes, (std::vector<NodeId>{0, 1, 3}));
  EXPECT_DOUBLE_EQ(r.quantized_cost, 4.0);
}

TEST(RemoveCycles, KeepsFirstVisit) {
  CostGraph g;
  g.node_count = 4;
  g.add_edge(0, 1, 0, 0);
  g.add_edge(1, 2, 0, 0);
  g.add_edge(2, 1, 0, 0);
  g.add_edge(1, 3, 0, 0);
  bool changed = false;
  const std::vector<std::size_t> walk{0, 1, 2, 3};
  EXPECT_EQ(remove_cycles(g, walk, changed), (std::vector<std::size_t>{0, 3}));
  EXPECT_TRUE(changed);
  const std::vector<std::size_t> simple{0, 3};
  EXPECT_EQ(remove_cycles(g, simple, changed), simple);
  EXPECT_FALSE(changed);
}

TEST(Gadget, Structure) {
  const std::vector<std::int64_t> values{3, 1, 2};
  const CostGraph g = partition_gadget(values);
  EXPECT_EQ(g.node_count, 4);
  ASSERT_EQ(g.edges.size(), 6u);
  for (const Edge& e : g.edges) {
    EXPECT_EQ(e.to, e.from + 1);
    const std::int64_t v = values[static_cast<std::size_t>(e.from)];
    const bool upper = e.c2 == 0.0;
    EXPECT_EQ(e.c1, upper ? 6.0 * static_cast<double>(v) : 0.0);
    if (!upper) EXPECT_EQ(e.c2, static_cast<double>(v));
  }
  const std::vector<std::int64_t> odd{1, 2};
  try {
    partition_gadget(odd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInstance);
  }
}

TEST(Gadget, KnownOptima) {
  EXPECT_EQ(gadget_cost({3, 1, 2}), 27.0);
  EXPECT_EQ(gadget_cost({1, 1}), 3.0);
  EXPECT_EQ(gadget_cost({5, 1, 2}), 49.0);
}

TEST(Gadget, PartitionSoundness) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> value(1, 12);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::int64_t> values(1 + t % 8);
    std::int64_t sum = 0;
    for (auto& v : values) sum += (v = value(rng));
    if (sum % 2 != 0) values.push_back(1), ++sum;
    const double k = static_cast<double>(sum / 2);
    const double delta = static_cast<double>(oracle::best_imbalance(values)) / 2.0;
    EXPECT_EQ(gadget_cost(values), 3.0 * k * k + delta * delta);
  }
}

TEST(Sasp, MinimisesSourcePower) {
  NetworkConfig cfg;
  cfg.side_length = 3.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const NetworkInstance net = generate_network(cfg, seed);
    const RouteResult r = sasp(net.params, net.graph, net.links, net.source, net.target);
    double power = 0.0;
    for (std::size_t e : r.edges) {
      const LinkSpec& l = net.links[static_cast<std::size_t>(net.graph.edges[e].link)];
      power += source_power(net.params, distance(l.source, l.dest));
    }
    const double best = oracle::least_power(net.params, net.graph, net.links, net.source, net.target);
    EXPECT_NEAR(power, best, 1e-12 * best);
  }
}

TEST(Sasp, SinglePathAgreesWithDp) {
  NetworkConfig cfg;
  const ChannelParams params;
  std::vector<LinkSpec> links(2);
  links[0].source_id = 0;
  links[0].dest_id = 1;
  links[0].dest = {1, 0};
  links[1].source_id = 1;
  links[1].source = {1, 0};
  links[1].dest_id = 2;
  links[1].dest = {2, 0};
  for (auto& l : links) {
    l.eaves = {{{1, 1}, 1.0}};
    l.jammers = {{1.5, 0.8}};
  }
  const CostGraph g = price_links(params, links, 3, 0.1);
  const RouteResult a = sasp(params, g, links, 0, 2);
  const RouteResult b = dp_smer(quantize(g, default_quantum(g)), 0, 2);
  EXPECT_EQ(a.edges, b.edges);
}

TEST(Sasp, DpNeverWorseUpToQuantization) {
  NetworkConfig cfg;
  cfg.placement = Placement::kDiagonal;
  cfg.channel.alpha = 4.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const NetworkInstance net = generate_network(cfg, seed);
    RouteResult a = sasp(net.params, net.graph, net.links, net.source, net.target);
    RouteResult b = dp_smer(quantize(net.graph, default_quantum(net.graph)), net.source, net.target);
    annotate_route(net.params, net.graph, net.links, cfg.pi, a);
    annotate_route(net.params, net.graph, net.links, cfg.pi, b);
    EXPECT_LE(b.cost, a.cost * 1.005);
    EXPECT_NEAR(a.energy, a.cost, 1e-6 * a.cost);
  }
}

TEST(EqualAllocation, Values) {
  EXPECT_EQ(equal_allocation(1, 0.1).pi_per_link, (std::vector<double>{0.1}));
  for (double v : equal_allocation(4, 0.1).pi_per_link) EXPECT_DOUBLE_EQ(v, 0.025);
  const std::vector<double> same{0.4, 0.4, 0.4};
  const auto opt = allocate_secrecy(same, 0.1).pi_per_link;
  const auto eq = equal_allocation(3, 0.1).pi_per_link;
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(opt[i], eq[i], 1e-15);
  EXPECT_THROW(equal_allocation(0, 0.1), Error);
}

TEST(Algorithm, Names) {
  EXPECT_EQ(to_string(Algorithm::kDpSmer), "DP-SMER");
  EXPECT_EQ(to_string(Algorithm::kSasp), "SASP");
}

}  // namespace
}  // namespace secroute
