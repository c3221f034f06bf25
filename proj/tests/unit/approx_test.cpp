#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "secroute/approx.hpp"
#include "secroute/error.hpp"
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

void clip_negative(QuantizedGraph& qg) {
  for (std::size_t e = 0; e < qg.weight.size(); ++e) {
    const double qw = qg.quantum * static_cast<double>(qg.weight[e]);
    auto& c1 = qg.base.edges[e].c1;
    if (c1 < 0.0) c1 = std::max(c1, -0.9 * qw * qw);
  }
}

double path_c1(const CostGraph& g, const std::vector<std::size_t>& edges) {
  double c = 0.0;
  for (std::size_t e : edges) c += g.edges[e].c1;
  return c;
}

TEST(Expand, NonNegativeCostsNeedNoBias) {
  std::mt19937_64 rng(1);
  const CostGraph g = random_graph(rng, 5, 0.5);
  EXPECT_EQ(expand_network(quantize(g, 0.1), 0, 4).delta, 0.0);
}

TEST(Expand, BiasLiftsMostNegativeEdge) {
  CostGraph g;
  g.node_count = 3;
  g.add_edge(0, 1, -2.5, 1.0);
  g.add_edge(1, 2, 1.0, 1.0);
  const ExpandedGraph x = expand_network(quantize(g, 1.0), 0, 2);
  EXPECT_EQ(x.delta, 2.5);
  const CostGraph m = materialize(x);
  for (const Edge& e : m.edges) EXPECT_GE(e.c1, 0.0);
}

TEST(Expand, TwoNodes) {
  CostGraph g;
  g.node_count = 2;
  g.add_edge(0, 1, 1.0, 1.0);
  const ExpandedGraph x = expand_network(quantize(g, 1.0), 0, 1);
  EXPECT_EQ(x.layers, 1);
  const CostGraph m = materialize(x);
  ASSERT_EQ(m.edges.size(), 1u);
  EXPECT_EQ(m.edges[0].from, x.replica(0, 0));
  EXPECT_EQ(m.edges[0].to, x.replica(1, 1));
}

TEST(Expand, TriangleLayers) {
  CostGraph g;
  g.node_count = 3;
  g.add_edge(0, 1, 1, 1);
  g.add_edge(1, 2, 1, 1);
  g.add_edge(0, 2, 1, 1);
  g.add_edge(1, 0, 1, 1);
  g.add_edge(2, 1, 1, 1);
  const ExpandedGraph x = expand_network(quantize(g, 1.0), 0, 2);
  const CostGraph m = materialize(x);
  for (std::int32_t h = 1; h <= x.layers; ++h) {
    EXPECT_EQ(oracle::count_simple_paths(m, x.replica(0, 0), x.replica(2, h)), oracle::count_layered_walks(g, 0, 2, h));
  }
  EXPECT_EQ(oracle::count_simple_paths(m, x.replica(0, 0), x.replica(2, 1)), 1u);
  EXPECT_EQ(oracle::count_simple_paths(m, x.replica(0, 0), x.replica(2, 2)), 1u);
}

TEST(Expand, EveryPathHasLayerManyHops) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const CostGraph g = random_graph(rng, 6, 0.5, true);
    const ExpandedGraph x = expand_network(quantize(g, 0.2), 0, 5);
    const CostGraph m = materialize(x);
    const std::int32_t n = g.node_count;
    for (const Edge& e : m.edges) {
      EXPECT_EQ(e.to / n, e.from / n + 1);
      EXPECT_NE(e.to % n, 0);
      EXPECT_NE(e.from % n, 5);
    }
    for (std::int32_t h = 1; h <= x.layers; ++h) {
      EXPECT_EQ(oracle::count_simple_paths(m, x.replica(0, 0), x.replica(5, h)), oracle::count_layered_walks(g, 0, 5, h));
    }
  }
}

TEST(Sweep, CoversBoundLogarithmically) {
  for (std::int64_t bound : {1, 2, 17, 1000, 123456}) {
    for (double eta : {0.01, 0.1 / 3, 1.0 / 3}) {
      const auto s = sweep_bounds(bound, eta);
      EXPECT_GE(s.back(), bound);
      if (s.size() > 1) EXPECT_LT(s[s.size() - 2], bound);
      EXPECT_EQ(s.front(), 1);
      EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
      const double limit = std::log(static_cast<double>(bound)) / std::log1p(eta) + 2.0;
      EXPECT_LE(static_cast<double>(s.size()), limit);
    }
  }
}

TEST(Rsp, UniqueAndCheapButSlow) {
  CostGraph g;
  g.node_count = 4;
  g.add_edge(0, 1, 1.0, 5.0);
  g.add_edge(1, 3, 1.0, 5.0);
  g.add_edge(0, 2, 4.0, 1.0);
  g.add_edge(2, 3, 4.0, 1.0);
  const ExpandedGraph x = expand_network(quantize(g, 1.0), 0, 3);
  for (RspMethod m : {RspMethod::kFrontier, RspMethod::kBudgetTable, RspMethod::kCostRounding}) {
    RSPResult r = epsilon_rsp({&x, 2, 10, 0.5, m});
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.edges, (std::vector<std::size_t>{0, 1}));
    r = epsilon_rsp({&x, 2, 9, 0.5, m});
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.edges, (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(r.delay, 2);
    EXPECT_FALSE(epsilon_rsp({&x, 2, 1, 0.5, m}).feasible);
    EXPECT_FALSE(epsilon_rsp({&x, 1, 100, 0.5, m}).feasible);
  }
}

TEST(Rsp, MatchesLayeredOracle) {
  std::mt19937_64 rng(3);
  int feasible = 0;
  for (int t = 0; t < 100; ++t) {
    const std::int32_t n = 4 + t % 3;
    const CostGraph g = random_graph(rng, n, 0.5, t % 2 == 0);
    const QuantizedGraph qg = quantize(g, 0.25);
    const ExpandedGraph x = expand_network(qg, 0, n - 1);
    const std::int32_t h = 1 + t % (n - 1);
    const std::int64_t delay = 5 + t % 30;
    const double eps = t % 2 ? 0.1 : 1.0;
    const oracle::Best want = oracle::layered_walk(qg, 0, n - 1, h, delay, x.delta);
    for (RspMethod m : {RspMethod::kFrontier, RspMethod::kBudgetTable, RspMethod::kCostRounding}) {
      const RSPResult r = epsilon_rsp({&x, h, delay, eps, m});
      ASSERT_EQ(r.feasible, want.found) << t;
      if (!r.feasible) continue;
      EXPECT_LE(r.delay, delay);
      EXPECT_EQ(static_cast<std::int32_t>(r.edges.size()), h);
      const double tol = 1e-9 * std::max(1.0, want.cost);
      if (m == RspMethod::kCostRounding) {
        EXPECT_LE(r.cost, (1.0 + eps) * want.cost + tol);
      } else {
        EXPECT_NEAR(r.cost, want.cost, tol);
      }
      EXPECT_NEAR(r.cost, path_c1(g, r.edges) + h * x.delta, tol);
    }
    feasible += want.found;
  }
  EXPECT_GT(feasible, 30);
}

TEST(Rsp, BiasDoesNotChangeArgmin) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const CostGraph g = random_graph(rng, 5 + t % 2, 0.5, true);
    const std::int32_t n = g.node_count;
    const QuantizedGraph qg = quantize(g, 0.25);
    const ExpandedGraph x = expand_network(qg, 0, n - 1);
    for (std::int32_t h = 1; h < n; ++h) {
      const oracle::Best plain = oracle::layered_walk(qg, 0, n - 1, h, 40, 0.0);
      const RSPResult r = epsilon_rsp({&x, h, 40, 0.1, RspMethod::kFrontier});
      ASSERT_EQ(r.feasible, plain.found);
      if (!plain.found) continue;
      EXPECT_NEAR(path_c1(g, r.edges), plain.cost, 1e-9 * std::max(1.0, std::abs(plain.cost)));
    }
  }
}

TEST(Rsp, RejectsBadQueries) {
  CostGraph g;
  g.node_count = 2;
  g.add_edge(0, 1, 1, 1);
  const ExpandedGraph x = expand_network(quantize(g, 1.0), 0, 1);
  EXPECT_THROW(epsilon_rsp({nullptr, 1, 1, 0.1, RspMethod::kFrontier}), Error);
  EXPECT_THROW(epsilon_rsp({&x, 2, 1, 0.1, RspMethod::kFrontier}), Error);
  EXPECT_THROW(epsilon_rsp({&x, 1, -1, 0.1, RspMethod::kFrontier}), Error);
  EXPECT_THROW(epsilon_rsp({&x, 1, 1, 0.0, RspMethod::kFrontier}), Error);
}

TEST(EpsSmer, SinglePath) {
  CostGraph g;
  g.node_count = 3;
  g.add_edge(0, 1, 2.0, 1.0);
  g.add_edge(1, 2, -0.5, 1.0);
  for (double eps : {0.1, 1.0, 2.9}) {
    const RouteResult r = epsilon_smer(quantize(g, 0.5), 0, 2, eps);
    EXPECT_EQ(r.edges, (std::vector<std::size_t>{0, 1}));
    EXPECT_DOUBLE_EQ(r.quantized_cost, 1.5 + 4.0);
  }
}

TEST(EpsSmer, GadgetWithinBound) {
  const std::vector<std::int64_t> values{3, 1, 2};
  const CostGraph g = partition_gadget(values);
  for (RspMethod m : {RspMethod::kFrontier, RspMethod::kBudgetTable, RspMethod::kCostRounding}) {
    EpsOptions o;
    o.method = m;
    EXPECT_LE(epsilon_smer(quantize(g, 1.0), 0, 3, 0.1, o).quantized_cost, 29.7);
  }
}

TEST(EpsSmer, WithinFactorOfDp) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    const std::int32_t n = 4 + t % 9;
    const CostGraph g = random_graph(rng, n, 0.3, t % 2 == 1);
    if (!reachable(g, 0, n - 1)) continue;
    QuantizedGraph qg = quantize(g, default_quantum(g) * 4.0);
    clip_negative(qg);
    const double dp = dp_smer(qg, 0, n - 1).quantized_cost;
    for (double eps : {0.1, 1.0}) {
      for (RspMethod m : {RspMethod::kFrontier, RspMethod::kBudgetTable, RspMethod::kCostRounding}) {
        if (m == RspMethod::kBudgetTable && n > 9) continue;
        EpsOptions o;
        o.method = m;
        const RouteResult r = epsilon_smer(qg, 0, n - 1, eps, o);
        EXPECT_LE(r.quantized_cost, (1.0 + eps) * dp + 1e-9 * std::abs(dp)) << t << " " << eps;
        EXPECT_GE(r.quantized_cost, dp - 1e-9 * std::abs(dp));
      }
    }
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST(EpsSmer, RejectsEpsilonOutOfRange) {
  CostGraph g;
  g.node_count = 2;
  g.add_edge(0, 1, 1, 1);
  const QuantizedGraph qg = quantize(g, 1.0);
  for (double eps : {0.0, 3.0, -1.0, 5.0}) {
    try {
      epsilon_smer(qg, 0, 1, eps);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidParameter);
    }
  }
}

}  // namespace
}  // namespace secroute
