#include <cstring>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "secroute/approx.hpp"
#include "secroute/error.hpp"
#include "secroute/kernels.hpp"
#include "secroute/routing.hpp"
#include "test_graphs.hpp"

namespace secroute {
namespace {

using kernels::kNoHops;
using kernels::kNoParent;
using kernels::kUnreached;

struct Lane {
  std::vector<double> cost;
  std::vector<std::int32_t> hops;
  std::vector<std::int32_t> parent;
};

// Values drawn from a small set so that ties in cost and hops are common.
Lane random_lane(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> pick(0, 9);
  Lane l;
  for (std::size_t i = 0; i < n; ++i) {
    const int r = pick(rng);
    if (r == 0) {
      l.cost.push_back(kUnreached);
      l.hops.push_back(kNoHops);
      l.parent.push_back(kNoParent);
    } else {
      l.cost.push_back(r < 5 ? 0.5 * r : -1.25 * r);
      l.hops.push_back(pick(rng) % 3);
      l.parent.push_back(pick(rng));
    }
  }
  return l;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (kernels::avx2_table() == nullptr) GTEST_SKIP() << "AVX2 kernels unavailable";
  }
  void TearDown() override { kernels::force(nullptr); }
};

TEST(Kernels, ScalarRelaxFollowsLexicographicRule) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 37;
    Lane dst = random_lane(rng, n);
    const Lane src = random_lane(rng, n);
    const Lane before = dst;
    const double c1 = (t % 5) * 0.5 - 1.0;
    const std::int32_t edge = t % 11;
    kernels::scalar_table().relax(dst.cost, dst.hops, dst.parent, src.cost, src.hops, c1, edge);
    for (std::size_t i = 0; i < n; ++i) {
      bool win = false;
      if (src.cost[i] != kUnreached) {
        const double c = src.cost[i] + c1;
        const std::int32_t h = src.hops[i] + 1;
        win = c < before.cost[i] || (c == before.cost[i] && (h < before.hops[i] ||
                                                             (h == before.hops[i] && edge < before.parent[i])));
        if (win) {
          EXPECT_EQ(dst.cost[i], c);
          EXPECT_EQ(dst.hops[i], h);
          EXPECT_EQ(dst.parent[i], edge);
        }
      }
      if (!win) {
        EXPECT_EQ(dst.cost[i], before.cost[i]);
        EXPECT_EQ(dst.parent[i], before.parent[i]);
      }
    }
  }
}

TEST(Kernels, ScalarBudgetMinMatchesScan) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = t % 41;
    const Lane l = random_lane(rng, n);
    const double q = 0.25 * (1 + t % 3);
    const std::size_t first = t % 7;
    const kernels::BudgetMin m = kernels::scalar_table().budget_min(l.cost, l.hops, q, first);
    bool found = false;
    double best = 0.0;
    std::int32_t best_h = 0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (l.cost[i] == kUnreached) continue;
      const double b = q * static_cast<double>(first + i);
      const double v = l.cost[i] + b * b;
      if (!found || v < best || (v == best && l.hops[i] < best_h)) {
        found = true;
        best = v;
        best_h = l.hops[i];
        best_i = i;
      }
    }
    ASSERT_EQ(m.found, found);
    if (found) {
      EXPECT_EQ(m.index, best_i);
      EXPECT_EQ(m.value, best);
      EXPECT_EQ(m.hops, best_h);
    }
  }
}

TEST_F(KernelEquivalence, RelaxBitIdentical) {
  const auto& s = kernels::scalar_table();
  const auto& v = *kernels::avx2_table();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = t % 67;
    Lane a = random_lane(rng, n);
    Lane b = a;
    const Lane src = random_lane(rng, n);
    const double c1 = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const std::int32_t edge = t % 13;
    s.relax(a.cost, a.hops, a.parent, src.cost, src.hops, c1, edge);
    v.relax(b.cost, b.hops, b.parent, src.cost, src.hops, c1, edge);
    ASSERT_EQ(0, std::memcmp(a.cost.data(), b.cost.data(), n * sizeof(double)));
    ASSERT_EQ(a.hops, b.hops);
    ASSERT_EQ(a.parent, b.parent);
  }
}

TEST_F(KernelEquivalence, BudgetMinBitIdentical) {
  const auto& s = kernels::scalar_table();
  const auto& v = *kernels::avx2_table();
  std::mt19937_64 rng(4);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = t % 71;
    const Lane l = random_lane(rng, n);
    const double q = std::uniform_real_distribution<double>(0.01, 2.0)(rng);
    const std::size_t first = t % 100;
    const auto a = s.budget_min(l.cost, l.hops, q, first);
    const auto b = v.budget_min(l.cost, l.hops, q, first);
    ASSERT_EQ(a.found, b.found);
    if (!a.found) continue;
    ASSERT_EQ(a.index, b.index);
    ASSERT_EQ(0, std::memcmp(&a.value, &b.value, sizeof(double)));
    ASSERT_EQ(a.hops, b.hops);
  }
}

TEST_F(KernelEquivalence, RoutingUnaffectedByKernelChoice) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const CostGraph g = testing_support::random_graph(rng, 10, 0.4, true);
    const QuantizedGraph qg = quantize(g, default_quantum(g));
    try {
      require_reachable(g, 0, 9);
    } catch (const Error&) {
      continue;
    }
    kernels::force(&kernels::scalar_table());
    const RouteResult a = dp_smer(qg, 0, 9);
    const RouteResult ea = epsilon_smer(qg, 0, 9, 0.5);
    kernels::force(kernels::avx2_table());
    const RouteResult b = dp_smer(qg, 0, 9);
    const RouteResult eb = epsilon_smer(qg, 0, 9, 0.5);
    EXPECT_EQ(a.edges, b.edges);
    EXPECT_EQ(a.quantized_cost, b.quantized_cost);
    EXPECT_EQ(ea.edges, eb.edges);
  }
}

TEST(Kernels, ForceOverridesActive) {
  kernels::force(&kernels::scalar_table());
  EXPECT_EQ(kernels::active().name, kernels::scalar_table().name);
  kernels::force(nullptr);
  EXPECT_FALSE(kernels::active().name.empty());
}

}  // namespace
}  // namespace secroute
