#include "kernels_impl.hpp"

namespace secroute::kernels {

void relax_scalar(std::span<double> dst_cost, std::span<std::int32_t> dst_hops,
                  std::span<std::int32_t> dst_parent, std::span<const double> src_cost,
                  std::span<const std::int32_t> src_hops, double c1, std::int32_t edge) {
  const std::size_t n = dst_cost.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(src_cost[i] < kUnreached)) continue;
    const double t = src_cost[i] + c1;
    const std::int32_t h = src_hops[i] + 1;
    if (candidate_wins(t, h, edge, dst_cost[i], dst_hops[i], dst_parent[i])) {
      dst_cost[i] = t;
      dst_hops[i] = h;
      dst_parent[i] = edge;
    }
  }
}

BudgetMin budget_min_scalar(std::span<const double> cost, std::span<const std::int32_t> hops, double q,
                            std::size_t first_budget) {
  BudgetMin best;
  for (std::size_t i = 0; i < cost.size(); ++i) {
    if (!(cost[i] < kUnreached)) continue;
    const double qb = q * static_cast<double>(first_budget + i);
    const double v = cost[i] + qb * qb;
    if (!best.found || v < best.value || (v == best.value && hops[i] < best.hops)) {
      best = BudgetMin{true, i, v, hops[i]};
    }
  }
  return best;
}

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &relax_scalar, &budget_min_scalar};
  return table;
}

}  // namespace secroute::kernels
