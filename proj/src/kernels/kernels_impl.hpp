#pragma once

#include "secroute/kernels.hpp"

namespace secroute::kernels {

inline bool candidate_wins(double t, std::int32_t h, std::int32_t e, double cur, std::int32_t cur_h,
                           std::int32_t cur_e) {
  if (t != cur) return t < cur;
  if (h != cur_h) return h < cur_h;
  return e < cur_e;
}

void relax_scalar(std::span<double> dst_cost, std::span<std::int32_t> dst_hops,
                  std::span<std::int32_t> dst_parent, std::span<const double> src_cost,
                  std::span<const std::int32_t> src_hops, double c1, std::int32_t edge);
BudgetMin budget_min_scalar(std::span<const double> cost, std::span<const std::int32_t> hops, double q,
                            std::size_t first_budget);

#if defined(SECROUTE_HAVE_AVX2)
void relax_avx2(std::span<double> dst_cost, std::span<std::int32_t> dst_hops,
                std::span<std::int32_t> dst_parent, std::span<const double> src_cost,
                std::span<const std::int32_t> src_hops, double c1, std::int32_t edge);
BudgetMin budget_min_avx2(std::span<const double> cost, std::span<const std::int32_t> hops, double q,
                          std::size_t first_budget);
#endif

}  // namespace secroute::kernels
