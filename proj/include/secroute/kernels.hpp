#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

// Inner loops of the budget-indexed dynamic programs. Every kernel has a
// scalar reference version; vector versions must produce bit-identical
// output and are selected at runtime.
namespace secroute::kernels {

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();
inline constexpr std::int32_t kNoHops = std::numeric_limits<std::int32_t>::max() / 2;
inline constexpr std::int32_t kNoParent = std::numeric_limits<std::int32_t>::max();

// Relaxes dst[i] against candidate (src[i] + c1, src_hops[i] + 1, edge) for
// every i. A candidate wins when it is lexicographically smaller in
// (cost, hops, edge). Unreached sources never win. All spans share one length.
using RelaxFn = void (*)(std::span<double> dst_cost, std::span<std::int32_t> dst_hops,
                         std::span<std::int32_t> dst_parent, std::span<const double> src_cost,
                         std::span<const std::int32_t> src_hops, double c1, std::int32_t edge);

struct BudgetMin {
  bool found = false;
  std::size_t index = 0;  // offset into the scanned span
  double value = 0.0;     // cost[index] + (q * (first_budget + index))^2
  std::int32_t hops = 0;
};

// Lexicographic minimum over i of (cost[i] + (q * (first_budget + i))^2, hops[i], i),
// skipping unreached entries.
using BudgetMinFn = BudgetMin (*)(std::span<const double> cost, std::span<const std::int32_t> hops, double q,
                                  std::size_t first_budget);

struct KernelTable {
  std::string_view name;
  RelaxFn relax;
  BudgetMinFn budget_min;
};

const KernelTable& scalar_table();

// nullptr when the vector variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_table();

// The table used by the library: AVX2 when available, unless the environment
// variable SECROUTE_KERNELS=scalar forces the reference kernels.
const KernelTable& active();

// Overrides the runtime choice; passing nullptr restores automatic selection.
void force(const KernelTable* table);

}  // namespace secroute::kernels
