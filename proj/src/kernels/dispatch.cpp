#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace secroute::kernels {

namespace {

std::atomic<const KernelTable*> forced{nullptr};

const KernelTable& automatic() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("SECROUTE_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_table();
    if (const KernelTable* t = avx2_table()) return t;
    return &scalar_table();
  }();
  return *chosen;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(SECROUTE_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelTable table{"avx2", &relax_avx2, &budget_min_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  if (const KernelTable* t = forced.load(std::memory_order_acquire)) return *t;
  return automatic();
}

void force(const KernelTable* table) { forced.store(table, std::memory_order_release); }

}  // namespace secroute::kernels
