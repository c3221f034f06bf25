#include <immintrin.h>

#include "kernels_impl.hpp"

namespace secroute::kernels {

void relax_avx2(std::span<double> dst_cost, std::span<std::int32_t> dst_hops,
                std::span<std::int32_t> dst_parent, std::span<const double> src_cost,
                std::span<const std::int32_t> src_hops, double c1, std::int32_t edge) {
  const std::size_t n = dst_cost.size();
  double* dst = dst_cost.data();
  std::int32_t* dh_ptr = dst_hops.data();
  std::int32_t* dp_ptr = dst_parent.data();
  const double* src = src_cost.data();
  const std::int32_t* sh_ptr = src_hops.data();

  const __m256d vc1 = _mm256_set1_pd(c1);
  const __m256d vinf = _mm256_set1_pd(kUnreached);
  const __m128i one = _mm_set1_epi32(1);
  const __m128i vedge = _mm_set1_epi32(edge);
  // Collects the low dword of each 64-bit mask lane into the low 128 bits.
  const __m256i low_dwords = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(src + i);
    const __m256d valid = _mm256_cmp_pd(s, vinf, _CMP_LT_OQ);
    if (_mm256_movemask_pd(valid) == 0) continue;

    const __m256d t = _mm256_add_pd(s, vc1);
    const __m256d d = _mm256_loadu_pd(dst + i);
    const __m128i h = _mm_add_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(sh_ptr + i)), one);
    const __m128i dh = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dh_ptr + i));
    const __m128i dp = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dp_ptr + i));

    const __m256d lt = _mm256_cmp_pd(t, d, _CMP_LT_OQ);
    const __m256d eq = _mm256_cmp_pd(t, d, _CMP_EQ_OQ);
    const __m128i tie32 = _mm_or_si128(_mm_cmplt_epi32(h, dh),
                                       _mm_and_si128(_mm_cmpeq_epi32(h, dh), _mm_cmplt_epi32(vedge, dp)));
    const __m256d tie = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(tie32));
    const __m256d win = _mm256_and_pd(valid, _mm256_or_pd(lt, _mm256_and_pd(eq, tie)));
    if (_mm256_movemask_pd(win) == 0) continue;

    _mm256_storeu_pd(dst + i, _mm256_blendv_pd(d, t, win));
    const __m128i win32 =
        _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(_mm256_castpd_si256(win), low_dwords));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dh_ptr + i), _mm_blendv_epi8(dh, h, win32));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dp_ptr + i), _mm_blendv_epi8(dp, vedge, win32));
  }
  if (i < n) {
    relax_scalar(dst_cost.subspan(i), dst_hops.subspan(i), dst_parent.subspan(i), src_cost.subspan(i),
                 src_hops.subspan(i), c1, edge);
  }
}

BudgetMin budget_min_avx2(std::span<const double> cost, std::span<const std::int32_t> hops, double q,
                          std::size_t first_budget) {
  const std::size_t n = cost.size();
  const __m256d vinf = _mm256_set1_pd(kUnreached);
  const __m256d vq = _mm256_set1_pd(q);
  const __m256d step_b = _mm256_set1_pd(4.0);
  const __m256i step_i = _mm256_set1_epi64x(4);
  const double b0 = static_cast<double>(first_budget);
  __m256d b = _mm256_setr_pd(b0, b0 + 1.0, b0 + 2.0, b0 + 3.0);
  __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);

  __m256d best_v = vinf;
  __m256i best_h = _mm256_set1_epi64x(kNoHops);
  __m256i best_i = _mm256_set1_epi64x(-1);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c = _mm256_loadu_pd(cost.data() + i);
    const __m256d valid = _mm256_cmp_pd(c, vinf, _CMP_LT_OQ);
    const __m256d qb = _mm256_mul_pd(vq, b);
    const __m256d v = _mm256_add_pd(c, _mm256_mul_pd(qb, qb));
    const __m256i h = _mm256_cvtepi32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(hops.data() + i)));
    const __m256d lt = _mm256_cmp_pd(v, best_v, _CMP_LT_OQ);
    const __m256d eq = _mm256_cmp_pd(v, best_v, _CMP_EQ_OQ);
    const __m256d hlt = _mm256_castsi256_pd(_mm256_cmpgt_epi64(best_h, h));
    const __m256d win = _mm256_and_pd(valid, _mm256_or_pd(lt, _mm256_and_pd(eq, hlt)));
    best_v = _mm256_blendv_pd(best_v, v, win);
    best_h = _mm256_castpd_si256(
        _mm256_blendv_pd(_mm256_castsi256_pd(best_h), _mm256_castsi256_pd(h), win));
    best_i = _mm256_castpd_si256(
        _mm256_blendv_pd(_mm256_castsi256_pd(best_i), _mm256_castsi256_pd(idx), win));
    b = _mm256_add_pd(b, step_b);
    idx = _mm256_add_epi64(idx, step_i);
  }

  alignas(32) double lane_v[4];
  alignas(32) long long lane_h[4];
  alignas(32) long long lane_i[4];
  _mm256_store_pd(lane_v, best_v);
  _mm256_store_si256(reinterpret_cast<__m256i*>(lane_h), best_h);
  _mm256_store_si256(reinterpret_cast<__m256i*>(lane_i), best_i);

  BudgetMin best;
  auto offer = [&best](double v, std::int32_t h, std::size_t index) {
    const bool wins = !best.found || v < best.value ||
                      (v == best.value && (h < best.hops || (h == best.hops && index < best.index)));
    if (wins) best = BudgetMin{true, index, v, h};
  };
  for (int lane = 0; lane < 4; ++lane) {
    if (lane_i[lane] >= 0) offer(lane_v[lane], static_cast<std::int32_t>(lane_h[lane]), static_cast<std::size_t>(lane_i[lane]));
  }
  if (i < n) {
    const BudgetMin tail = budget_min_scalar(cost.subspan(i), hops.subspan(i), q, first_budget + i);
    if (tail.found) offer(tail.value, tail.hops, tail.index + i);
  }
  return best;
}

}  // namespace secroute::kernels
