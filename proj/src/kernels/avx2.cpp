#include "prat/kernels.hpp"

#include "prat/arith.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define PRAT_HAVE_AVX2_BUILD 1
#define PRAT_TARGET_AVX2 __attribute__((target("avx2")))
#else
#define PRAT_HAVE_AVX2_BUILD 0
#define PRAT_TARGET_AVX2
#endif

#include <cstring>

namespace prat::kernels::avx2 {

#if PRAT_HAVE_AVX2_BUILD

namespace {

PRAT_TARGET_AVX2 inline __m128i load4_i8(const std::int8_t* p) {
  std::int32_t word;
  std::memcpy(&word, p, sizeof(word));
  return _mm_cvtsi32_si128(word);
}

PRAT_TARGET_AVX2 std::int64_t weighted_sum_impl(const std::int8_t* chi, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i step = _mm256_set1_epi64x(4);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i c = _mm256_cvtepi8_epi64(load4_i8(chi + i));
    // both factors fit in the low signed 32 bits of each lane
    acc = _mm256_add_epi64(acc, _mm256_mul_epi32(c, idx));
    idx = _mm256_add_epi64(idx, step);
  }
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::int64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) sum += chi[i] * static_cast<std::int64_t>(i);
  return sum;
}

PRAT_TARGET_AVX2 double dot_impl(const std::int8_t* chi, const double* values, std::size_t n) {
  // Four independent Kahan lanes.
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c = _mm256_cvtepi32_pd(_mm_cvtepi8_epi32(load4_i8(chi + i)));
    const __m256d term = _mm256_mul_pd(c, _mm256_loadu_pd(values + i));
    const __m256d y = _mm256_sub_pd(term, comp);
    const __m256d t = _mm256_add_pd(sum, y);
    comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
  }
  alignas(32) double s[4], c[4];
  _mm256_store_pd(s, sum);
  _mm256_store_pd(c, comp);
  KahanSum total;
  for (int k = 0; k < 4; ++k) {
    total.add(s[k]);
    total.add(-static_cast<long double>(c[k]));
  }
  for (; i < n; ++i)
    if (chi[i] != 0) total.add(chi[i] * static_cast<long double>(values[i]));
  return static_cast<double>(total.value());
}

}  // namespace

std::int64_t chi_weighted_sum(std::span<const std::int8_t> chi) {
  return weighted_sum_impl(chi.data(), chi.size());
}

double chi_dot(std::span<const std::int8_t> chi, std::span<const double> values) {
  return dot_impl(chi.data(), values.data(), chi.size());
}

#else

std::int64_t chi_weighted_sum(std::span<const std::int8_t> chi) { return scalar::chi_weighted_sum(chi); }

double chi_dot(std::span<const std::int8_t> chi, std::span<const double> values) {
  return scalar::chi_dot(chi, values);
}

#endif

}  // namespace prat::kernels::avx2

namespace prat::kernels {

bool avx2_available() noexcept {
#if PRAT_HAVE_AVX2_BUILD
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace prat::kernels
