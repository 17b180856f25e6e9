#include <immintrin.h>

#include "fastcur/simd/kernels.hpp"

namespace fastcur::simd::detail {
namespace {

// Lane l of the accumulator carries partial sum s_l of the scalar reference.
inline double hsum_canonical(__m256d acc) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double sum_squares_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double total = hsum_canonical(acc);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  double total = hsum_canonical(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

void weighted_sum_squares2_avx2(const double* x, const double* w1, const double* w2,
                                std::size_t n, double* out1, double* out2) {
  __m256d a = _mm256_setzero_pd();
  __m256d b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d sq = _mm256_mul_pd(v, v);
    a = _mm256_add_pd(a, _mm256_mul_pd(_mm256_loadu_pd(w1 + i), sq));
    b = _mm256_add_pd(b, _mm256_mul_pd(_mm256_loadu_pd(w2 + i), sq));
  }
  double ta = hsum_canonical(a);
  double tb = hsum_canonical(b);
  for (; i < n; ++i) {
    const double sq = x[i] * x[i];
    ta += w1[i] * sq;
    tb += w2[i] * sq;
  }
  *out1 = ta;
  *out2 = tb;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static constexpr KernelTable table{&sum_squares_avx2, &dot_avx2, &weighted_sum_squares2_avx2};
  return table;
}

}  // namespace fastcur::simd::detail
