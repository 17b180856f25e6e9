#include <arm_neon.h>

#include "fastcur/simd/kernels.hpp"

// Two float64x2 registers emulate the four canonical partial sums:
// lo holds (s0, s1), hi holds (s2, s3).

namespace fastcur::simd::detail {
namespace {

inline double hsum_canonical(float64x2_t lo, float64x2_t hi) {
  return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
         (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
}

double sum_squares_neon(const double* x, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t a = vld1q_f64(x + i);
    const float64x2_t b = vld1q_f64(x + i + 2);
    lo = vaddq_f64(lo, vmulq_f64(a, a));
    hi = vaddq_f64(hi, vmulq_f64(b, b));
  }
  double total = hsum_canonical(lo, hi);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double total = hsum_canonical(lo, hi);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

void weighted_sum_squares2_neon(const double* x, const double* w1, const double* w2,
                                std::size_t n, double* out1, double* out2) {
  float64x2_t alo = vdupq_n_f64(0.0), ahi = vdupq_n_f64(0.0);
  float64x2_t blo = vdupq_n_f64(0.0), bhi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t vlo = vld1q_f64(x + i);
    const float64x2_t vhi = vld1q_f64(x + i + 2);
    const float64x2_t sqlo = vmulq_f64(vlo, vlo);
    const float64x2_t sqhi = vmulq_f64(vhi, vhi);
    alo = vaddq_f64(alo, vmulq_f64(vld1q_f64(w1 + i), sqlo));
    ahi = vaddq_f64(ahi, vmulq_f64(vld1q_f64(w1 + i + 2), sqhi));
    blo = vaddq_f64(blo, vmulq_f64(vld1q_f64(w2 + i), sqlo));
    bhi = vaddq_f64(bhi, vmulq_f64(vld1q_f64(w2 + i + 2), sqhi));
  }
  double ta = hsum_canonical(alo, ahi);
  double tb = hsum_canonical(blo, bhi);
  for (; i < n; ++i) {
    const double sq = x[i] * x[i];
    ta += w1[i] * sq;
    tb += w2[i] * sq;
  }
  *out1 = ta;
  *out2 = tb;
}

}  // namespace

const KernelTable& neon_table() noexcept {
  static constexpr KernelTable table{&sum_squares_neon, &dot_neon, &weighted_sum_squares2_neon};
  return table;
}

}  // namespace fastcur::simd::detail
