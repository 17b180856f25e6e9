#include "fastcur/simd/kernels.hpp"

namespace fastcur::simd::detail {
namespace {

double sum_squares_ref(const double* x, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * x[i];
    s1 += x[i + 1] * x[i + 1];
    s2 += x[i + 2] * x[i + 2];
    s3 += x[i + 3] * x[i + 3];
  }
  double total = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double dot_ref(const double* x, const double* y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  double total = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

void weighted_sum_squares2_ref(const double* x, const double* w1, const double* w2,
                               std::size_t n, double* out1, double* out2) {
  double a[4] = {0.0, 0.0, 0.0, 0.0};
  double b[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double sq = x[i + l] * x[i + l];
      a[l] += w1[i + l] * sq;
      b[l] += w2[i + l] * sq;
    }
  }
  double ta = (a[0] + a[1]) + (a[2] + a[3]);
  double tb = (b[0] + b[1]) + (b[2] + b[3]);
  for (; i < n; ++i) {
    const double sq = x[i] * x[i];
    ta += w1[i] * sq;
    tb += w2[i] * sq;
  }
  *out1 = ta;
  *out2 = tb;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static constexpr KernelTable table{&sum_squares_ref, &dot_ref, &weighted_sum_squares2_ref};
  return table;
}

}  // namespace fastcur::simd::detail
