#pragma once

// Data-parallel reductions used by the norm computations and the dual-set
// feasibility scan. Every backend reduces in the same canonical order: four
// interleaved partial sums over blocks of four, combined as (s0 + s1) + (s2 + s3),
// then the tail added sequentially. Products and sums are never fused, so all
// backends are bitwise identical to the scalar reference.

#include <cstddef>
#include <span>
#include <string_view>

namespace fastcur::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b) noexcept;

// Backends compiled into this binary and usable on this CPU.
bool backend_available(Backend b) noexcept;

// Best available backend, detected once. FASTCUR_SIMD=scalar forces the reference.
Backend active_backend() noexcept;

// Overrides dispatch for the calling process; throws if b is unavailable.
void set_backend(Backend b);

double sum_squares(std::span<const double> x) noexcept;
double dot(std::span<const double> x, std::span<const double> y) noexcept;

// out1 = sum w1[i] x[i]^2 and out2 = sum w2[i] x[i]^2 in one pass.
void weighted_sum_squares2(std::span<const double> x, std::span<const double> w1,
                           std::span<const double> w2, double& out1, double& out2) noexcept;

namespace detail {

struct KernelTable {
  double (*sum_squares)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*weighted_sum_squares2)(const double*, const double*, const double*, std::size_t,
                                double*, double*);
};

const KernelTable& scalar_table() noexcept;
#if defined(FASTCUR_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(FASTCUR_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

}  // namespace detail

// Direct access to one backend, for equivalence tests.
double sum_squares(Backend b, std::span<const double> x);
double dot(Backend b, std::span<const double> x, std::span<const double> y);
void weighted_sum_squares2(Backend b, std::span<const double> x, std::span<const double> w1,
                           std::span<const double> w2, double& out1, double& out2);

}  // namespace fastcur::simd
