#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "fastcur/simd/kernels.hpp"

namespace fastcur::simd {
namespace {

Backend detect() noexcept {
  if (const char* env = std::getenv("FASTCUR_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Backend::Scalar;
  }
#if defined(FASTCUR_HAVE_AVX2)
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
#endif
#if defined(FASTCUR_HAVE_NEON)
  return Backend::Neon;
#endif
  return Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

const detail::KernelTable& table_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return detail::scalar_table();
#if defined(FASTCUR_HAVE_AVX2)
    case Backend::Avx2:
      if (backend_available(b)) return detail::avx2_table();
      break;
#endif
#if defined(FASTCUR_HAVE_NEON)
    case Backend::Neon:
      return detail::neon_table();
#endif
    default:
      break;
  }
  throw std::invalid_argument("simd backend not available: " + std::string(to_string(b)));
}

const detail::KernelTable& active() noexcept {
  // table_for cannot throw for a backend that passed detection or set_backend.
  return table_for(current().load(std::memory_order_relaxed));
}

}  // namespace

std::string_view to_string(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool backend_available(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(FASTCUR_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(FASTCUR_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("simd backend not available: " + std::string(to_string(b)));
  }
  current().store(b, std::memory_order_relaxed);
}

double sum_squares(std::span<const double> x) noexcept {
  return active().sum_squares(x.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
  return active().dot(x.data(), y.data(), x.size());
}

void weighted_sum_squares2(std::span<const double> x, std::span<const double> w1,
                           std::span<const double> w2, double& out1, double& out2) noexcept {
  active().weighted_sum_squares2(x.data(), w1.data(), w2.data(), x.size(), &out1, &out2);
}

double sum_squares(Backend b, std::span<const double> x) {
  return table_for(b).sum_squares(x.data(), x.size());
}

double dot(Backend b, std::span<const double> x, std::span<const double> y) {
  return table_for(b).dot(x.data(), y.data(), x.size());
}

void weighted_sum_squares2(Backend b, std::span<const double> x, std::span<const double> w1,
                           std::span<const double> w2, double& out1, double& out2) {
  table_for(b).weighted_sum_squares2(x.data(), w1.data(), w2.data(), x.size(), &out1, &out2);
}

}  // namespace fastcur::simd
