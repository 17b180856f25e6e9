#include "fastcur/rng.hpp"

#include <cmath>
#include <numbers>

namespace fastcur {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngState::RngState(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

double RngState::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngState::gaussian() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

RngState RngState::split(std::uint64_t stream) const {
  return RngState(mix64(seed_ ^ mix64(stream + 0x632be59bd9b4e019ULL)));
}

Matrix gaussian_matrix(Index rows, Index cols, RngState& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.gaussian();
  return g;
}

}  // namespace fastcur
