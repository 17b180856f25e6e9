#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "fastcur/matrix.hpp"

namespace fastcur {

// splitmix64 finalizer; the mixing function behind every derived seed.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Explicit, splittable random stream. The raw bits come from std::mt19937_64,
// whose output sequence is fixed by the C++ standard; uniforms and Gaussians
// are derived here rather than through <random> distributions, whose
// algorithms are implementation-defined.
class RngState {
 public:
  explicit RngState(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // 53 random mantissa bits: uniform on [0, 1).
  double uniform01();

  // Standard normal via Box-Muller on (1 - uniform01(), uniform01()); both
  // outputs of a pair are used, cosine branch first.
  double gaussian();

  // Independent child stream keyed by (this seed, stream). Does not advance this
  // stream, so the same stream id always yields the same child.
  RngState split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// rows x cols matrix of standard normals, filled column by column.
Matrix gaussian_matrix(Index rows, Index cols, RngState& rng);

}  // namespace fastcur
