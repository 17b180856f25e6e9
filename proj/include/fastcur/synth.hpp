#pragma once

#include <string>
#include <string_view>

#include "fastcur/matrix.hpp"
#include "fastcur/rng.hpp"

namespace fastcur {

enum class Decay {
  Power,        // sigma_i = i^-param
  Exponential,  // sigma_i = param^i, 0 < param <= 1
};

struct SyntheticSpec {
  Index m = 0;
  Index n = 0;
  Index true_rank = 0;
  Decay decay = Decay::Power;
  double param = 1.0;
  double noise_sigma = 0.0;  // ||noise||_F / ||signal||_F

  void validate() const;  // throws InvalidSpec

  // "m,n,rank,decay,param,noise", decay in {power, exp}.
  static SyntheticSpec parse(std::string_view text);
  std::string to_string() const;
};

// A = L R^T + N. L = Q_m diag(sigma) and R = Q_n with Q_m, Q_n orthonormalized
// Gaussians, so the signal has exactly the declared spectrum; N is Gaussian,
// rescaled so ||N||_F = noise_sigma * ||L R^T||_F. rng feeds Q_m, Q_n, N in order.
Matrix synthesize_matrix(const SyntheticSpec& spec, RngState& rng);

}  // namespace fastcur
