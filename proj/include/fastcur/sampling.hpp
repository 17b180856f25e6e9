#pragma once

// Probability distributions over row/column indices and i.i.d. samplers.

#include <cstdint>
#include <vector>

#include "fastcur/matrix.hpp"
#include "fastcur/rng.hpp"

namespace fastcur {

enum class Axis { Rows, Columns };

class Distribution {
 public:
  // Normalizes nonnegative finite weights with a positive sum.
  static Distribution from_weights(const Vector& weights);

  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

struct IndexSample {
  std::vector<Index> indices;
};

Distribution norm_squared_distribution(const Matrix& a, Axis axis);

// Norm-squared distribution of the residual A - S S^+ A (columns, S plays C1)
// or A - A S^+ S (rows, S plays R1). Throws ZeroResidual when the residual's
// Frobenius norm is below 1e-12 ||A||_F.
Distribution residual_distribution(const Matrix& a, const Matrix& s, Axis axis,
                                   const ToleranceConfig& tol = {});

// ||q^(i)||^2 / cols(Q). Throws NotOrthonormal unless Q^T Q = I to 1e-8.
Distribution leverage_distribution(const Matrix& q);

// i.i.d. with replacement: one uniform per draw, inverted through the
// index-ascending cumulative sum.
IndexSample sample_iid(const Distribution& dist, std::size_t count, RngState& rng);

struct AdaptiveSample {
  Matrix picked;  // sampled columns (m x c2) or rows (r2 x n) of A, unscaled
  std::vector<Index> indices;
};

AdaptiveSample adaptive_sample_columns(const Matrix& a, const Matrix& c1, Index c2, RngState& rng,
                                       const ToleranceConfig& tol = {});

// Defined as the column sampler on (A^T, R1^T), so both consume rng identically.
AdaptiveSample adaptive_sample_rows(const Matrix& a, const Matrix& r1, Index r2, RngState& rng,
                                    const ToleranceConfig& tol = {});

}  // namespace fastcur
