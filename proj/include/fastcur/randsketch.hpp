#pragma once

// Randomized truncated SVD via Gaussian random projection: A = B Z^T + E with
// B = A Z, Z^T Z = I_k and E Z = 0.

#include "fastcur/matrix.hpp"
#include "fastcur/rng.hpp"

namespace fastcur {

struct ApproxSvd {
  Matrix B;  // m x k, equals A * Z
  Matrix Z;  // n x k, orthonormal columns
  Index k = 0;

  // E = A - B Z^T, materialized on demand.
  Matrix residual(const Matrix& a) const { return a - B * Z.transpose(); }
};

struct SketchOptions {
  // Extra A A^T passes before the range is frozen; 0 reproduces the plain sketch.
  int power_iterations = 0;
};

// Test-matrix width: k + ceil(k / eps0), clipped to min(m, n).
Index sketch_width(Index k, double eps0, Index m, Index n);

// Draws an n x l Gaussian test matrix from rng, orthonormalizes Y = A * Omega,
// and takes Z as the top-k right singular vectors of Q^T A.
// Requires 1 <= k < min(m, n) and 0 < eps0 <= 1.
ApproxSvd randomized_svd(const Matrix& a, Index k, double eps0, RngState& rng,
                         const SketchOptions& options = {});

// Rank-k factors U~ S~ V~^T of B Z^T: U~ (m x k) orthonormal, V~ = Z W.
struct ApproxFactors {
  Matrix U;
  Vector sigma;
  Matrix V;
};

ApproxFactors factor(const ApproxSvd& sketch);

}  // namespace fastcur
