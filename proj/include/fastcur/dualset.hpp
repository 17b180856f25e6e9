#pragma once

// Deterministic dual-set spectral-Frobenius sparsification.
//
// Given vectors x_1..x_n (columns of X) and a decomposition of the identity
// v_1..v_n (columns of V, sum v_i v_i^T = I_k), picks weights s >= 0 with at most
// r nonzeros such that
//
//   lambda_k(sum s_i v_i v_i^T) >= (1 - sqrt(k/r))^2   and
//   tr(sum s_i x_i x_i^T)       <= ||X||_F^2.
//
// The method runs r barrier steps. Step tau keeps the lower barrier
// L_tau = tau - sqrt(r k) below the spectrum of A_tau = sum s_i v_i v_i^T and
// adds weight t to the first index j whose feasible interval
//
//   ||x_j||^2 / delta_U  <=  1/t  <=  v_j^T M^-2 v_j / (phi(L+1) - phi(L)) - v_j^T M^-1 v_j,
//
// with M = A_tau - (L_tau + 1) I and delta_U = ||X||_F^2 / (1 - sqrt(k/r)), is
// nonempty. 1/t is the midpoint of that interval. Powers of M come from one
// eigendecomposition of A_tau per step.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "fastcur/matrix.hpp"

namespace fastcur {

struct DualSetInput {
  const Matrix& X;  // l x n
  const Matrix& V;  // k x n, V V^T = I_k
  Index r;          // k < r < n
};

struct WeightVector {
  Vector s;

  Index nonzeros() const;
  std::vector<Index> support() const;  // ascending indices with s_i != 0
};

struct DualSetStep {
  Index tau;
  Index j;
  double t;
  double lambda_min;  // smallest eigenvalue of A_tau before the update
};

struct DualSetOptions {
  // Relative slack on the sandwich inequality.
  double slack = 1e-9;
  // Max-abs tolerance on V V^T = I_k.
  double identity_tol = 1e-8;
  // One JSON object per line: {"tau":..,"j":..,"t":..,"lambda_min":..}
  std::ostream* trace = nullptr;
  // Optional in-memory copy of the trace.
  std::vector<DualSetStep>* steps = nullptr;
};

// phi(L, A) = sum_i 1 / (lambda_i - L). Throws SingularShift if some lambda_i <= L.
double potential_phi(double lower, std::span<const double> eigenvalues);

WeightVector dual_set_sparsify(const DualSetInput& input, const DualSetOptions& options = {});

// Same algorithm when only ||x_i||^2 is at hand; X enters nowhere else.
WeightVector dual_set_sparsify(const Vector& x_squared_norms, const Matrix& V, Index r,
                               const DualSetOptions& options = {});

}  // namespace fastcur
