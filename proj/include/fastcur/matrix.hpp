#pragma once

// Dense real matrices and the deterministic operators everything else is
// built from: norms, exact SVD, truncation, pseudoinverse and projections.

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "fastcur/error.hpp"

namespace fastcur {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

struct ToleranceConfig {
  // Singular values below rank_cutoff * sigma_max count as zero.
  double rank_cutoff = 1e-12;
  double orthogonality_tol = 1e-10;
  double reconstruction_tol = 1e-8;

  void validate() const;
};

struct SvdFactors {
  Matrix U;      // m x rank, orthonormal columns
  Vector sigma;  // rank entries, non-increasing, all above the cutoff
  Matrix V;      // n x rank, orthonormal columns
  Index rank = 0;
};

// Builds an m x n matrix from row-major values; rejects non-finite entries.
Matrix make_matrix(Index rows, Index cols, std::span<const double> row_major);

// Throws NonFinite naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* what);

double frobenius_norm(const Matrix& a);

Vector column_squared_norms(const Matrix& a);
Vector row_squared_norms(const Matrix& a);

SvdFactors exact_svd(const Matrix& a, const ToleranceConfig& tol = {});

// U_k * Sigma_k * V_k^T. Throws InvalidRank unless 1 <= k <= min(m, n).
Matrix best_rank_k(const Matrix& a, Index k, const ToleranceConfig& tol = {});

// sqrt(sigma_{k+1}^2 + ... ) from a precomputed spectrum.
double tail_norm(const Vector& sigma, Index k);

Matrix pseudoinverse(const Matrix& a, const ToleranceConfig& tol = {});

// Orthonormal basis of range(x): the left singular vectors above the cutoff.
Matrix orthonormal_basis(const Matrix& x, const ToleranceConfig& tol = {});

// X X^+ A, evaluated as Q Q^T A.
Matrix project_column_space(const Matrix& a, const Matrix& x, const ToleranceConfig& tol = {});

// A Y^+ Y, evaluated as A V V^T with V an orthonormal basis of the row space of Y.
Matrix project_row_space(const Matrix& a, const Matrix& y, const ToleranceConfig& tol = {});

// Pi_{X,k}(A) = Q * best_rank_k(Q^T A, k).
Matrix best_rank_k_in_column_space(const Matrix& a, const Matrix& x, Index k,
                                   const ToleranceConfig& tol = {});

Matrix select_columns(const Matrix& a, std::span<const Index> indices);
Matrix select_rows(const Matrix& a, std::span<const Index> indices);

namespace diagnostics {

struct SvdShape {
  Index rows;
  Index cols;
};

void record_svd(Index rows, Index cols);

// Records the shape of every SVD factorization run on the constructing thread
// while alive. Used to check that an algorithm never factors its full input.
class SvdProbe {
 public:
  SvdProbe();
  ~SvdProbe();
  SvdProbe(const SvdProbe&) = delete;
  SvdProbe& operator=(const SvdProbe&) = delete;

  const std::vector<SvdShape>& shapes() const noexcept { return shapes_; }

 private:
  friend void record_svd(Index rows, Index cols);

  std::vector<SvdShape> shapes_;
  SvdProbe* previous_;
};

}  // namespace diagnostics

}  // namespace fastcur
