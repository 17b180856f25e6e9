#pragma once

#include <cmath>
#include <random>

#include "fastcur/matrix.hpp"
#include "fastcur/rng.hpp"

namespace fastcur::testing {

// Uniform [-1, 1) entries from a std::mt19937_64 independent of the library RNG.
inline Matrix uniform_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      m(i, j) = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
  return m;
}

inline Matrix orthonormal_columns(Index rows, Index cols, std::uint64_t seed) {
  Eigen::HouseholderQR<Matrix> qr(uniform_matrix(rows, cols, seed));
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

// U diag(sigma) V^T with random orthonormal U, V.
inline Matrix with_spectrum(Index rows, Index cols, const Vector& sigma, std::uint64_t seed) {
  const Index r = sigma.size();
  return orthonormal_columns(rows, r, seed) * sigma.asDiagonal() *
         orthonormal_columns(cols, r, seed + 7777).transpose();
}

inline Matrix low_rank(Index rows, Index cols, Index rank, std::uint64_t seed) {
  return uniform_matrix(rows, rank, seed) * uniform_matrix(rank, cols, seed + 1);
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Elementwise Frobenius norm, independent of the SIMD kernels.
inline double naive_frobenius(const Matrix& m) {
  long double s = 0.0L;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) s += static_cast<long double>(m(i, j)) * m(i, j);
  return static_cast<double>(std::sqrt(s));
}

// ||A - A_k||_F^2 from Eigen's JacobiSVD, an SVD path the library does not use.
inline double jacobi_tail_sq(const Matrix& a, Index k) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector s = svd.singularValues();
  double t = 0.0;
  for (Index i = k; i < s.size(); ++i) t += s(i) * s(i);
  return t;
}

}  // namespace fastcur::testing
