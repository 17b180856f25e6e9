#include "fastcur/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fastcur/simd/kernels.hpp"

namespace fastcur {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::SingularShift: return "SingularShift";
    case ErrorKind::NoFeasibleIndex: return "NoFeasibleIndex";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::ZeroResidual: return "ZeroResidual";
    case ErrorKind::InsufficientSize: return "InsufficientSize";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace diagnostics {
namespace {
thread_local SvdProbe* active_probe = nullptr;
}

SvdProbe::SvdProbe() : previous_(active_probe) { active_probe = this; }
SvdProbe::~SvdProbe() { active_probe = previous_; }

// Only the innermost probe records.
void record_svd(Index rows, Index cols) {
  if (active_probe != nullptr) active_probe->shapes_.push_back({rows, cols});
}

}  // namespace diagnostics

namespace {

struct ThinSvd {
  Matrix U;
  Vector sigma;
  Matrix V;
};

// All factorizations funnel through here so the probe sees every one.
ThinSvd thin_svd(const Matrix& a) {
  diagnostics::record_svd(a.rows(), a.cols());
  if (a.size() == 0) return {Matrix(a.rows(), 0), Vector(0), Matrix(a.cols(), 0)};
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "SVD of " + std::to_string(a.rows()) + "x" +
                                                   std::to_string(a.cols()) + " did not converge");
  }
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Index numerical_rank(const Vector& sigma, double cutoff) {
  if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
  const double threshold = cutoff * sigma(0);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > threshold) ++rank;
  return rank;
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(rank_cutoff > 0.0 && rank_cutoff < 1.0) || !(orthogonality_tol > 0.0) ||
      !(reconstruction_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive and rank_cutoff < 1");
  }
}

Matrix make_matrix(Index rows, Index cols, std::span<const double> row_major) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorKind::DimensionMismatch, "matrix dimensions must be positive");
  }
  if (static_cast<Index>(row_major.size()) != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(rows * cols) +
                                                  " entries, got " +
                                                  std::to_string(row_major.size()));
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = row_major[static_cast<std::size_t>(i * cols + j)];
  require_finite(m, "matrix");
  return m;
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + " has NaN or Inf entries");
}

double frobenius_norm(const Matrix& a) {
  return std::sqrt(simd::sum_squares({a.data(), static_cast<std::size_t>(a.size())}));
}

Vector column_squared_norms(const Matrix& a) {
  Vector out(a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    out(j) = simd::sum_squares({a.col(j).data(), static_cast<std::size_t>(a.rows())});
  }
  return out;
}

Vector row_squared_norms(const Matrix& a) {
  const Matrix t = a.transpose();
  return column_squared_norms(t);
}

SvdFactors exact_svd(const Matrix& a, const ToleranceConfig& tol) {
  tol.validate();
  require_finite(a, "exact_svd input");
  if (a.rows() < 1 || a.cols() < 1) throw Error(ErrorKind::DimensionMismatch, "empty matrix");
  ThinSvd svd = thin_svd(a);
  const Index rank = numerical_rank(svd.sigma, tol.rank_cutoff);
  return {svd.U.leftCols(rank), svd.sigma.head(rank), svd.V.leftCols(rank), rank};
}

Matrix best_rank_k(const Matrix& a, Index k, const ToleranceConfig& tol) {
  if (k < 1 || k > std::min(a.rows(), a.cols())) {
    throw Error(ErrorKind::InvalidRank, "k=" + std::to_string(k) + " outside [1, " +
                                            std::to_string(std::min(a.rows(), a.cols())) + "]");
  }
  const SvdFactors f = exact_svd(a, tol);
  const Index kk = std::min(k, f.rank);
  return f.U.leftCols(kk) * f.sigma.head(kk).asDiagonal() * f.V.leftCols(kk).transpose();
}

double tail_norm(const Vector& sigma, Index k) {
  if (k >= sigma.size()) return 0.0;
  return sigma.tail(sigma.size() - k).norm();
}

Matrix pseudoinverse(const Matrix& a, const ToleranceConfig& tol) {
  tol.validate();
  require_finite(a, "pseudoinverse input");
  const ThinSvd svd = thin_svd(a);
  const Index rank = numerical_rank(svd.sigma, tol.rank_cutoff);
  if (rank == 0) return Matrix::Zero(a.cols(), a.rows());
  const Vector inv = svd.sigma.head(rank).cwiseInverse();
  return svd.V.leftCols(rank) * inv.asDiagonal() * svd.U.leftCols(rank).transpose();
}

Matrix orthonormal_basis(const Matrix& x, const ToleranceConfig& tol) {
  tol.validate();
  require_finite(x, "basis input");
  const ThinSvd svd = thin_svd(x);
  return svd.U.leftCols(numerical_rank(svd.sigma, tol.rank_cutoff));
}

Matrix project_column_space(const Matrix& a, const Matrix& x, const ToleranceConfig& tol) {
  if (x.rows() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "X must have as many rows as A");
  }
  const Matrix q = orthonormal_basis(x, tol);
  return q * (q.transpose() * a);
}

Matrix project_row_space(const Matrix& a, const Matrix& y, const ToleranceConfig& tol) {
  if (y.cols() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "Y must have as many columns as A");
  }
  const Matrix v = orthonormal_basis(y.transpose(), tol);
  return (a * v) * v.transpose();
}

Matrix best_rank_k_in_column_space(const Matrix& a, const Matrix& x, Index k,
                                   const ToleranceConfig& tol) {
  if (x.rows() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "X must have as many rows as A");
  }
  if (k < 1 || k > x.cols()) {
    throw Error(ErrorKind::InvalidRank, "k must lie in [1, columns of X]");
  }
  const Matrix q = orthonormal_basis(x, tol);
  if (q.cols() == 0) return Matrix::Zero(a.rows(), a.cols());
  const Matrix inner = q.transpose() * a;
  const Index kk = std::min({k, inner.rows(), inner.cols()});
  return q * best_rank_k(inner, kk, tol);
}

Matrix select_columns(const Matrix& a, std::span<const Index> indices) {
  Matrix out(a.rows(), static_cast<Index>(indices.size()));
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] < 0 || indices[t] >= a.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "column index out of range");
    }
    out.col(static_cast<Index>(t)) = a.col(indices[t]);
  }
  return out;
}

Matrix select_rows(const Matrix& a, std::span<const Index> indices) {
  Matrix out(static_cast<Index>(indices.size()), a.cols());
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] < 0 || indices[t] >= a.rows()) {
      throw Error(ErrorKind::DimensionMismatch, "row index out of range");
    }
    out.row(static_cast<Index>(t)) = a.row(indices[t]);
  }
  return out;
}

}  // namespace fastcur
