#include "fastcur/randsketch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fastcur {
namespace {

Matrix orthonormalize_columns(const Matrix& y) {
  Eigen::HouseholderQR<Matrix> qr(y);
  return qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
}

}  // namespace

Index sketch_width(Index k, double eps0, Index m, Index n) {
  const auto extra = static_cast<Index>(std::ceil(static_cast<double>(k) / eps0));
  return std::min(k + extra, std::min(m, n));
}

ApproxSvd randomized_svd(const Matrix& a, Index k, double eps0, RngState& rng,
                         const SketchOptions& options) {
  if (k < 1 || k >= std::min(a.rows(), a.cols())) {
    throw Error(ErrorKind::InvalidRank,
                "sketch rank k=" + std::to_string(k) + " must satisfy 1 <= k < min(m, n)");
  }
  if (!(eps0 > 0.0 && eps0 <= 1.0)) {
    throw Error(ErrorKind::InvalidEpsilon, "eps0 must lie in (0, 1]");
  }
  require_finite(a, "randomized_svd input");

  const Index width = sketch_width(k, eps0, a.rows(), a.cols());
  const Matrix omega = gaussian_matrix(a.cols(), width, rng);
  Matrix q = orthonormalize_columns(a * omega);
  for (int it = 0; it < options.power_iterations; ++it) {
    const Matrix w = orthonormalize_columns(a.transpose() * q);
    q = orthonormalize_columns(a * w);
  }

  const Matrix projected = q.transpose() * a;  // width x n
  diagnostics::record_svd(projected.rows(), projected.cols());
  Eigen::BDCSVD<Matrix> svd(projected, Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "SVD of projected sketch did not converge");
  }
  ApproxSvd out;
  out.k = k;
  out.Z = svd.matrixV().leftCols(k);
  out.B = a * out.Z;
  return out;
}

ApproxFactors factor(const ApproxSvd& sketch) {
  diagnostics::record_svd(sketch.B.rows(), sketch.B.cols());
  Eigen::JacobiSVD<Matrix> svd(sketch.B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "SVD of sketch factor did not converge");
  }
  return {svd.matrixU(), svd.singularValues(), sketch.Z * svd.matrixV()};
}

}  // namespace fastcur
