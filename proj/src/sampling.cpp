#include "fastcur/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fastcur {

namespace {
constexpr double kZeroResidualRatio = 1e-12;
constexpr double kOrthonormalTol = 1e-8;
}  // namespace

Distribution Distribution::from_weights(const Vector& weights) {
  if (weights.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty weight vector");
  if (!weights.allFinite() || (weights.array() < 0.0).any()) {
    throw Error(ErrorKind::InvalidArgument, "weights must be finite and nonnegative");
  }
  const double total = weights.sum();
  if (!(total > 0.0)) throw Error(ErrorKind::ZeroMatrix, "weights sum to zero");
  std::vector<double> probs(static_cast<std::size_t>(weights.size()));
  for (Index i = 0; i < weights.size(); ++i) probs[static_cast<std::size_t>(i)] = weights(i) / total;
  return Distribution(std::move(probs));
}

Distribution norm_squared_distribution(const Matrix& a, Axis axis) {
  require_finite(a, "sampling input");
  const Vector w = axis == Axis::Columns ? column_squared_norms(a) : row_squared_norms(a);
  if (!(w.sum() > 0.0)) throw Error(ErrorKind::ZeroMatrix, "matrix has zero Frobenius norm");
  return Distribution::from_weights(w);
}

Distribution residual_distribution(const Matrix& a, const Matrix& s, Axis axis,
                                   const ToleranceConfig& tol) {
  if (axis == Axis::Rows) {
    if (s.cols() != a.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "R1 must have as many columns as A");
    }
    return residual_distribution(a.transpose(), s.transpose(), Axis::Columns, tol);
  }
  if (s.rows() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "C1 must have as many rows as A");
  }
  const Matrix q = orthonormal_basis(s, tol);
  Matrix residual = a;
  residual.noalias() -= q * (q.transpose() * a);
  const Vector w = column_squared_norms(residual);
  const double res_norm = std::sqrt(w.sum());
  if (res_norm < kZeroResidualRatio * frobenius_norm(a)) {
    throw Error(ErrorKind::ZeroResidual, "selected subset already spans the matrix");
  }
  return Distribution::from_weights(w);
}

Distribution leverage_distribution(const Matrix& q) {
  require_finite(q, "basis");
  if (q.cols() < 1) throw Error(ErrorKind::NotOrthonormal, "basis has no columns");
  const Matrix gram = q.transpose() * q;
  const double dev = (gram - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
  if (!(dev <= kOrthonormalTol)) {
    throw Error(ErrorKind::NotOrthonormal, "Q^T Q deviates from I by " + std::to_string(dev));
  }
  return Distribution::from_weights(row_squared_norms(q));
}

IndexSample sample_iid(const Distribution& dist, std::size_t count, RngState& rng) {
  const auto& p = dist.probs();
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  const double total = cdf.back();
  // Only reachable if rounding puts u at the total.
  Index last_positive = static_cast<Index>(p.size()) - 1;
  while (last_positive > 0 && p[static_cast<std::size_t>(last_positive)] == 0.0) --last_positive;
  IndexSample out;
  out.indices.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const double u = rng.uniform01() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    out.indices.push_back(it == cdf.end() ? last_positive : static_cast<Index>(it - cdf.begin()));
  }
  return out;
}

AdaptiveSample adaptive_sample_columns(const Matrix& a, const Matrix& c1, Index c2, RngState& rng,
                                       const ToleranceConfig& tol) {
  if (c2 < 1) throw Error(ErrorKind::InvalidArgument, "c2 must be positive");
  const Distribution dist = residual_distribution(a, c1, Axis::Columns, tol);
  IndexSample drawn = sample_iid(dist, static_cast<std::size_t>(c2), rng);
  return {select_columns(a, drawn.indices), std::move(drawn.indices)};
}

AdaptiveSample adaptive_sample_rows(const Matrix& a, const Matrix& r1, Index r2, RngState& rng,
                                    const ToleranceConfig& tol) {
  if (r1.cols() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "R1 must have as many columns as A");
  }
  AdaptiveSample t = adaptive_sample_columns(a.transpose(), r1.transpose(), r2, rng, tol);
  return {t.picked.transpose(), std::move(t.indices)};
}

}  // namespace fastcur
