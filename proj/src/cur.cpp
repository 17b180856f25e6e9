#include "fastcur/cur.hpp"

#include <cmath>
#include <string>

#include "fastcur/dualset.hpp"
#include "fastcur/sampling.hpp"

namespace fastcur {

namespace {

constexpr std::uint64_t kSketchStream = 1;
constexpr std::uint64_t kColumnStream = 2;
constexpr std::uint64_t kRowStream = 3;

Index ceil_index(double x) { return static_cast<Index>(std::ceil(x - 1e-12)); }

std::string counts(Index c, Index r) {
  return "c=" + std::to_string(c) + " r=" + std::to_string(r);
}

ApproxFactors sketch_of(const Matrix& a, const CurParams& params, RngState& rng) {
  RngState stream = rng.split(kSketchStream);
  return factor(randomized_svd(a, params.k, params.eps0, stream));
}

Matrix sketch_residual(const Matrix& a, const ApproxFactors& sketch) {
  Matrix e = a;
  e.noalias() -= sketch.U * sketch.sigma.asDiagonal() * sketch.V.transpose();
  return e;
}

void check_sketch(const Matrix& a, const CurParams& params, const ApproxFactors& sketch) {
  if (sketch.U.rows() != a.rows() || sketch.V.rows() != a.cols() ||
      sketch.U.cols() != params.k || sketch.V.cols() != params.k) {
    throw Error(ErrorKind::DimensionMismatch, "sketch does not match A and k");
  }
}

ColumnSelection select_columns_stage(const Matrix& a, const CurParams& params,
                                     const ApproxFactors& sketch, const Matrix& residual,
                                     RngState& rng) {
  const WeightVector w =
      dual_set_sparsify(column_squared_norms(residual), sketch.V.transpose(), params.c1);
  ColumnSelection out;
  out.indices = w.support();
  out.dual_set_count = static_cast<Index>(out.indices.size());
  const Matrix c1 = select_columns(a, out.indices);

  RngState stream = rng.split(kColumnStream);
  try {
    AdaptiveSample extra = adaptive_sample_columns(a, c1, params.c2, stream);
    out.C.resize(a.rows(), c1.cols() + extra.picked.cols());
    out.C << c1, extra.picked;
    out.indices.insert(out.indices.end(), extra.indices.begin(), extra.indices.end());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroResidual) throw;
    out.C = c1;
    out.completed = true;
  }
  return out;
}

RowSelection select_rows_stage(const Matrix& a, const CurParams& params,
                               const ApproxFactors& sketch, const Matrix& residual,
                               RngState& rng) {
  const WeightVector w =
      dual_set_sparsify(row_squared_norms(residual), sketch.U.transpose(), params.r1);
  RowSelection out;
  out.indices = w.support();
  out.dual_set_count = static_cast<Index>(out.indices.size());
  const Matrix r1 = select_rows(a, out.indices);

  RngState stream = rng.split(kRowStream);
  try {
    AdaptiveSample extra = adaptive_sample_rows(a, r1, params.r2, stream);
    out.R.resize(r1.rows() + extra.picked.rows(), a.cols());
    out.R << r1, extra.picked;
    out.indices.insert(out.indices.end(), extra.indices.begin(), extra.indices.end());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroResidual) throw;
    out.R = r1;
    out.completed = true;
  }
  return out;
}

}  // namespace

CurParams CurParams::defaults(Index k, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorKind::InvalidEpsilon, "eps must lie in (0, 1]");
  CurParams p;
  p.k = k;
  p.eps = eps;
  const double kd = static_cast<double>(k);
  const double e23 = std::pow(eps, 2.0 / 3.0);
  p.c1 = ceil_index(4.0 * kd / e23);
  p.c2 = ceil_index(2.0 * kd / eps);
  p.r1 = ceil_index(4.0 * kd / e23);
  p.r2 = ceil_index(2.0 * static_cast<double>(p.c1 + p.c2) / eps);
  p.eps0 = e23;
  return p;
}

namespace {

void validate_common(const CurParams& p) {
  if (p.k < 2) throw Error(ErrorKind::InvalidRank, "target rank k must be at least 2");
  if (!(p.eps > 0.0 && p.eps <= 1.0)) {
    throw Error(ErrorKind::InvalidEpsilon, "eps must lie in (0, 1]");
  }
  if (!(p.eps0 > 0.0 && p.eps0 <= 1.0)) {
    throw Error(ErrorKind::InvalidEpsilon, "eps0 must lie in (0, 1]");
  }
}

void validate_columns(const CurParams& p, Index m, Index n) {
  validate_common(p);
  if (p.c1 <= p.k) {
    throw Error(ErrorKind::InvalidRank, "dual-set column budget c1=" + std::to_string(p.c1) +
                                            " must exceed k=" + std::to_string(p.k));
  }
  if (p.c2 < 1) throw Error(ErrorKind::InvalidArgument, "c2 must be positive");
  if (p.columns() > n) {
    throw Error(ErrorKind::InsufficientSize, "column stage needs c=" +
                                                 std::to_string(p.columns()) + " but A is " +
                                                 std::to_string(m) + "x" + std::to_string(n));
  }
}

void validate_rows(const CurParams& p, Index m, Index n) {
  validate_common(p);
  if (p.r1 <= p.k) {
    throw Error(ErrorKind::InvalidRank, "dual-set row budget r1=" + std::to_string(p.r1) +
                                            " must exceed k=" + std::to_string(p.k));
  }
  if (p.r2 < 1) throw Error(ErrorKind::InvalidArgument, "r2 must be positive");
  if (p.rows() > m) {
    throw Error(ErrorKind::InsufficientSize, "row stage needs r=" + std::to_string(p.rows()) +
                                                 " but A is " + std::to_string(m) + "x" +
                                                 std::to_string(n));
  }
}

}  // namespace

void CurParams::validate(Index m, Index n) const {
  if (columns() > n || rows() > m) {
    validate_common(*this);
    throw Error(ErrorKind::InsufficientSize,
                "decomposition needs " + counts(columns(), rows()) + " but A is " +
                    std::to_string(m) + "x" + std::to_string(n));
  }
  validate_columns(*this, m, n);
  validate_rows(*this, m, n);
}

ColumnSelection near_optimal_columns(const Matrix& a, const CurParams& params, RngState& rng) {
  validate_columns(params, a.rows(), a.cols());
  require_finite(a, "A");
  const ApproxFactors sketch = sketch_of(a, params, rng);
  return select_columns_stage(a, params, sketch, sketch_residual(a, sketch), rng);
}

ColumnSelection near_optimal_columns(const Matrix& a, const CurParams& params,
                                     const ApproxFactors& sketch, RngState& rng) {
  validate_columns(params, a.rows(), a.cols());
  require_finite(a, "A");
  check_sketch(a, params, sketch);
  return select_columns_stage(a, params, sketch, sketch_residual(a, sketch), rng);
}

RowSelection fast_row_select(const Matrix& a, const Matrix& c, const CurParams& params,
                             const ApproxFactors& sketch, RngState& rng) {
  if (c.rows() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "C must have as many rows as A");
  }
  validate_rows(params, a.rows(), a.cols());
  require_finite(a, "A");
  check_sketch(a, params, sketch);
  const Matrix q = orthonormal_basis(c);
  const Index rank_c = q.cols();
  const Index rank_proj = q.cols() == 0 ? 0 : exact_svd(q.transpose() * a).rank;
  if (rank_c != rank_proj) {
    throw Error(ErrorKind::InvalidArgument, "rank(C)=" + std::to_string(rank_c) +
                                                " differs from rank(CC^+A)=" +
                                                std::to_string(rank_proj));
  }
  return select_rows_stage(a, params, sketch, sketch_residual(a, sketch), rng);
}

RowSelection fast_row_select(const Matrix& a, const Matrix& c, const CurParams& params,
                             RngState& rng) {
  validate_rows(params, a.rows(), a.cols());
  require_finite(a, "A");
  const ApproxFactors sketch = sketch_of(a, params, rng);
  return fast_row_select(a, c, params, sketch, rng);
}

CurDecomposition fast_cur(const Matrix& a, const CurParams& params, RngState& rng) {
  params.validate(a.rows(), a.cols());
  require_finite(a, "A");
  const ApproxFactors sketch = sketch_of(a, params, rng);
  const Matrix residual = sketch_residual(a, sketch);

  ColumnSelection cols = select_columns_stage(a, params, sketch, residual, rng);
  RowSelection rows = select_rows_stage(a, params, sketch, residual, rng);

  CurDecomposition dec;
  dec.algorithm = "fast_cur";
  dec.U = pseudoinverse(cols.C) * a * pseudoinverse(rows.R);
  dec.C = std::move(cols.C);
  dec.R = std::move(rows.R);
  dec.col_indices = std::move(cols.indices);
  dec.row_indices = std::move(rows.indices);
  dec.params = params;
  dec.source_rows = a.rows();
  dec.source_cols = a.cols();
  return dec;
}

CurDecomposition fast_cur(const Matrix& a, Index k, double eps, RngState& rng) {
  return fast_cur(a, CurParams::defaults(k, eps), rng);
}

CurDecomposition subspace_sampling_cur(const Matrix& a, Index k, Index c, Index r,
                                       RngState& rng) {
  if (k < 1 || k > std::min(a.rows(), a.cols())) {
    throw Error(ErrorKind::InvalidRank, "k must lie in [1, min(m, n)]");
  }
  if (c < 1 || r < 1 || c > a.cols() || r > a.rows()) {
    throw Error(ErrorKind::InsufficientSize, "baseline needs " + counts(c, r) + " but A is " +
                                                 std::to_string(a.rows()) + "x" +
                                                 std::to_string(a.cols()));
  }
  const SvdFactors svd = exact_svd(a);
  if (svd.rank == 0) throw Error(ErrorKind::ZeroMatrix, "A is zero");
  const Index kk = std::min(k, svd.rank);

  RngState col_stream = rng.split(kColumnStream);
  const Distribution col_dist = leverage_distribution(svd.V.leftCols(kk));
  std::vector<Index> cols = sample_iid(col_dist, static_cast<std::size_t>(c), col_stream).indices;
  Matrix cmat = select_columns(a, cols);

  RngState row_stream = rng.split(kRowStream);
  const Distribution row_dist = leverage_distribution(orthonormal_basis(cmat));
  std::vector<Index> rows = sample_iid(row_dist, static_cast<std::size_t>(r), row_stream).indices;
  Matrix rmat = select_rows(a, rows);

  Vector d(r);
  for (Index t = 0; t < r; ++t) {
    d(t) = 1.0 / std::sqrt(static_cast<double>(r) * row_dist[static_cast<std::size_t>(rows[t])]);
  }
  const Matrix w = select_columns(rmat, cols);
  const Matrix dw = d.asDiagonal() * w;

  CurDecomposition dec;
  dec.algorithm = "subspace_sampling";
  dec.U = pseudoinverse(dw) * d.asDiagonal();
  dec.C = std::move(cmat);
  dec.R = std::move(rmat);
  dec.col_indices = std::move(cols);
  dec.row_indices = std::move(rows);
  dec.params.k = k;
  dec.params.eps = 0.0;
  dec.params.eps0 = 0.0;
  dec.params.c1 = c;
  dec.params.r1 = r;
  dec.source_rows = a.rows();
  dec.source_cols = a.cols();
  return dec;
}

double relative_error_ratio(const Matrix& a, const CurDecomposition& dec, double tail,
                            double frobenius_a) {
  if (!(tail > 1e-12 * frobenius_a)) {
    throw Error(ErrorKind::DegenerateDenominator, "A is numerically of rank <= k");
  }
  if (dec.C.rows() != a.rows() || dec.R.cols() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "decomposition does not match A");
  }
  Matrix diff = a;
  diff.noalias() -= dec.C * (dec.U * dec.R);
  return frobenius_norm(diff) / tail;
}

double relative_error_ratio(const Matrix& a, const CurDecomposition& dec, Index k) {
  const SvdFactors svd = exact_svd(a);
  return relative_error_ratio(a, dec, tail_norm(svd.sigma, k), frobenius_norm(a));
}

}  // namespace fastcur
