#pragma once

// CUR decompositions A ~ C U R with C and R holding actual columns and rows of A.
//
// fast_cur runs two selection stages that share one randomized rank-k sketch
// A ~ U~ S~ V~^T with residual E = A - U~ S~ V~^T:
//
//   columns: dual-set sparsification on (columns of E, columns of V~^T) keeps
//            at most c1 columns, then c2 more are drawn i.i.d. from the residual
//            A - C1 C1^+ A;
//   rows:    the same on (rows of E, columns of U~^T) keeps at most r1 rows, then
//            r2 more are drawn from the residual A - A R1^+ R1.
//
// U = C^+ A R^+. The sketch never factors A itself.

#include <string>
#include <vector>

#include "fastcur/matrix.hpp"
#include "fastcur/randsketch.hpp"
#include "fastcur/rng.hpp"

namespace fastcur {

struct CurParams {
  Index k = 0;
  double eps = 1.0;
  Index c1 = 0;  // dual-set column budget
  Index c2 = 0;  // adaptive column draws
  Index r1 = 0;  // dual-set row budget
  Index r2 = 0;  // adaptive row draws
  double eps0 = 1.0;  // sketch accuracy

  // c1 = ceil(4k eps^-2/3), c2 = ceil(2k/eps), r1 = ceil(4k eps^-2/3),
  // r2 = ceil(2(c1+c2)/eps), eps0 = eps^2/3.
  static CurParams defaults(Index k, double eps);

  Index columns() const noexcept { return c1 + c2; }
  Index rows() const noexcept { return r1 + r2; }

  // Throws InvalidRank, InvalidEpsilon or InsufficientSize for an m x n input.
  void validate(Index m, Index n) const;
};

struct ColumnSelection {
  Matrix C;
  std::vector<Index> indices;
  Index dual_set_count = 0;  // leading entries of indices chosen by dual-set sparsification
  bool completed = false;    // residual vanished before adaptive sampling
};

struct RowSelection {
  Matrix R;
  std::vector<Index> indices;
  Index dual_set_count = 0;
  bool completed = false;
};

struct CurDecomposition {
  std::string algorithm;  // "fast_cur" or "subspace_sampling"
  Matrix C;
  Matrix U;
  Matrix R;
  std::vector<Index> col_indices;
  std::vector<Index> row_indices;
  // For subspace_sampling only k, c1 (= c) and r1 (= r) are meaningful.
  CurParams params;
  Index source_rows = 0;
  Index source_cols = 0;

  Matrix reconstruct() const { return C * U * R; }
};

// Each stage checks only its own budgets. rng is split into fixed child streams (1: sketch, 2: column draws, 3: row
// draws) and is not advanced, so identical (A, params, rng) give identical output.
ColumnSelection near_optimal_columns(const Matrix& a, const CurParams& params, RngState& rng);
ColumnSelection near_optimal_columns(const Matrix& a, const CurParams& params,
                                     const ApproxFactors& sketch, RngState& rng);

// Checks rank(C) = rank(C C^+ A) before selecting rows.
RowSelection fast_row_select(const Matrix& a, const Matrix& c, const CurParams& params,
                             RngState& rng);
RowSelection fast_row_select(const Matrix& a, const Matrix& c, const CurParams& params,
                             const ApproxFactors& sketch, RngState& rng);

CurDecomposition fast_cur(const Matrix& a, Index k, double eps, RngState& rng);
CurDecomposition fast_cur(const Matrix& a, const CurParams& params, RngState& rng);

// Leverage-score baseline with exactly c columns and r rows, both drawn i.i.d.
// C and R are unscaled; U = (D W)^+ D with W = A[rows, cols] and
// D = diag(1 / sqrt(r q_j)) for the row probabilities q.
CurDecomposition subspace_sampling_cur(const Matrix& a, Index k, Index c, Index r,
                                       RngState& rng);

// ||A - C U R||_F / ||A - A_k||_F.
double relative_error_ratio(const Matrix& a, const CurDecomposition& dec, Index k);
// Same with ||A - A_k||_F supplied; throws DegenerateDenominator if it is
// below 1e-12 ||A||_F.
double relative_error_ratio(const Matrix& a, const CurDecomposition& dec, double tail,
                            double frobenius_a);

}  // namespace fastcur
