#include "fastcur/dualset.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "fastcur/simd/kernels.hpp"

namespace fastcur {

Index WeightVector::nonzeros() const { return (s.array() != 0.0).count(); }

std::vector<Index> WeightVector::support() const {
  std::vector<Index> out;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) != 0.0) out.push_back(i);
  return out;
}

double potential_phi(double lower, std::span<const double> eigenvalues) {
  double phi = 0.0;
  for (const double lambda : eigenvalues) {
    const double gap = lambda - lower;
    if (!(gap > 0.0)) {
      throw Error(ErrorKind::SingularShift, "barrier at or above an eigenvalue");
    }
    phi += 1.0 / gap;
  }
  return phi;
}

namespace {

void validate_identity(const Matrix& v, double tol) {
  const Matrix gram = v * v.transpose();
  const double dev = (gram - Matrix::Identity(v.rows(), v.rows())).cwiseAbs().maxCoeff();
  if (!(dev <= tol)) {
    throw Error(ErrorKind::InvalidArgument,
                "V is not a decomposition of the identity (max deviation " + std::to_string(dev) + ")");
  }
}

void emit(std::ostream& os, const DualSetStep& step) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "{\"tau\":%lld,\"j\":%lld,\"t\":%.16e,\"lambda_min\":%.16e}\n",
                static_cast<long long>(step.tau), static_cast<long long>(step.j), step.t,
                step.lambda_min);
  os << buf;
}

constexpr Index kScanBlock = 64;

}  // namespace

WeightVector dual_set_sparsify(const Vector& x_sq, const Matrix& V, Index r,
                               const DualSetOptions& options) {
  const Index k = V.rows();
  const Index n = V.cols();
  if (x_sq.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "X and V must hold the same number of vectors");
  }
  if (!(k < r && r < n) || k < 1) {
    throw Error(ErrorKind::InvalidRank, "need 1 <= k < r < n, got k=" + std::to_string(k) +
                                            " r=" + std::to_string(r) + " n=" + std::to_string(n));
  }
  require_finite(V, "V");
  if (!x_sq.allFinite()) throw Error(ErrorKind::NonFinite, "X has NaN or Inf entries");
  validate_identity(V, options.identity_tol);

  const double kd = static_cast<double>(k);
  const double rd = static_cast<double>(r);
  const double shrink = 1.0 - std::sqrt(kd / rd);
  const double delta_u = x_sq.sum() / shrink;

  Vector s = Vector::Zero(n);
  Matrix acc = Matrix::Zero(k, k);  // A_tau
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  Vector d1(k), d2(k);
  Matrix proj;

  for (Index tau = 0; tau < r; ++tau) {
    const double lower = static_cast<double>(tau) - std::sqrt(rd * kd);
    eig.compute(acc);
    if (eig.info() != Eigen::Success) {
      throw Error(ErrorKind::ConvergenceFailure, "eigendecomposition of A_tau failed");
    }
    const Vector& lambda = eig.eigenvalues();
    const std::span<const double> lam{lambda.data(), static_cast<std::size_t>(k)};
    const double gap = potential_phi(lower + 1.0, lam) - potential_phi(lower, lam);
    for (Index i = 0; i < k; ++i) {
      d1(i) = 1.0 / (lambda(i) - (lower + 1.0));
      d2(i) = d1(i) * d1(i);
    }
    const Matrix& w = eig.eigenvectors();

    Index chosen = -1;
    double inv_t = 0.0;
    for (Index start = 0; start < n && chosen < 0; start += kScanBlock) {
      const Index len = std::min(kScanBlock, n - start);
      proj.noalias() = w.transpose() * V.middleCols(start, len);
      for (Index c = 0; c < len; ++c) {
        const Index j = start + c;
        double q1 = 0.0, q2 = 0.0;  // v^T M^-1 v and v^T M^-2 v
        simd::weighted_sum_squares2({proj.col(c).data(), static_cast<std::size_t>(k)},
                                    {d1.data(), static_cast<std::size_t>(k)},
                                    {d2.data(), static_cast<std::size_t>(k)}, q1, q2);
        const double hi = q2 / gap - q1;
        const double lo = delta_u > 0.0 ? x_sq(j) / delta_u : 0.0;
        if (hi > 0.0 && lo <= hi * (1.0 + options.slack)) {
          chosen = j;
          inv_t = 0.5 * (lo + hi);
          break;
        }
      }
    }
    if (chosen < 0) {
      throw Error(ErrorKind::NoFeasibleIndex, "no index admits a feasible weight at step " +
                                                  std::to_string(tau));
    }

    const double t = 1.0 / inv_t;
    const DualSetStep step{tau, chosen, t, lambda(0)};
    if (options.trace != nullptr) emit(*options.trace, step);
    if (options.steps != nullptr) options.steps->push_back(step);

    s(chosen) += t;
    acc.noalias() += t * V.col(chosen) * V.col(chosen).transpose();
  }

  return {s * (shrink / rd)};
}

WeightVector dual_set_sparsify(const DualSetInput& input, const DualSetOptions& options) {
  if (input.X.cols() != input.V.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "X and V must hold the same number of vectors");
  }
  require_finite(input.X, "X");
  return dual_set_sparsify(column_squared_norms(input.X), input.V, input.r, options);
}

}  // namespace fastcur
