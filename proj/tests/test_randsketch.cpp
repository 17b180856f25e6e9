#include <doctest.h>

#include <cstring>

#include "fastcur/error.hpp"
#include "fastcur/randsketch.hpp"
#include "helpers.hpp"

using namespace fastcur;
using namespace fastcur::testing;

namespace {

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

Vector power_decay(Index n, double p) {
  Vector s(n);
  for (Index i = 0; i < n; ++i) s(i) = std::pow(static_cast<double>(i + 1), -p);
  return s;
}

}  // namespace

TEST_CASE("rng streams") {
  RngState a(17), b(17);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  RngState c(17);
  const RngState child1 = c.split(1);
  (void)c.next_u64();
  RngState child1b = c.split(1), child1c = child1;
  CHECK(child1b.next_u64() == child1c.next_u64());
  RngState child2 = RngState(17).split(2);
  RngState child1d = RngState(17).split(1);
  CHECK(child1d.next_u64() != child2.next_u64());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian moments") {
  RngState rng(3);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    s += g;
    s2 += g * g;
  }
  CHECK(std::abs(s / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("sketch_width") {
  CHECK(sketch_width(5, 0.5, 100, 100) == 15);
  CHECK(sketch_width(5, 1.0, 100, 100) == 10);
  CHECK(sketch_width(5, 0.1, 30, 20) == 20);
}

TEST_CASE("exact-rank input is reproduced") {
  const Matrix a = low_rank(30, 25, 4, 8);
  for (double eps0 : {0.1, 0.5, 1.0}) {
    RngState rng(1);
    const ApproxSvd s = randomized_svd(a, 4, eps0, rng);
    CHECK(naive_frobenius(a - s.B * s.Z.transpose()) <= 1e-8 * naive_frobenius(a));
  }
}

TEST_CASE("factorization invariants") {
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = uniform_matrix(20 + trial, 15, 40 + trial);
    const Index k = 1 + trial % 5;
    RngState rng(trial);
    const ApproxSvd s = randomized_svd(a, k, 0.5, rng);
    REQUIRE(s.Z.cols() == k);
    CHECK(s.k == k);
    CHECK(max_abs(s.Z.transpose() * s.Z - Matrix::Identity(k, k)) < 1e-10);
    CHECK(max_abs(s.residual(a) * s.Z) < 1e-8);
    CHECK(bitwise_equal(s.B, a * s.Z));
  }
}

TEST_CASE("deterministic under a fixed seed") {
  const Matrix a = uniform_matrix(40, 30, 5);
  RngState r1(99), r2(99);
  const ApproxSvd s1 = randomized_svd(a, 6, 0.3, r1);
  const ApproxSvd s2 = randomized_svd(a, 6, 0.3, r2);
  CHECK(bitwise_equal(s1.B, s2.B));
  CHECK(bitwise_equal(s1.Z, s2.Z));
}

TEST_CASE("argument validation") {
  const Matrix a = uniform_matrix(10, 8, 1);
  RngState rng(0);
  CHECK(kind_of([&] { randomized_svd(a, 0, 0.5, rng); }) == ErrorKind::InvalidRank);
  CHECK(kind_of([&] { randomized_svd(a, 8, 0.5, rng); }) == ErrorKind::InvalidRank);
  CHECK(kind_of([&] { randomized_svd(a, 2, 0.0, rng); }) == ErrorKind::InvalidEpsilon);
  CHECK(kind_of([&] { randomized_svd(a, 2, 1.5, rng); }) == ErrorKind::InvalidEpsilon);
}

TEST_CASE("factor yields an SVD of B Z^T") {
  const Matrix a = uniform_matrix(25, 18, 12);
  RngState rng(4);
  const ApproxSvd s = randomized_svd(a, 4, 0.5, rng);
  const ApproxFactors f = factor(s);
  CHECK(max_abs(f.U.transpose() * f.U - Matrix::Identity(4, 4)) < 1e-10);
  CHECK(max_abs(f.V.transpose() * f.V - Matrix::Identity(4, 4)) < 1e-10);
  CHECK(max_abs(f.U * f.sigma.asDiagonal() * f.V.transpose() - s.B * s.Z.transpose()) < 1e-10);
}

TEST_CASE("expected error within (1 + eps0) of the optimum") {
  const Matrix a = uniform_matrix(50, 40, 2024);
  const double tail = jacobi_tail_sq(a, 5);
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RngState rng(seed);
    const ApproxSvd s = randomized_svd(a, 5, 0.5, rng);
    const double e = naive_frobenius(s.residual(a));
    sum += e * e;
  }
  CHECK(sum / 200.0 <= 1.1 * 1.5 * tail);
}

TEST_CASE("wider sketches and power iterations do not hurt on average") {
  const Matrix a = with_spectrum(60, 50, power_decay(50, 0.7), 77);
  auto mean_err = [&](double eps0, int q) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RngState rng(1000 + seed);
      const ApproxSvd s = randomized_svd(a, 4, eps0, rng, SketchOptions{q});
      sum += std::pow(naive_frobenius(s.residual(a)), 2);
    }
    return sum / 100.0;
  };
  const double narrow = mean_err(1.0, 0);
  const double wide = mean_err(0.25, 0);
  const double powered = mean_err(1.0, 2);
  CHECK(wide <= narrow);
  CHECK(powered <= narrow);
  CHECK(jacobi_tail_sq(a, 4) <= powered * (1 + 1e-12));
}
