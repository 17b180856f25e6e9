#include "fastcur/synth.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "fastcur/serialize.hpp"

namespace fastcur {

namespace {

Matrix orthonormal_gaussian(Index rows, Index cols, RngState& rng) {
  const Matrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidSpec, msg); }

}  // namespace

void SyntheticSpec::validate() const {
  if (m < 1 || n < 1) bad("dimensions must be positive");
  if (true_rank < 1 || true_rank > std::min(m, n)) bad("true_rank must lie in [1, min(m, n)]");
  if (!std::isfinite(noise_sigma) || noise_sigma < 0.0) bad("noise_sigma must be >= 0");
  if (!std::isfinite(param)) bad("decay parameter must be finite");
  if (decay == Decay::Power && param < 0.0) bad("power decay exponent must be >= 0");
  if (decay == Decay::Exponential && !(param > 0.0 && param <= 1.0)) {
    bad("exponential decay base must lie in (0, 1]");
  }
}

SyntheticSpec SyntheticSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = text.find(',');
    parts.push_back(text.substr(0, comma));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (parts.size() != 6) bad("expected m,n,rank,decay,param,noise");
  auto integer = [](std::string_view s) {
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) bad("bad integer '" + std::string(s) + "'");
    return static_cast<Index>(v);
  };
  auto real = [](std::string_view s) {
    double v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) bad("bad number '" + std::string(s) + "'");
    return v;
  };
  SyntheticSpec spec;
  spec.m = integer(parts[0]);
  spec.n = integer(parts[1]);
  spec.true_rank = integer(parts[2]);
  if (parts[3] == "power") {
    spec.decay = Decay::Power;
  } else if (parts[3] == "exp" || parts[3] == "exponential") {
    spec.decay = Decay::Exponential;
  } else {
    bad("decay must be power or exp");
  }
  spec.param = real(parts[4]);
  spec.noise_sigma = real(parts[5]);
  spec.validate();
  return spec;
}

std::string SyntheticSpec::to_string() const {
  return std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(true_rank) + "," +
         (decay == Decay::Power ? "power" : "exp") + "," + format_real(param) + "," +
         format_real(noise_sigma);
}

Matrix synthesize_matrix(const SyntheticSpec& spec, RngState& rng) {
  spec.validate();
  Vector sigma(spec.true_rank);
  for (Index i = 0; i < spec.true_rank; ++i) {
    const double idx = static_cast<double>(i + 1);
    sigma(i) = spec.decay == Decay::Power ? std::pow(idx, -spec.param) : std::pow(spec.param, idx);
  }
  const Matrix left = orthonormal_gaussian(spec.m, spec.true_rank, rng) * sigma.asDiagonal();
  const Matrix right = orthonormal_gaussian(spec.n, spec.true_rank, rng);
  Matrix a = left * right.transpose();
  if (spec.noise_sigma > 0.0) {
    const Matrix noise = gaussian_matrix(spec.m, spec.n, rng);
    a += (spec.noise_sigma * frobenius_norm(a) / frobenius_norm(noise)) * noise;
  }
  return a;
}

}  // namespace fastcur
