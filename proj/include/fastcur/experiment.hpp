#pragma once

// Repeated-trial benchmark over a (k, alpha) grid with c = alpha k and
// r = alpha c, for the fast CUR algorithm and the subspace-sampling baseline.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fastcur/cur.hpp"
#include "fastcur/io.hpp"
#include "fastcur/report.hpp"
#include "fastcur/synth.hpp"

namespace fastcur {

enum class Algorithm { FastCur, SubspaceSampling };

std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);  // fast_cur | subspace_sampling

struct MatrixSource {
  std::optional<std::filesystem::path> path;
  MatrixFormat format = MatrixFormat::MatrixMarket;
  std::optional<SyntheticSpec> synthetic;
  std::uint64_t synth_seed = 0;
};

Matrix load_source(const MatrixSource& source);

struct ExperimentConfig {
  MatrixSource source;
  std::vector<Index> k_values{10, 20, 50};
  std::vector<double> alpha_values{2, 3, 4, 5, 6, 8, 10};
  int trials = 20;
  std::uint64_t seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::FastCur, Algorithm::SubspaceSampling};
  std::filesystem::path output;
  ReportFormat output_format = ReportFormat::Csv;
  int jobs = 1;

  void validate() const;  // throws InvalidArgument

  // JSON keys: input, format, synth ("m,n,rank,decay,param,noise"), synth_seed,
  // k, alpha, trials, seed, algos, out, out_format, jobs. Relative paths resolve
  // against the config file's directory.
  static ExperimentConfig load(const std::filesystem::path& path);
};

struct ExperimentResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;  // one per skipped cell
};

// Per-trial seed: mix64 folded over (base, algorithm id, k, bits of alpha, trial),
// so a cell's seeds do not depend on grid order or on the other cells.
std::uint64_t derive_seed(std::uint64_t base, Algorithm algorithm, Index k, double alpha,
                          int trial) noexcept;

// Fast-CUR budgets for total counts (c, r): c2 = floor(c/2), c1 = c - c2 and
// likewise for rows, with c1 raised to k + 1 when needed; eps = min(1, 2k/c2),
// eps0 = eps^(2/3). Throws InsufficientSize when c or r is below k + 2.
CurParams fast_cur_params_for(Index k, Index c, Index r);

// Cells with alpha k > n or alpha^2 k > m are skipped with a warning. Wall time
// covers the decomposition call only.
ExperimentResult run_experiment(const ExperimentConfig& config, const Matrix& a);
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace fastcur
