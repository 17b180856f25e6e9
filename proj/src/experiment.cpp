#include "fastcur/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <thread>

#include "fastcur/serialize.hpp"

namespace fastcur {

std::string_view to_string(Algorithm a) noexcept {
  return a == Algorithm::FastCur ? "fast_cur" : "subspace_sampling";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "fast_cur" || name == "fast") return Algorithm::FastCur;
  if (name == "subspace_sampling" || name == "subspace") return Algorithm::SubspaceSampling;
  throw Error(ErrorKind::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

Matrix load_source(const MatrixSource& source) {
  if (source.path && source.synthetic) {
    throw Error(ErrorKind::InvalidArgument, "give either an input file or a synthetic spec");
  }
  if (source.path) return load_matrix(*source.path, source.format);
  if (source.synthetic) {
    RngState rng(source.synth_seed);
    return synthesize_matrix(*source.synthetic, rng);
  }
  throw Error(ErrorKind::InvalidArgument, "no matrix source given");
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::InvalidArgument, m); };
  if (trials < 1) fail("trials must be >= 1");
  if (k_values.empty() || alpha_values.empty()) fail("k and alpha lists must be nonempty");
  for (Index k : k_values)
    if (k < 2) fail("every k must be >= 2");
  for (double a : alpha_values)
    if (!(a >= 1.0) || !std::isfinite(a)) fail("every alpha must be >= 1");
  if (algorithms.empty()) fail("at least one algorithm is required");
  if (jobs < 1) fail("jobs must be >= 1");
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    ExperimentConfig c;
    if (j.contains("input")) c.source.path = resolve(j.at("input").get<std::string>());
    if (j.contains("format")) c.source.format = parse_matrix_format(j.at("format").get<std::string>());
    if (j.contains("synth")) c.source.synthetic = SyntheticSpec::parse(j.at("synth").get<std::string>());
    if (j.contains("synth_seed")) c.source.synth_seed = j.at("synth_seed").get<std::uint64_t>();
    if (j.contains("k")) c.k_values = j.at("k").get<std::vector<Index>>();
    if (j.contains("alpha")) c.alpha_values = j.at("alpha").get<std::vector<double>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("algos")) {
      c.algorithms.clear();
      for (const auto& a : j.at("algos")) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    if (j.contains("out")) c.output = resolve(j.at("out").get<std::string>());
    if (j.contains("out_format")) c.output_format = parse_report_format(j.at("out_format").get<std::string>());
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("config: ") + e.what());
  }
}

std::uint64_t derive_seed(std::uint64_t base, Algorithm algorithm, Index k, double alpha,
                          int trial) noexcept {
  std::uint64_t h = mix64(base);
  h = mix64(h ^ (algorithm == Algorithm::FastCur ? 0x1ULL : 0x2ULL));
  h = mix64(h ^ static_cast<std::uint64_t>(k));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(alpha));
  h = mix64(h ^ static_cast<std::uint64_t>(trial));
  return h;
}

CurParams fast_cur_params_for(Index k, Index c, Index r) {
  if (c < k + 2 || r < k + 2) {
    throw Error(ErrorKind::InsufficientSize, "fast_cur needs c, r >= k + 2 (k=" + std::to_string(k) +
                                                 " c=" + std::to_string(c) + " r=" + std::to_string(r) + ")");
  }
  CurParams p;
  p.k = k;
  p.c2 = c / 2;
  p.c1 = c - p.c2;
  if (p.c1 <= k) {
    p.c1 = k + 1;
    p.c2 = c - p.c1;
  }
  p.r2 = r / 2;
  p.r1 = r - p.r2;
  if (p.r1 <= k) {
    p.r1 = k + 1;
    p.r2 = r - p.r1;
  }
  p.eps = std::min(1.0, 2.0 * static_cast<double>(k) / static_cast<double>(p.c2));
  p.eps0 = std::pow(p.eps, 2.0 / 3.0);
  return p;
}

namespace {

struct Cell {
  Algorithm algorithm;
  Index k;
  double alpha;
  Index c;
  Index r;
  CurParams params;  // fast_cur only
};

struct TrialOutcome {
  bool ok = false;
  double ratio = 0.0;
  double seconds = 0.0;
  Index c = 0;
  Index r = 0;
};

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  if (xs.empty()) {
    mean = sd = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) {
    sd = 0.0;
    return;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const Matrix& a) {
  config.validate();
  require_finite(a, "experiment matrix");
  const Index m = a.rows();
  const Index n = a.cols();
  ExperimentResult result;

  std::vector<Cell> cells;
  for (Algorithm alg : config.algorithms)
    for (Index k : config.k_values)
      for (double alpha : config.alpha_values) {
        const auto c = static_cast<Index>(std::llround(alpha * static_cast<double>(k)));
        const auto r = static_cast<Index>(std::llround(alpha * static_cast<double>(c)));
        const std::string label = std::string(to_string(alg)) + " k=" + std::to_string(k) +
                                  " alpha=" + format_real(alpha);
        if (c > n || r > m) {
          result.warnings.push_back("skipped " + label + ": c=" + std::to_string(c) +
                                    " r=" + std::to_string(r) + " exceed " + std::to_string(m) +
                                    "x" + std::to_string(n));
          continue;
        }
        Cell cell{alg, k, alpha, c, r, {}};
        if (alg == Algorithm::FastCur) {
          try {
            cell.params = fast_cur_params_for(k, c, r);
            cell.params.validate(m, n);
          } catch (const Error& e) {
            result.warnings.push_back("skipped " + label + ": " + e.what());
            continue;
          }
        }
        cells.push_back(cell);
      }

  const SvdFactors svd = exact_svd(a);
  const double frob = frobenius_norm(a);

  const int trials = config.trials;
  std::vector<TrialOutcome> outcomes(cells.size() * static_cast<std::size_t>(trials));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < outcomes.size(); task = next++) {
      const Cell& cell = cells[task / static_cast<std::size_t>(trials)];
      const int trial = static_cast<int>(task % static_cast<std::size_t>(trials));
      RngState rng(derive_seed(config.seed, cell.algorithm, cell.k, cell.alpha, trial));
      TrialOutcome& out = outcomes[task];
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const CurDecomposition dec = cell.algorithm == Algorithm::FastCur
                                         ? fast_cur(a, cell.params, rng)
                                         : subspace_sampling_cur(a, cell.k, cell.c, cell.r, rng);
        const auto t1 = std::chrono::steady_clock::now();
        out.seconds = std::chrono::duration<double>(t1 - t0).count();
        out.ratio = relative_error_ratio(a, dec, tail_norm(svd.sigma, cell.k), frob);
        out.c = dec.C.cols();
        out.r = dec.R.rows();
        out.ok = true;
      } catch (const Error&) {
        out.ok = false;
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(outcomes.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    std::vector<double> ratios, times, cs, rs;
    long long errors = 0;
    for (int t = 0; t < trials; ++t) {
      const TrialOutcome& o = outcomes[ci * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)];
      if (!o.ok) {
        ++errors;
        continue;
      }
      ratios.push_back(o.ratio);
      times.push_back(o.seconds);
      cs.push_back(static_cast<double>(o.c));
      rs.push_back(static_cast<double>(o.r));
    }
    ReportRow row;
    row.algorithm = std::string(to_string(cell.algorithm));
    row.k = cell.k;
    row.alpha = cell.alpha;
    double unused = 0.0;
    mean_std(cs, row.realized_c, unused);
    mean_std(rs, row.realized_r, unused);
    mean_std(ratios, row.ratio_mean, row.ratio_std);
    mean_std(times, row.time_mean_seconds, row.time_std_seconds);
    row.trials = trials;
    row.errors = errors;
    result.rows.push_back(std::move(row));
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_experiment(config, load_source(config.source));
}

}  // namespace fastcur
