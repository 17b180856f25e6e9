// fastcur: command-line front end.
//
//   fastcur decompose (--input PATH --format mm|csv|bin | --synth SPEC) --k N
//                     [--eps X] [--algo fast_cur|subspace_sampling] [--c N --r N]
//                     [--seed N] [--factors] --out PATH
//   fastcur bench     [--config PATH] (--input ... | --synth ...) --k LIST --alpha LIST
//                     --trials N --seed N --algos LIST --out PATH --out-format csv|json --jobs N
//   fastcur synth     --synth m,n,rank,decay,param,noise [--seed N] --out PATH [--format mm|csv|bin]
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "fastcur/cur.hpp"
#include "fastcur/experiment.hpp"
#include "fastcur/io.hpp"
#include "fastcur/serialize.hpp"
#include "fastcur/synth.hpp"

namespace {

using namespace fastcur;

enum ExitCode { kOk = 0, kConfigError = 2, kDataError = 3, kNumericalError = 4 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::DimensionError:
    case ErrorKind::IoError:
    case ErrorKind::NonFinite:
      return kDataError;
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::SingularShift:
    case ErrorKind::NoFeasibleIndex:
    case ErrorKind::NotOrthonormal:
    case ErrorKind::ZeroMatrix:
    case ErrorKind::ZeroResidual:
    case ErrorKind::DegenerateDenominator:
      return kNumericalError;
    default:
      return kConfigError;
  }
}

struct SourceOptions {
  std::string input;
  std::string format = "mm";
  std::string synth;
  std::uint64_t synth_seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--input", input, "Matrix file");
    app->add_option("--format", format, "Input format: mm, csv or bin")
        ->check(CLI::IsMember({"mm", "csv", "bin"}));
    app->add_option("--synth", synth, "Synthetic matrix m,n,rank,decay,param,noise");
    app->add_option("--synth-seed", synth_seed, "Seed for the synthetic matrix");
  }

  MatrixSource to_source() const {
    MatrixSource s;
    if (!input.empty()) {
      s.path = input;
      s.format = parse_matrix_format(format);
    }
    if (!synth.empty()) s.synthetic = SyntheticSpec::parse(synth);
    s.synth_seed = synth_seed;
    return s;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << text;
  if (!out.flush()) throw Error(ErrorKind::IoError, "write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast CUR matrix decomposition and benchmark harness"};
  app.require_subcommand(1);

  // decompose
  auto* decompose = app.add_subcommand("decompose", "Run one CUR decomposition");
  SourceOptions dec_src;
  dec_src.attach(decompose);
  Index dec_k = 0;
  double dec_eps = 1.0;
  std::string dec_algo = "fast_cur";
  Index dec_c = 0, dec_r = 0;
  std::uint64_t dec_seed = 0;
  bool dec_factors = false;
  std::string dec_out;
  decompose->add_option("--k", dec_k, "Target rank")->required();
  decompose->add_option("--eps", dec_eps, "Accuracy parameter in (0, 1] (fast_cur)");
  decompose->add_option("--algo", dec_algo, "fast_cur or subspace_sampling");
  decompose->add_option("--c", dec_c, "Columns (subspace_sampling; fast_cur uses eps defaults)");
  decompose->add_option("--r", dec_r, "Rows (subspace_sampling)");
  decompose->add_option("--seed", dec_seed, "Random seed");
  decompose->add_flag("--factors", dec_factors, "Include C, U and R in the output");
  decompose->add_option("--out", dec_out, "Output JSON path (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Run the repeated-trial experiment grid");
  SourceOptions bench_src;
  bench_src.attach(bench);
  std::string bench_config;
  std::vector<Index> bench_k;
  std::vector<double> bench_alpha;
  int bench_trials = 20;
  std::uint64_t bench_seed = 0;
  std::vector<std::string> bench_algos;
  std::string bench_out;
  std::string bench_out_format;
  int bench_jobs = 0;
  bench->add_option("--config", bench_config, "JSON experiment config; flags override it");
  bench->add_option("--k", bench_k, "Target ranks")->delimiter(',');
  bench->add_option("--alpha", bench_alpha, "Multipliers: c = alpha k, r = alpha c")->delimiter(',');
  auto* trials_opt = bench->add_option("--trials", bench_trials, "Trials per cell");
  auto* seed_opt = bench->add_option("--seed", bench_seed, "Base seed");
  bench->add_option("--algos", bench_algos, "fast_cur, subspace_sampling")->delimiter(',');
  bench->add_option("--out", bench_out, "Report path");
  bench->add_option("--out-format", bench_out_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--jobs", bench_jobs, "Worker threads");

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic matrix");
  std::string synth_spec;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  std::string synth_format = "bin";
  synth->add_option("--synth", synth_spec, "m,n,rank,decay,param,noise")->required();
  synth->add_option("--seed", synth_seed, "Random seed");
  synth->add_option("--out", synth_out, "Output path")->required();
  synth->add_option("--format", synth_format, "mm, csv or bin")->check(CLI::IsMember({"mm", "csv", "bin"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*decompose) {
      const Matrix a = load_source(dec_src.to_source());
      RngState rng(dec_seed);
      CurDecomposition dec;
      const Algorithm algo = parse_algorithm(dec_algo);
      if (algo == Algorithm::FastCur) {
        dec = fast_cur(a, dec_k, dec_eps, rng);
      } else {
        if (dec_c < 1 || dec_r < 1) {
          throw Error(ErrorKind::InvalidArgument, "subspace_sampling needs --c and --r");
        }
        dec = subspace_sampling_cur(a, dec_k, dec_c, dec_r, rng);
      }
      write_text(dec_out, to_json(dec, dec_factors));
      try {
        std::cerr << "relative-error ratio: " << relative_error_ratio(a, dec, dec_k) << "\n";
      } catch (const Error& e) {
        std::cerr << "relative-error ratio unavailable: " << e.what() << "\n";
      }
      return kOk;
    }

    if (*bench) {
      ExperimentConfig config = bench_config.empty() ? ExperimentConfig{} : ExperimentConfig::load(bench_config);
      if (!bench_src.input.empty() || !bench_src.synth.empty()) config.source = bench_src.to_source();
      if (!bench_k.empty()) config.k_values = bench_k;
      if (!bench_alpha.empty()) config.alpha_values = bench_alpha;
      if (trials_opt->count() > 0) config.trials = bench_trials;
      if (seed_opt->count() > 0) config.seed = bench_seed;
      if (!bench_algos.empty()) {
        config.algorithms.clear();
        for (const auto& name : bench_algos) config.algorithms.push_back(parse_algorithm(name));
      }
      if (!bench_out.empty()) config.output = bench_out;
      if (!bench_out_format.empty()) config.output_format = parse_report_format(bench_out_format);
      if (bench_jobs > 0) config.jobs = bench_jobs;
      if (config.output.empty()) throw Error(ErrorKind::InvalidArgument, "--out is required");

      const ExperimentResult result = run_experiment(config);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
      emit_report(result.rows, config.output_format, config.output);
      std::cerr << "wrote " << result.rows.size() << " rows to " << config.output.string() << "\n";
      return kOk;
    }

    if (*synth) {
      RngState rng(synth_seed);
      const Matrix a = synthesize_matrix(SyntheticSpec::parse(synth_spec), rng);
      save_matrix(synth_out, a, parse_matrix_format(synth_format));
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
