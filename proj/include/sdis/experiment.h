#pragma once

/// Repeated-run experiments: configuration, execution, aggregation and
/// CSV / JSON reporting.
///
/// Config files are INI-style `key = value` lines (`#` or `;` comments):
///
///   name         output file stem                       (default "experiment")
///   model        registry id, e.g. linear_sum:n=100:beta=4   (required)
///   method       mcs | ds | sdis                         (required)
///   repetitions  independent runs R >= 1                 (default 1)
///   seed         base seed; run i uses seed + i          (default 0)
///   samples      N for mcs / ds                          (default 100000)
///   kernel       imh | csmh, required for sdis
///   sigma1, n0, chain_length, delta_target, components, max_levels,
///   max_initial_samples, fit_radii, initial_beta         sdis parameters
///
/// Omitted sdis parameters take the defaults of SdisConfig, and the resolved
/// values are echoed into the JSON summary.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdis/sdis.h"

namespace sdis {

enum class Method { mcs, ds, sdis };

struct ExperimentSpec {
  std::string name = "experiment";
  std::string model;
  Method method = Method::sdis;
  SdisConfig sdis;
  std::size_t samples = 100000;
  int repetitions = 1;
  std::uint64_t base_seed = 0;

  /// Throws ConfigError on syntax errors, unknown keys, bad values or an
  /// unknown model.
  static ExperimentSpec parse(std::istream& in);
  static ExperimentSpec load(const std::filesystem::path& path);
  void validate() const;
  nlohmann::json to_json() const;
};

struct RunRecord {
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  double pf = 0.0;
  double cv = 0.0;
  std::uint64_t evaluations = 0;
  /// Magnification levels k for sdis, 1 for the baselines.
  int levels = 0;
  double wall_ms = 0.0;
  /// Empty on success; otherwise the error that aborted the run.
  std::string error;

  bool ok() const noexcept { return error.empty(); }
};

/// Statistics over the successful runs. empirical_cv uses the (R - 1)
/// normalization and is NaN for fewer than two runs.
struct Aggregates {
  std::size_t runs = 0;
  std::size_t failed_runs = 0;
  double mean_pf = 0.0;
  double empirical_cv = 0.0;
  double mean_cv = 0.0;
  double mean_evaluations = 0.0;
};

Aggregates aggregate(const std::vector<RunRecord>& runs);

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<RunRecord> runs;
  Aggregates aggregates;

  bool ok() const noexcept { return aggregates.failed_runs == 0; }
};

/// Executes one run of the spec with the given seed.
RunRecord run_once(const ExperimentSpec& spec, std::size_t run_index);

/// All repetitions on up to `workers` threads; records are ordered by run
/// index and do not depend on the worker count. Failing runs are recorded,
/// not thrown.
ExperimentReport run_experiment(const ExperimentSpec& spec, int workers = 1);

/// Columns: run_index,seed,pf_hat,cv_hat,n_evals,levels,wall_ms
/// with reals printed to 17 significant digits.
void write_csv(const ExperimentReport& report, std::ostream& out);
nlohmann::json summary_json(const ExperimentReport& report);

/// Writes <dir>/<name>.csv and <dir>/<name>.json. Throws Error naming the
/// path on I/O failure.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace sdis
