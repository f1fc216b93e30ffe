#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mest/bootstrap.hpp"
#include "mest/coherence.hpp"
#include "mest/criterion.hpp"
#include "mest/estimator.hpp"
#include "mest/gaussian.hpp"
#include "mest/grid.hpp"
#include "mest/theorycheck.hpp"

namespace mest {

/// Raised for malformed or inconsistent configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed experiment configuration. Every run is fully determined by
/// (config, seed); the canonical JSON dump feeds the run-directory hash.
struct ExperimentConfig {
  std::string canonical;  // sorted-key JSON dump of the source config

  CriterionSpec criterion;
  ParameterGrid grid;
  DataGenSpec data;
  std::vector<std::size_t> n_ladder;

  std::uint64_t replications = 10000;
  std::uint64_t seed = 1;
  std::uint64_t datasets = 20;
  std::uint64_t trials = 500;
  std::uint64_t mc_samples = 100000;
  bool use_mc_model = false;
  bool allow_formula = false;

  double level = 0.1;       // split-test size s
  double theta_star = 0.5;  // split-test null value

  // coherence block
  double coh_c = 1.75;
  double coh_delta = 0.1;
  std::size_t coh_size = 11;
  double sigma_lower_sq = 0.1;
  bool coh_exhaustive = true;
  std::uint64_t coh_sampled = 1000;

  // rates block
  RateSpec rate;
  std::uint64_t rate_n = 10000;

  static ExperimentConfig from_string(const std::string& json_text);
  static ExperimentConfig from_file(const std::filesystem::path& path);

  /// FNV-1a hash of the canonical dump, as fixed-width hex.
  std::string hash() const;
};

/// Run directory <root>/<config hash>; root from MEST_RUN_ROOT or "runs".
std::filesystem::path prepare_run_dir(const ExperimentConfig& config);

/// The Gaussian counterpart used by compare/bootstrap/test runs: analytic or
/// Monte Carlo model per config, covariance scaled by 1/n.
GaussianModel counterpart_model(const ExperimentConfig& config);

// Subcommand entry points. Each writes its CSV/JSON outputs into `out_dir`,
// logs a human-readable summary, and returns the process exit code
// (0 success, 2 assertion failure; config errors throw ConfigError).
int cmd_compare(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                std::ostream& log);
int cmd_bootstrap(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                  std::ostream& log);
int cmd_test(const ExperimentConfig& config, const std::filesystem::path& out_dir,
             std::ostream& log);
int cmd_coherence(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                  std::ostream& log);
int cmd_rates(const ExperimentConfig& config, const std::filesystem::path& out_dir,
              std::ostream& log);
int cmd_verify(const ExperimentConfig& config, const std::filesystem::path& out_dir,
               std::ostream& log);

// Result structs for the pieces the acceptance checks reuse directly.

struct CompareRow {
  std::size_t n = 0;
  std::uint64_t replications = 0;
  double tv = 0.0;
  double interval_ks = 0.0;
  double tv_mc_se = 0.0;
  double rate_bound_value = 0.0;
};
std::vector<CompareRow> run_compare(const ExperimentConfig& config);

struct BootstrapRow {
  std::size_t n = 0;
  std::uint64_t replications = 0;
  std::uint64_t datasets = 0;
  double mean_tv = 0.0;
  double sd_tv = 0.0;
};
std::vector<BootstrapRow> run_bootstrap(const ExperimentConfig& config);

struct CoverageReport {
  std::uint64_t trials = 0;
  double coverage = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double outside_fraction = 0.0;
};
CoverageReport run_test(const ExperimentConfig& config);

/// Formats a double deterministically for CSV/JSON output.
std::string format_double(double v);

}  // namespace mest
