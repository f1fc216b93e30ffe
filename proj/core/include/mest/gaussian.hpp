#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "mest/criterion.hpp"
#include "mest/distribution.hpp"
#include "mest/estimator.hpp"
#include "mest/grid.hpp"

namespace mest {

enum class ModelSource { Analytic, MonteCarlo };

/// Mean and covariance of the (signed) criterion values over a grid, with a
/// Cholesky factor for sampling. Immutable after construction.
struct GaussianModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  Eigen::MatrixXd chol;        // lower triangular, chol*chol^T = cov + jitter*I
  double jitter_used = 0.0;
  ModelSource source = ModelSource::Analytic;
  std::uint64_t mc_samples = 0;

  // Plug-in standard errors for Monte Carlo models; empty for analytic ones.
  Eigen::VectorXd mean_se;
  Eigen::MatrixXd cov_se;

  std::size_t size() const { return static_cast<std::size_t>(mean.size()); }

  /// Copy with covariance scaled by `cov_scale` (mean unchanged). Matching the
  /// empirical criterion at sample size n uses cov_scale = 1/n.
  GaussianModel scaled_covariance(double cov_scale) const;
};

/// Cholesky with the jitter ladder: 0, then 1e-12*trace/M doubling up to
/// 1e-6*trace/M. Throws if the ladder is exhausted.
/// Returns the factor and the jitter actually used.
std::pair<Eigen::MatrixXd, double> cholesky_with_jitter(const Eigen::MatrixXd& cov);

/// Closed-form mean/covariance on the grid. CubeRoot is always registered;
/// the LAD and MinVolume closed forms come from formulas that disagree with
/// direct integration (see discrepancy_report) and require
/// allow_paper_formula = true.
GaussianModel analytic_model(const CriterionSpec& spec, const ParameterGrid& grid,
                             bool allow_paper_formula = false);

/// Plug-in moment estimates over `samples` i.i.d. draws of the data law.
GaussianModel mc_model(const CriterionSpec& spec, const ParameterGrid& grid,
                       const DataGenSpec& sampler, std::uint64_t samples,
                       std::uint64_t seed);

/// Empirical law of argmax(mean + chol * xi) over `replications` draws.
/// Per-replication seeds derive from (seed, index), so the result is
/// independent of execution order.
ArgmaxDistribution sample_argmax_distribution(const GaussianModel& model,
                                              std::uint64_t replications,
                                              std::uint64_t seed);

/// Entrywise comparison of an analytic (closed-form) model against an
/// oracle model; max absolute deviations, for the documented-discrepancy runs.
struct ModelDiscrepancy {
  double max_mean_abs_dev = 0.0;
  double max_cov_abs_dev = 0.0;
};
ModelDiscrepancy model_discrepancy(const GaussianModel& formula, const GaussianModel& oracle);

}  // namespace mest
