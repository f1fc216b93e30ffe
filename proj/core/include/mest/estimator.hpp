#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "mest/criterion.hpp"
#include "mest/distribution.hpp"
#include "mest/grid.hpp"
#include "mest/sample.hpp"

namespace mest {

enum class DataLaw {
  Uniform,        // scalar Z ~ Uniform(lo, hi)
  UniformPair,    // LAD: y ~ Uniform(lo, hi), x = 1
  MinVolumePair,  // x = x0, y ~ Uniform(lo, hi) conditional law
};

/// Synthetic data-generating specification.
struct DataGenSpec {
  DataLaw law = DataLaw::Uniform;
  double lo = 0.0;
  double hi = 1.0;
  double x0 = 0.5;  // MinVolumePair evaluation input
  std::size_t n = 2;
  std::string description;

  SampleSet sample(std::mt19937_64& engine) const;
  Observation draw_one(std::mt19937_64& engine) const;
};

/// argmax_index of the signed empirical criterion.
std::size_t m_estimate(const CriterionSpec& spec, const ParameterGrid& grid,
                       const SampleSet& data);

/// Monte Carlo law of the M-estimator over R independent datasets.
ArgmaxDistribution replicate_estimator(const CriterionSpec& spec, const ParameterGrid& grid,
                                       const DataGenSpec& gen, std::uint64_t replications,
                                       std::uint64_t seed);

/// Profile the second axis out of a product grid: per theta-slice max over
/// eta, then argmax over theta. Returns the theta-axis index.
std::size_t profile_argmax(const Eigen::VectorXd& objective_values, const ParameterGrid& grid);

/// Product grid over sieve coefficients w_1..w_K (trigonometric basis,
/// K <= 3 supported at desk scale; K <= 2 yields an actual product grid).
ParameterGrid sieve_grid(std::size_t basis_count, double coeff_lo, double coeff_hi,
                         std::size_t points_per_axis);

/// Population argmax oracle: adaptive quadrature of E[f_theta(Z)] across the
/// grid (tolerance 1e-10), then argmax of the signed means.
std::size_t population_argmax(const CriterionSpec& spec, const ParameterGrid& grid,
                              const DataGenSpec& gen);

}  // namespace mest
