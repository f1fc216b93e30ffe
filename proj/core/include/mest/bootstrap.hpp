#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mest/criterion.hpp"
#include "mest/distribution.hpp"
#include "mest/grid.hpp"

namespace mest {

/// Shared read-only state for multiplier-bootstrap draws:
/// base criterion P_n(theta) over the grid and the row-centered table
/// f_theta(Z_i) - P_n(theta) (signed objective values).
struct BootstrapRun {
  Eigen::VectorXd base_criterion;   // M
  Eigen::MatrixXd centered_table;   // M x n, rows sum to 0
  double envelope = 1.0;

  static BootstrapRun prepare(const CriterionSpec& spec, const ParameterGrid& grid,
                              const SampleSet& data);
  std::size_t n() const { return static_cast<std::size_t>(centered_table.cols()); }
};

/// argmax of P_n(theta) + (1/n) sum_i e_i (f_theta(Z_i) - P_n(theta)).
std::size_t multiplier_draw(const BootstrapRun& run, const Eigen::VectorXd& multipliers);

/// Conditional bootstrap law of the argmax over R standard-normal multiplier
/// vectors, reproducible from the seed.
ArgmaxDistribution bootstrap_distribution(const CriterionSpec& spec, const ParameterGrid& grid,
                                          const SampleSet& data, std::uint64_t replications,
                                          std::uint64_t seed);
ArgmaxDistribution bootstrap_distribution(const BootstrapRun& run, std::uint64_t replications,
                                          std::uint64_t seed);

/// Minimum-volume acceptance region: cells greedily selected by descending
/// mass (ties to the lower index) until cumulative mass >= 1 - s.
struct AcceptanceRegion {
  std::vector<std::size_t> cells;  // in selection order
  double mass = 0.0;
  double level = 0.0;

  bool contains(std::size_t index) const;
};
AcceptanceRegion minimum_volume_region(const ArgmaxDistribution& dist, double s);

/// Sample-splitting hypothesis test: bootstrap region from the first half,
/// point estimate from the second, region shifted by theta* - theta_hat.
struct SplitTestResult {
  bool accept = false;
  bool outside_domain = false;      // some shifted cell left the grid bounds
  AcceptanceRegion region;          // from the first half
  std::size_t theta_hat_index = 0;  // from the second half
  std::vector<std::size_t> shifted_cells;  // snapped to the grid
};
SplitTestResult split_test(const CriterionSpec& spec, const ParameterGrid& grid,
                           const SampleSet& data, double theta_star, double s,
                           std::uint64_t replications, std::uint64_t seed);

}  // namespace mest
