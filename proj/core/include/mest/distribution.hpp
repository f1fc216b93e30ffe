#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace mest {

/// Probability mass function over grid cells estimated from replications.
struct ArgmaxDistribution {
  Eigen::VectorXd masses;      // nonnegative, sums to 1
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  std::size_t grid_size = 0;

  static ArgmaxDistribution from_counts(const std::vector<std::uint64_t>& counts,
                                        std::uint64_t replications, std::uint64_t seed);
  void validate() const;  // throws if masses are negative or do not sum to 1
};

enum class DistanceMetric { TV, IntervalKS };

/// TV = half L1; IntervalKS = max over contiguous index ranges. Both in [0,1].
double distribution_distance(const ArgmaxDistribution& p, const ArgmaxDistribution& q,
                             DistanceMetric metric);

/// Plug-in Monte Carlo standard error for the TV distance between two
/// independently estimated mass functions.
double tv_standard_error(const ArgmaxDistribution& p, const ArgmaxDistribution& q);

}  // namespace mest
