#include "mest/distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mest {

ArgmaxDistribution ArgmaxDistribution::from_counts(const std::vector<std::uint64_t>& counts,
                                                   std::uint64_t replications,
                                                   std::uint64_t seed) {
  if (counts.empty()) throw std::invalid_argument("from_counts: empty counts");
  const std::uint64_t total =
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total != replications || replications == 0)
    throw std::invalid_argument("from_counts: counts do not sum to replications");
  ArgmaxDistribution d;
  d.masses.resize(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    d.masses(static_cast<Eigen::Index>(i)) =
        static_cast<double>(counts[i]) / static_cast<double>(replications);
  }
  d.replications = replications;
  d.seed = seed;
  d.grid_size = counts.size();
  return d;
}

void ArgmaxDistribution::validate() const {
  if (masses.size() == 0 || static_cast<std::size_t>(masses.size()) != grid_size)
    throw std::logic_error("ArgmaxDistribution: size mismatch");
  double total = 0.0;
  for (Eigen::Index i = 0; i < masses.size(); ++i) {
    const double m = masses(i);
    if (!(m >= 0.0)) throw std::logic_error("ArgmaxDistribution: negative mass");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::logic_error("ArgmaxDistribution: masses do not sum to 1");
}

double distribution_distance(const ArgmaxDistribution& p, const ArgmaxDistribution& q,
                             DistanceMetric metric) {
  if (p.masses.size() != q.masses.size())
    throw std::invalid_argument("distribution_distance: size mismatch");
  const Eigen::Index m = p.masses.size();
  if (metric == DistanceMetric::TV) {
    return 0.5 * (p.masses - q.masses).cwiseAbs().sum();
  }
  // IntervalKS: max over contiguous index ranges [i, j] of the mass gap.
  // With d_k = p_k - q_k, this is max over prefixes of (max - min) of the
  // running sum, computed in O(m).
  double run = 0.0, lo = 0.0, hi = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    run += p.masses(k) - q.masses(k);
    lo = std::min(lo, run);
    hi = std::max(hi, run);
  }
  return hi - lo;
}

double tv_standard_error(const ArgmaxDistribution& p, const ArgmaxDistribution& q) {
  if (p.masses.size() != q.masses.size())
    throw std::invalid_argument("tv_standard_error: size mismatch");
  if (p.replications == 0 || q.replications == 0)
    throw std::invalid_argument("tv_standard_error: replication counts required");
  double var = 0.0;
  for (Eigen::Index i = 0; i < p.masses.size(); ++i) {
    const double a = p.masses(i), b = q.masses(i);
    var += a * (1.0 - a) / static_cast<double>(p.replications) +
           b * (1.0 - b) / static_cast<double>(q.replications);
  }
  return 0.5 * std::sqrt(var);
}

}  // namespace mest
