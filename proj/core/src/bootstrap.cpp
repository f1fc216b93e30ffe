#include "mest/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mest/estimator.hpp"
#include "mest/rng.hpp"

namespace mest {

BootstrapRun BootstrapRun::prepare(const CriterionSpec& spec, const ParameterGrid& grid,
                                   const SampleSet& data) {
  if (data.n() == 0) throw std::invalid_argument("BootstrapRun::prepare: empty sample");
  const Eigen::Index m = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index n = static_cast<Eigen::Index>(data.n());
  BootstrapRun run;
  run.envelope = spec.envelope();
  run.centered_table.resize(m, n);
  const double sign = spec.objective_sign();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      run.centered_table(i, j) =
          sign * spec.evaluate(grid.point(static_cast<std::size_t>(i)),
                               data.observations[static_cast<std::size_t>(j)]);
    }
  }
  run.base_criterion = run.centered_table.rowwise().mean();
  run.centered_table.colwise() -= run.base_criterion;
  return run;
}

std::size_t multiplier_draw(const BootstrapRun& run, const Eigen::VectorXd& multipliers) {
  if (multipliers.size() != run.centered_table.cols())
    throw std::invalid_argument("multiplier_draw: multiplier length must equal n");
  const double inv_n = 1.0 / static_cast<double>(run.n());
  const Eigen::VectorXd b = run.base_criterion + inv_n * (run.centered_table * multipliers);
  return argmax_index(b);
}

ArgmaxDistribution bootstrap_distribution(const BootstrapRun& run, std::uint64_t replications,
                                          std::uint64_t seed) {
  if (replications == 0)
    throw std::invalid_argument("bootstrap_distribution: replications required");
  const Eigen::Index n = run.centered_table.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(run.centered_table.rows()), 0);

  // Blocked gemm: multipliers are generated per replication index so the
  // result does not depend on the block size.
  constexpr std::uint64_t kBlock = 256;
  Eigen::MatrixXd e(n, static_cast<Eigen::Index>(kBlock));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::uint64_t start = 0; start < replications; start += kBlock) {
    const Eigen::Index cols =
        static_cast<Eigen::Index>(std::min<std::uint64_t>(kBlock, replications - start));
    for (Eigen::Index c = 0; c < cols; ++c) {
      auto engine = make_engine(derive_seed(seed, start + static_cast<std::uint64_t>(c)));
      for (Eigen::Index i = 0; i < n; ++i) e(i, c) = gauss(engine);
    }
    const Eigen::MatrixXd b =
        (inv_n * (run.centered_table * e.leftCols(cols))).colwise() + run.base_criterion;
    for (Eigen::Index c = 0; c < cols; ++c) ++counts[argmax_index(b.col(c))];
  }
  return ArgmaxDistribution::from_counts(counts, replications, seed);
}

ArgmaxDistribution bootstrap_distribution(const CriterionSpec& spec, const ParameterGrid& grid,
                                          const SampleSet& data, std::uint64_t replications,
                                          std::uint64_t seed) {
  return bootstrap_distribution(BootstrapRun::prepare(spec, grid, data), replications, seed);
}

bool AcceptanceRegion::contains(std::size_t index) const {
  return std::find(cells.begin(), cells.end(), index) != cells.end();
}

AcceptanceRegion minimum_volume_region(const ArgmaxDistribution& dist, double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("minimum_volume_region: s in (0,1)");
  dist.validate();
  const std::size_t m = dist.grid_size;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dist.masses(static_cast<Eigen::Index>(a)) > dist.masses(static_cast<Eigen::Index>(b));
  });
  AcceptanceRegion region;
  region.level = s;
  const double target = (1.0 - s) - 1e-12;  // float-shortfall guard
  for (std::size_t idx : order) {
    if (region.mass >= target) break;
    region.cells.push_back(idx);
    region.mass += dist.masses(static_cast<Eigen::Index>(idx));
  }
  return region;
}

SplitTestResult split_test(const CriterionSpec& spec, const ParameterGrid& grid,
                           const SampleSet& data, double theta_star, double s,
                           std::uint64_t replications, std::uint64_t seed) {
  if (grid.dim() != 1) throw std::invalid_argument("split_test: 1-D grids only");
  if (data.n() < 2) throw std::invalid_argument("split_test: need at least two observations");
  const std::size_t half = (data.n() + 1) / 2;
  SampleSet first, second;
  first.observations.assign(data.observations.begin(),
                            data.observations.begin() + static_cast<std::ptrdiff_t>(half));
  second.observations.assign(data.observations.begin() + static_cast<std::ptrdiff_t>(half),
                             data.observations.end());

  SplitTestResult result;
  const ArgmaxDistribution boot = bootstrap_distribution(spec, grid, first, replications, seed);
  result.region = minimum_volume_region(boot, s);
  result.theta_hat_index = m_estimate(spec, grid, second);

  // Shift the region by theta* - theta_hat and test membership of theta*;
  // equivalently, theta_hat must fall in the unshifted region, but the
  // shifted cells are materialized for reporting.
  const double shift = theta_star - grid.scalar(result.theta_hat_index);
  const double lo = grid.lower()[0], hi = grid.upper()[0];
  const double tol = 0.5 * grid.spacing();
  const std::size_t star_index = grid.snap(theta_star);
  for (std::size_t cell : result.region.cells) {
    const double shifted = grid.scalar(cell) + shift;
    if (shifted < lo - tol || shifted > hi + tol) {
      result.outside_domain = true;
      continue;
    }
    result.shifted_cells.push_back(grid.snap(shifted));
  }
  result.accept = std::find(result.shifted_cells.begin(), result.shifted_cells.end(),
                            star_index) != result.shifted_cells.end();
  return result;
}

}  // namespace mest
