#include "mest/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "mest/numerics.hpp"
#include "mest/rng.hpp"

namespace mest {

Observation DataGenSpec::draw_one(std::mt19937_64& engine) const {
  std::uniform_real_distribution<double> u(lo, hi);
  switch (law) {
    case DataLaw::Uniform:
      return {u(engine), 0.0};
    case DataLaw::UniformPair:
      return {u(engine), 1.0};  // (y, x) with the unit design point
    case DataLaw::MinVolumePair:
      return {x0, u(engine)};  // (x, y) at the fixed design point
  }
  throw std::logic_error("draw_one: unknown data law");
}

SampleSet DataGenSpec::sample(std::mt19937_64& engine) const {
  if (n == 0) throw std::invalid_argument("DataGenSpec::sample: empty sample size");
  SampleSet s;
  s.observations.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.observations.push_back(draw_one(engine));
  return s;
}

std::size_t m_estimate(const CriterionSpec& spec, const ParameterGrid& grid,
                       const SampleSet& data) {
  return argmax_index(empirical_objective(spec, grid, data));
}

ArgmaxDistribution replicate_estimator(const CriterionSpec& spec, const ParameterGrid& grid,
                                       const DataGenSpec& gen, std::uint64_t replications,
                                       std::uint64_t seed) {
  if (replications == 0)
    throw std::invalid_argument("replicate_estimator: replications required");
  std::vector<std::uint64_t> counts(grid.size(), 0);
  for (std::uint64_t r = 0; r < replications; ++r) {
    auto engine = make_engine(derive_seed(seed, r));
    const SampleSet data = gen.sample(engine);
    ++counts[m_estimate(spec, grid, data)];
  }
  return ArgmaxDistribution::from_counts(counts, replications, seed);
}

std::size_t profile_argmax(const Eigen::VectorXd& objective_values, const ParameterGrid& grid) {
  if (grid.axis_sizes().size() != 2)
    throw std::invalid_argument("profile_argmax: two-axis product grid required");
  if (static_cast<std::size_t>(objective_values.size()) != grid.size())
    throw std::invalid_argument("profile_argmax: value/grid size mismatch");
  const std::size_t n0 = grid.axis_sizes()[0], n1 = grid.axis_sizes()[1];
  Eigen::VectorXd profile(static_cast<Eigen::Index>(n0));
  for (std::size_t i0 = 0; i0 < n0; ++i0) {
    double best = objective_values(static_cast<Eigen::Index>(grid.flat_index(i0, 0)));
    for (std::size_t i1 = 1; i1 < n1; ++i1) {
      best = std::max(best,
                      objective_values(static_cast<Eigen::Index>(grid.flat_index(i0, i1))));
    }
    profile(static_cast<Eigen::Index>(i0)) = best;
  }
  return argmax_index(profile);
}

ParameterGrid sieve_grid(std::size_t basis_count, double coeff_lo, double coeff_hi,
                         std::size_t points_per_axis) {
  if (basis_count == 0 || basis_count > 3)
    throw std::invalid_argument("sieve_grid: 1 to 3 basis coefficients supported");
  ParameterGrid grid = ParameterGrid::linspace(coeff_lo, coeff_hi, points_per_axis, "w1");
  for (std::size_t k = 2; k <= basis_count; ++k) {
    grid = ParameterGrid::product(
        grid, ParameterGrid::linspace(coeff_lo, coeff_hi, points_per_axis,
                                      "w" + std::to_string(k)));
  }
  return grid;
}

std::size_t population_argmax(const CriterionSpec& spec, const ParameterGrid& grid,
                              const DataGenSpec& gen) {
  if (!(gen.hi > gen.lo)) throw std::invalid_argument("population_argmax: degenerate data law");
  Eigen::VectorXd means(static_cast<Eigen::Index>(grid.size()));
  const double density = 1.0 / (gen.hi - gen.lo);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& theta = grid.point(i);
    auto integrand = [&](double v) {
      Observation z;
      switch (gen.law) {
        case DataLaw::Uniform:
          z = {v, 0.0};
          break;
        case DataLaw::UniformPair:
          z = {v, 1.0};
          break;
        case DataLaw::MinVolumePair:
          z = {gen.x0, v};
          break;
      }
      return spec.objective(theta, z);
    };
    means(static_cast<Eigen::Index>(i)) =
        density * adaptive_simpson(integrand, gen.lo, gen.hi, 1e-10);
  }
  return argmax_index(means);
}

}  // namespace mest
