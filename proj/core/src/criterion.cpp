#include "mest/criterion.hpp"

#include <cmath>
#include <stdexcept>

namespace mest {

namespace {

double kernel_value(KernelId id, double u) {
  switch (id) {
    case KernelId::Gaussian:
      return std::exp(-0.5 * u * u);
    case KernelId::Uniform:
      return std::abs(u) <= 1.0 ? 1.0 : 0.0;
  }
  throw std::logic_error("kernel_value: unknown kernel");
}

std::size_t checked_index(double raw, std::size_t limit, const char* what) {
  const double rounded = std::round(raw);
  if (!(std::abs(raw - rounded) < 0.5) || rounded < 0.0 ||
      rounded >= static_cast<double>(limit)) {
    throw std::out_of_range(std::string("tabulated criterion: ") + what + " out of range");
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

CriterionSpec CriterionSpec::cube_root() {
  CriterionSpec s;
  s.kind = CriterionKind::CubeRoot;
  return s;
}

CriterionSpec CriterionSpec::lad() {
  CriterionSpec s;
  s.kind = CriterionKind::LadRegression;
  return s;
}

CriterionSpec CriterionSpec::min_volume(double width, double bandwidth, KernelId kernel,
                                        double eval_x) {
  if (!(width > 0.0 && width < 1.0)) throw std::invalid_argument("min_volume: width in (0,1)");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("min_volume: bandwidth must be positive");
  CriterionSpec s;
  s.kind = CriterionKind::MinVolume;
  s.width = width;
  s.bandwidth = bandwidth;
  s.kernel = kernel;
  s.eval_x = eval_x;
  return s;
}

CriterionSpec CriterionSpec::tabulated(Eigen::MatrixXd values) {
  if (values.size() == 0) throw std::invalid_argument("tabulated: empty table");
  CriterionSpec s;
  s.kind = CriterionKind::Tabulated;
  s.table = std::move(values);
  return s;
}

double CriterionSpec::envelope() const {
  switch (kind) {
    case CriterionKind::CubeRoot:
      return 1.0;
    case CriterionKind::LadRegression:
      return 2.0;  // |y - x theta| on the unit box with theta in [-1, 1]
    case CriterionKind::MinVolume:
      return 1.0;  // both kernels are bounded by K(0) = 1
    case CriterionKind::Tabulated:
      return table.cwiseAbs().maxCoeff();
  }
  throw std::logic_error("envelope: unknown criterion kind");
}

double CriterionSpec::objective_sign() const {
  switch (kind) {
    case CriterionKind::CubeRoot:
    case CriterionKind::Tabulated:
      return 1.0;
    case CriterionKind::LadRegression:
    case CriterionKind::MinVolume:
      return -1.0;
  }
  throw std::logic_error("objective_sign: unknown criterion kind");
}

double CriterionSpec::evaluate(const std::vector<double>& theta, const Observation& z) const {
  if (theta.empty()) throw std::invalid_argument("evaluate: empty parameter point");
  switch (kind) {
    case CriterionKind::CubeRoot:
      return (z.first >= theta[0] - 1.0 && z.first <= theta[0] + 1.0) ? 1.0 : 0.0;
    case CriterionKind::LadRegression:
      // z = (y, x).
      return std::abs(z.first - z.second * theta[0]);
    case CriterionKind::MinVolume: {
      // z = (x, y): kernel in x times interval membership of y.
      const double k = kernel_value(kernel, (z.first - eval_x) / bandwidth);
      const bool inside = z.second >= theta[0] - width && z.second <= theta[0] + width;
      return inside ? k : 0.0;
    }
    case CriterionKind::Tabulated: {
      const std::size_t i = checked_index(theta[0], static_cast<std::size_t>(table.rows()),
                                          "grid index");
      const std::size_t j = checked_index(z.first, static_cast<std::size_t>(table.cols()),
                                          "observation index");
      return table(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  throw std::logic_error("evaluate: unknown criterion kind");
}

Eigen::VectorXd empirical_criterion(const CriterionSpec& spec, const ParameterGrid& grid,
                                    const SampleSet& data) {
  if (data.n() == 0) throw std::invalid_argument("empirical_criterion: empty sample");
  Eigen::VectorXd out(static_cast<Eigen::Index>(grid.size()));
  const double inv_n = 1.0 / static_cast<double>(data.n());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double acc = 0.0;
    for (const Observation& z : data.observations) acc += spec.evaluate(grid.point(i), z);
    out(static_cast<Eigen::Index>(i)) = acc * inv_n;
  }
  return out;
}

Eigen::VectorXd empirical_objective(const CriterionSpec& spec, const ParameterGrid& grid,
                                    const SampleSet& data) {
  return spec.objective_sign() * empirical_criterion(spec, grid, data);
}

std::size_t argmax_index(const Eigen::VectorXd& values) {
  if (values.size() == 0) throw std::invalid_argument("argmax_index: empty vector");
  std::size_t best = 0;
  double best_val = values(0);
  if (std::isnan(best_val)) throw std::domain_error("argmax_index: NaN value");
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    const double v = values(i);
    if (std::isnan(v)) throw std::domain_error("argmax_index: NaN value");
    if (v > best_val) {
      best_val = v;
      best = static_cast<std::size_t>(i);
    }
  }
  return best;
}

}  // namespace mest
