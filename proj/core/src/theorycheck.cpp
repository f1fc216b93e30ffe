#include "mest/theorycheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mest/numerics.hpp"
#include "mest/rng.hpp"

namespace mest {

namespace {

// Mollifier nodes for the smooth step: composite Simpson over [-1, 1] of the
// standard bump exp(1/(t^2-1)). Using one fixed rule for both the
// normalization and the evaluation makes the flat regions exactly 0 and 1.
struct MollifierRule {
  std::vector<double> nodes;
  std::vector<double> weighted;  // simpson weight * bump value, normalized
  MollifierRule() {
    constexpr int kIntervals = 2000;  // even
    nodes.resize(kIntervals + 1);
    weighted.resize(kIntervals + 1);
    double total = 0.0;
    for (int i = 0; i <= kIntervals; ++i) {
      const double t = -1.0 + 2.0 * static_cast<double>(i) / kIntervals;
      const double bump = (std::abs(t) < 1.0) ? std::exp(1.0 / (t * t - 1.0)) : 0.0;
      const double w = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      nodes[i] = t;
      weighted[i] = w * bump;
      total += weighted[i];
    }
    for (double& v : weighted) v /= total;
  }
};

const MollifierRule& mollifier() {
  static const MollifierRule rule;
  return rule;
}

constexpr double kMollifierShare = 1e-4;  // fraction of delta spent on smoothing

}  // namespace

double softmax(const Eigen::VectorXd& values, double beta,
               const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw std::invalid_argument("softmax: empty subset");
  if (!(beta > 0.0)) throw std::invalid_argument("softmax: beta must be positive");
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i : subset) {
    if (i >= static_cast<std::size_t>(values.size()))
      throw std::out_of_range("softmax: subset index out of range");
    mx = std::max(mx, values(static_cast<Eigen::Index>(i)));
  }
  double acc = 0.0;
  for (std::size_t i : subset) {
    acc += std::exp(beta * (values(static_cast<Eigen::Index>(i)) - mx));
  }
  return mx + std::log(acc) / beta;
}

double soft_step(double z, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("soft_step: delta must be positive");
  if (z >= 0.0) return 1.0;
  if (z <= -delta) return 0.0;
  const double w = kMollifierShare * delta;           // mollifier half-width
  const double ramp_width = delta - 2.0 * w;          // linear part
  const auto& rule = mollifier();
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = z + w * rule.nodes[i];
    const double r = std::clamp(1.0 + (v + w) / ramp_width, 0.0, 1.0);
    acc += rule.weighted[i] * r;
  }
  return std::clamp(acc, 0.0, 1.0);
}

DerivativeBoundReport derivative_bound_check(std::size_t dimension, double beta, double delta,
                                             const std::vector<std::size_t>& subset,
                                             std::uint64_t trials, std::uint64_t seed) {
  if (dimension == 0 || dimension > 12)
    throw std::invalid_argument("derivative_bound_check: dimension in [1, 12]");
  if (subset.empty() || subset.size() >= dimension)
    throw std::invalid_argument("derivative_bound_check: subset must be proper and nonempty");
  std::vector<std::size_t> complement;
  std::vector<char> in_subset(dimension, 0);
  for (std::size_t i : subset) {
    if (i >= dimension) throw std::out_of_range("derivative_bound_check: subset index");
    in_subset[i] = 1;
  }
  for (std::size_t i = 0; i < dimension; ++i) {
    if (!in_subset[i]) complement.push_back(i);
  }
  const double gap = std::log(static_cast<double>(subset.size())) / beta;

  auto f = [&](const Eigen::VectorXd& x) {
    return soft_step(softmax(x, beta, subset) - softmax(x, beta, complement) + gap, delta);
  };

  DerivativeBoundReport report;
  report.bound = 2.0 / delta;
  report.trials = trials;
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto engine = make_engine(derive_seed(seed, t));
    Eigen::VectorXd x(static_cast<Eigen::Index>(dimension));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = u(engine);
    double sum = 0.0;
    for (Eigen::Index m = 0; m < x.size(); ++m) {
      auto fm = [&](double v) {
        Eigen::VectorXd y = x;
        y(m) = v;
        return f(y);
      };
      sum += std::abs(richardson_derivative(fm, x(m)));
    }
    report.max_observed_sum = std::max(report.max_observed_sum, sum);
  }
  report.holds = report.max_observed_sum <= report.bound * (1.0 + 1e-3);
  return report;
}

AntiConcentrationReport anti_concentration_check(const GaussianModel& model,
                                                 const std::vector<std::size_t>& subset,
                                                 double epsilon, double sigma_lower,
                                                 std::uint64_t mc_samples, std::uint64_t seed) {
  if (!(sigma_lower > 0.0))
    throw std::invalid_argument("anti_concentration_check: sigma_lower must be positive");
  if (!(epsilon >= 0.0))
    throw std::invalid_argument("anti_concentration_check: epsilon must be nonnegative");
  if (mc_samples == 0)
    throw std::invalid_argument("anti_concentration_check: samples required");
  const std::size_t m = model.size();
  if (subset.empty() || subset.size() >= m)
    throw std::invalid_argument("anti_concentration_check: subset must be proper and nonempty");
  if (model.chol.size() == 0)
    throw std::invalid_argument("anti_concentration_check: model has no factorization");

  std::vector<std::size_t> complement;
  std::vector<char> in_subset(m, 0);
  for (std::size_t i : subset) {
    if (i >= m) throw std::out_of_range("anti_concentration_check: subset index");
    in_subset[i] = 1;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!in_subset[i]) complement.push_back(i);
  }

  std::vector<double> gaps(mc_samples);
  Eigen::VectorXd xi(static_cast<Eigen::Index>(m));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::uint64_t s = 0; s < mc_samples; ++s) {
    auto engine = make_engine(derive_seed(seed, s));
    for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = gauss(engine);
    const Eigen::VectorXd w = model.mean + model.chol * xi;
    double max_a = -std::numeric_limits<double>::infinity();
    double max_c = -std::numeric_limits<double>::infinity();
    for (std::size_t i : subset) max_a = std::max(max_a, w(static_cast<Eigen::Index>(i)));
    for (std::size_t i : complement) max_c = std::max(max_c, w(static_cast<Eigen::Index>(i)));
    gaps[s] = max_a - max_c;
  }
  std::sort(gaps.begin(), gaps.end());

  AntiConcentrationReport report;
  report.bound =
      2.0 * epsilon * (std::sqrt(2.0 * std::log(static_cast<double>(m))) + 2.0) / sigma_lower;
  const double lo = gaps.front() - epsilon, hi = gaps.back() + epsilon;
  constexpr int kScan = 401;
  const double inv_s = 1.0 / static_cast<double>(mc_samples);
  for (int k = 0; k < kScan; ++k) {
    const double r = lo + (hi - lo) * static_cast<double>(k) / (kScan - 1);
    const auto lower = std::lower_bound(gaps.begin(), gaps.end(), r - epsilon);
    const auto upper = std::upper_bound(gaps.begin(), gaps.end(), r + epsilon);
    const double p = static_cast<double>(upper - lower) * inv_s;
    const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) * inv_s);
    report.max_band_probability = std::max(report.max_band_probability, p);
    report.max_minus_3se = std::max(report.max_minus_3se, p - 3.0 * se);
  }
  report.holds = report.max_minus_3se <= report.bound;
  return report;
}

double EntropySpec::value(double eps) const {
  if (!(eps > 0.0)) throw std::invalid_argument("EntropySpec::value: eps must be positive");
  switch (kind) {
    case EntropyKind::EuclideanCompact:
      return dimension * std::log(1.0 + diameter / eps);
    case EntropyKind::PowerLaw:
      if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("EntropySpec: power-law alpha must be in (0, 2)");
      return scale * std::pow(eps, -alpha);
  }
  throw std::logic_error("EntropySpec::value: unknown kind");
}

double entropy_integral(const EntropySpec& spec, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("entropy_integral: epsilon in (0, 1]");
  auto integrand = [&](double t) { return std::sqrt(1.0 + spec.value(t)); };

  if (spec.kind == EntropyKind::PowerLaw) {
    if (!(spec.alpha > 0.0 && spec.alpha < 2.0))
      throw std::invalid_argument("entropy_integral: power-law alpha must be in (0, 2)");
    // Substitute t = u^{2/(2-alpha)}; the transformed integrand
    // s * sqrt(u^{2(s-1)} + ...) is bounded, removing the singularity at 0.
    const double s = 2.0 / (2.0 - spec.alpha);
    auto g = [&](double u) {
      if (u == 0.0) return s * std::sqrt(spec.scale);
      const double t = std::pow(u, s);
      return s * std::pow(u, s - 1.0) * std::sqrt(1.0 + spec.scale * std::pow(t, -spec.alpha));
    };
    return adaptive_simpson(g, 0.0, std::pow(epsilon, 1.0 / s), 1e-9);
  }

  // Logarithmic singularity at 0: integrate from a head cut and bound the
  // remainder by the (decreasing) integrand value at the cut.
  const double head = std::min(1e-10, 0.5 * epsilon);
  return head * integrand(head) + adaptive_simpson(integrand, head, epsilon, 1e-9);
}

RateBound rate_bound(const RateSpec& spec, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("rate_bound: n >= 2 required");
  const double dn = static_cast<double>(n);
  RateBound out;
  switch (spec.regime) {
    case RateRegime::FiniteDim:
    case RateRegime::BootstrapFinite:
      out.exponent = 5.0 / 8.0;
      out.value = std::pow(dn, -out.exponent) * std::log(dn);
      return out;
    case RateRegime::InfiniteDim:
    case RateRegime::BootstrapInfinite: {
      const double a = spec.alpha, k = spec.kappa;
      if (!(a > 0.0 && a < 2.0)) throw std::invalid_argument("rate_bound: alpha in (0, 2)");
      if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("rate_bound: kappa in (0, 1)");
      if (!(a / 2.0 + k < 1.0))
        throw std::invalid_argument("rate_bound: requires alpha/2 + kappa < 1");
      const double e1 = 5.0 / 8.0;
      const double e2 = (1.0 - a / 2.0 - k) / a;
      const double e3 = (5.0 - 5.0 * k - a) / (8.0 - 8.0 * k);
      out.exponent = std::min({e1, e2, e3});
      out.value = std::pow(dn, -out.exponent);
      return out;
    }
  }
  throw std::logic_error("rate_bound: unknown regime");
}

double rate_delta_term(const EntropySpec& entropy, std::uint64_t n, double epsilon) {
  if (n == 0) throw std::invalid_argument("rate_delta_term: n >= 1 required");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("rate_delta_term: epsilon in (0, 1)");
  const double dn = static_cast<double>(n);
  const double log_inv = std::log(1.0 / epsilon);
  return epsilon +
         (entropy_integral(entropy, epsilon) + epsilon * std::sqrt(log_inv)) / std::sqrt(dn) +
         (std::sqrt(log_inv) + log_inv) / dn;
}

}  // namespace mest
