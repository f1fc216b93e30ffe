#include <doctest.h>

#include <cmath>
#include <random>

#include "mest/numerics.hpp"
#include "mest/theorycheck.hpp"

using namespace mest;

TEST_CASE("softmax sandwich and exact small cases") {
  Eigen::VectorXd x(3);
  x << 0.0, 0.0, 0.0;
  // Equal entries: softmax = log(3)/beta above the max.
  CHECK(softmax(x, 2.0, {0, 1, 2}) == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-14));
  x << 1.0, -50.0, -50.0;
  CHECK(softmax(x, 1.0, {0, 1, 2}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(softmax(x, 1.0, {0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(softmax(x, 1.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(softmax(x, 0.0, {0}), std::invalid_argument);
  CHECK_THROWS_AS(softmax(x, 1.0, {5}), std::out_of_range);

  std::mt19937_64 engine(43);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int t = 0; t < 2000; ++t) {
    Eigen::VectorXd v(5);
    for (Eigen::Index i = 0; i < 5; ++i) v(i) = u(engine);
    const double beta = 0.5 + (t % 10);
    const double h = softmax(v, beta, {0, 1, 2, 3, 4});
    const double gap = h - v.maxCoeff();
    CHECK(gap >= -1e-12);
    CHECK(gap <= std::log(5.0) / beta + 1e-12);
  }
}

TEST_CASE("soft step: flat regions are exact and the middle is sandwiched") {
  for (double delta : {0.1, 0.5, 1.0}) {
    CHECK(soft_step(0.0, delta) == 1.0);
    CHECK(soft_step(1.0, delta) == 1.0);
    CHECK(soft_step(-delta, delta) == 0.0);
    CHECK(soft_step(-2.0 * delta, delta) == 0.0);
    for (double z = -delta * 0.95; z < 0.0; z += delta / 7.0) {
      const double g = soft_step(z, delta);
      CHECK(g >= 0.0);
      CHECK(g <= 1.0);
    }
    // Monotone nondecreasing across the ramp.
    double prev = 0.0;
    for (int k = 0; k <= 50; ++k) {
      const double g = soft_step(-delta + delta * k / 50.0, delta);
      CHECK(g >= prev - 1e-14);
      prev = g;
    }
  }
  CHECK_THROWS_AS(soft_step(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("soft step midpoint against an independent quadrature oracle") {
  // Reconstruct g(-1/2) for delta = 1 by adaptive quadrature of the same
  // mollified-ramp construction (bump exp(1/(t^2-1)) on (-1,1), ramp width
  // delta*(1 - 2e-4), mollifier half-width 1e-4*delta).
  const double delta = 1.0, z = -0.5;
  const double w = 1e-4 * delta;
  const double ramp = delta - 2.0 * w;
  auto bump = [](double t) {
    return std::abs(t) < 1.0 ? std::exp(1.0 / (t * t - 1.0)) : 0.0;
  };
  const double norm = adaptive_simpson(bump, -1.0, 1.0, 1e-13);
  auto f = [&](double t) {
    const double r = std::clamp(1.0 + (z + w * t + w) / ramp, 0.0, 1.0);
    return bump(t) * r;
  };
  const double oracle = adaptive_simpson(f, -1.0, 1.0, 1e-13) / norm;
  const double g = soft_step(z, delta);
  CHECK(g > 0.0);
  CHECK(g < 1.0);
  CHECK(g == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(g == doctest::Approx(0.5).epsilon(1e-3));  // center of the ramp
}

TEST_CASE("derivative-sum bound holds on random points") {
  const auto r = derivative_bound_check(4, 2.0, 0.5, {0, 1}, 100, 7);
  CHECK(r.bound == doctest::Approx(4.0));
  CHECK(r.holds);
  CHECK(r.max_observed_sum <= 4.004);
  CHECK(r.trials == 100);
  // Halving delta doubles the bound; the observed maximum never exceeds it.
  const auto tighter = derivative_bound_check(4, 2.0, 0.25, {0, 1}, 100, 7);
  CHECK(tighter.bound == doctest::Approx(8.0));
  CHECK(tighter.holds);
  CHECK_THROWS_AS(derivative_bound_check(0, 2.0, 0.5, {0}, 10, 7), std::invalid_argument);
  CHECK_THROWS_AS(derivative_bound_check(4, 2.0, 0.5, {0, 1, 2, 3}, 10, 7),
                  std::invalid_argument);
}

TEST_CASE("constant input sits on a flat region of the composite") {
  // All coordinates equal: the softmax difference equals log(|A|/|A^c|)/beta
  // plus the gap shift, which lands on the constant-1 plateau of the step,
  // so every partial derivative vanishes.
  const double beta = 1.0, delta = 0.5;
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(4, 0.7);
  const double gap = std::log(2.0) / beta;
  auto f = [&](const Eigen::VectorXd& v) {
    return soft_step(softmax(v, beta, {0, 1}) - softmax(v, beta, {2, 3}) + gap, delta);
  };
  double sum = 0.0;
  for (Eigen::Index m = 0; m < 4; ++m) {
    auto fm = [&](double v) {
      Eigen::VectorXd y = x;
      y(m) = v;
      return f(y);
    };
    sum += std::abs(richardson_derivative(fm, x(m)));
  }
  CHECK(sum <= 1e-6);
}

TEST_CASE("anti-concentration: two independent standard normals") {
  GaussianModel model;
  model.mean = Eigen::VectorXd::Zero(2);
  model.cov = Eigen::MatrixXd::Identity(2, 2);
  model.chol = Eigen::MatrixXd::Identity(2, 2);
  const auto r = anti_concentration_check(model, {0}, 0.1, 1.0, 100000, 3);
  // D = N(0, 2); the band probability peaks at r = 0 with
  // P(|D| <= 0.1) = 2 Phi(0.1/sqrt(2)) - 1 = 0.0564.
  CHECK(r.bound == doctest::Approx(0.2 * (std::sqrt(2.0 * std::log(2.0)) + 2.0)));
  CHECK(r.holds);
  CHECK(r.max_band_probability == doctest::Approx(0.0564).epsilon(0.1));
  // epsilon = 0: empty bands almost surely.
  const auto zero = anti_concentration_check(model, {0}, 0.0, 1.0, 10000, 3);
  CHECK(zero.max_band_probability <= 1e-3);
  CHECK(zero.holds);
}

TEST_CASE("entropy integrals against direct quadrature") {
  EntropySpec euclid;
  euclid.kind = EntropyKind::EuclideanCompact;
  euclid.dimension = 2.0;
  euclid.diameter = 1.0;
  auto integrand = [&](double t) { return std::sqrt(1.0 + euclid.value(t)); };
  const double oracle = adaptive_simpson(integrand, 1e-9, 0.5, 1e-11) +
                        1e-9 * integrand(1e-9);
  CHECK(entropy_integral(euclid, 0.5) == doctest::Approx(oracle).epsilon(1e-7));
  CHECK(entropy_integral(euclid, 0.5) > entropy_integral(euclid, 0.25));

  EntropySpec power;
  power.kind = EntropyKind::PowerLaw;
  power.alpha = 1.0;
  power.scale = 1.0;
  // For H = 1/t: integral of sqrt(1 + 1/t) on (0, eps] has the closed form
  // sqrt(t(t+1)) + asinh(sqrt(t)).
  const double eps = 0.3;
  const double closed = std::sqrt(eps * (eps + 1.0)) + std::asinh(std::sqrt(eps));
  CHECK(entropy_integral(power, eps) == doctest::Approx(closed).epsilon(1e-7));
  power.alpha = 1.9;  // near the integrability boundary
  CHECK(entropy_integral(power, 0.5) > 0.0);
  power.alpha = 2.5;
  CHECK_THROWS_AS(entropy_integral(power, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(entropy_integral(euclid, 0.0), std::invalid_argument);
}

TEST_CASE("rate bounds: finite- and infinite-dimensional regimes") {
  RateSpec finite;
  finite.regime = RateRegime::FiniteDim;
  const auto fb = rate_bound(finite, 10000);
  CHECK(fb.exponent == doctest::Approx(0.625));
  CHECK(fb.value == doctest::Approx(std::pow(10000.0, -0.625) * std::log(10000.0))
                        .epsilon(1e-12));

  RateSpec inf;
  inf.regime = RateRegime::InfiniteDim;
  inf.alpha = 0.5;
  inf.kappa = 0.25;
  const auto ib = rate_bound(inf, 10000);
  CHECK(ib.exponent == doctest::Approx(13.0 / 24.0).epsilon(1e-14));
  CHECK(ib.value == doctest::Approx(std::pow(10000.0, -13.0 / 24.0)).epsilon(1e-12));

  inf.alpha = 1.9;
  inf.kappa = 0.5;  // alpha/2 + kappa >= 1
  CHECK_THROWS_AS(rate_bound(inf, 100), std::invalid_argument);
  inf.alpha = 2.5;
  inf.kappa = 0.1;
  CHECK_THROWS_AS(rate_bound(inf, 100), std::invalid_argument);
  CHECK_THROWS_AS(rate_bound(finite, 1), std::invalid_argument);
}

TEST_CASE("delta term decreases in n and increases with entropy") {
  EntropySpec euclid;
  euclid.dimension = 1.0;
  const double big = rate_delta_term(euclid, 100, 0.1);
  const double small = rate_delta_term(euclid, 10000, 0.1);
  CHECK(small < big);
  EntropySpec richer = euclid;
  richer.dimension = 3.0;
  CHECK(rate_delta_term(richer, 100, 0.1) > big);
  CHECK_THROWS_AS(rate_delta_term(euclid, 0, 0.1), std::invalid_argument);
}
