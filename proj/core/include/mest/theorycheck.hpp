#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mest/gaussian.hpp"

namespace mest {

/// Overflow-safe softmax h_{beta,A}(x) = beta^{-1} log sum_{m in A} exp(beta x_m).
/// Satisfies 0 <= h - max_A <= beta^{-1} log|A|.
double softmax(const Eigen::VectorXd& values, double beta,
               const std::vector<std::size_t>& subset);

/// Smooth step surrogate: 1 on z >= 0, 0 on z <= -delta, in [0,1] throughout,
/// C-infinity, with |g'| <= (1 + ~2e-4) / delta.
double soft_step(double z, double delta);

struct DerivativeBoundReport {
  double max_observed_sum = 0.0;  // max over trials of sum_m |d_m f|
  double bound = 0.0;             // 2 / delta
  bool holds = false;             // observed <= bound * (1 + 1e-3)
  std::uint64_t trials = 0;
};

/// Finite-difference check of sum_m |d_m g_delta(h_A - h_Ac + Delta)| <= 2/delta
/// at random points. Delta defaults to the softmax gap bound log|A|/beta.
DerivativeBoundReport derivative_bound_check(std::size_t dimension, double beta, double delta,
                                             const std::vector<std::size_t>& subset,
                                             std::uint64_t trials, std::uint64_t seed);

struct AntiConcentrationReport {
  double max_band_probability = 0.0;  // sup over scanned r of MC band estimate
  double max_minus_3se = 0.0;         // same, each point discounted 3 MC se
  double bound = 0.0;                 // 2 eps (sqrt(2 log M) + 2) / sigma_lower
  bool holds = false;                 // max_minus_3se <= bound
};

/// MC check of the conditional anti-concentration bound for
/// max_A W - max_Ac W over a grid of band centers r.
AntiConcentrationReport anti_concentration_check(const GaussianModel& model,
                                                 const std::vector<std::size_t>& subset,
                                                 double epsilon, double sigma_lower,
                                                 std::uint64_t mc_samples, std::uint64_t seed);

enum class EntropyKind { EuclideanCompact, PowerLaw };
struct EntropySpec {
  EntropyKind kind = EntropyKind::EuclideanCompact;
  double dimension = 1.0;  // EuclideanCompact
  double diameter = 1.0;   // EuclideanCompact
  double alpha = 1.0;      // PowerLaw exponent, must be < 2
  double scale = 1.0;      // PowerLaw constant C

  double value(double eps) const;  // H(eps)
};

/// Dudley-type integral J(eps) = int_0^eps sqrt(1 + H(t)) dt, tolerance 1e-8.
double entropy_integral(const EntropySpec& spec, double epsilon);

enum class RateRegime { FiniteDim, InfiniteDim, BootstrapFinite, BootstrapInfinite };
struct RateSpec {
  RateRegime regime = RateRegime::FiniteDim;
  double alpha = 1.0;  // in (0, 2), infinite-dimensional regimes
  double kappa = 0.5;  // in (0, 1)
  // Recorded for documentation; they enter the theory only through an
  // unspecified constant and never change the computed exponents.
  double q = 1.0;
  double c_ell = 1.0;
};
struct RateBound {
  double exponent = 0.0;  // binding exponent e in n^{-e}
  double value = 0.0;     // bound value at n (FiniteDim includes the log n factor)
};

/// n^{-5/8} log n in the finite-dimensional regimes; otherwise n^{-e} with
/// e = min(5/8, (1 - alpha/2 - kappa)/alpha, (5 - 5 kappa - alpha)/(8 - 8 kappa)).
RateBound rate_bound(const RateSpec& spec, std::uint64_t n);

/// Diagnostic Delta(n, eps) term of the abstract approximation bound.
double rate_delta_term(const EntropySpec& entropy, std::uint64_t n, double epsilon);

}  // namespace mest
