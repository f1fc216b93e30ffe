#include "mest/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mest/numerics.hpp"
#include "mest/rng.hpp"

namespace mest {

namespace {

// LAD closed-form pieces, evaluated at the smaller of the two parameters.
double lad_c0(double t) { return 576.0 / 64.0 - 71.0 * t / 8.0 + 2.5 * t * t + t * t * t - t * t * t * t; }
double lad_c1(double t) { return 71.0 / 16.0 - 2.5 * t - 1.5 * t * t + 2.0 * t * t * t; }
double lad_c2(double t) { return -0.125 + 0.5 * t - 0.5 * t * t; }

double lad_mean(double t) { return t * t - 3.0 * t + 4.5; }

double lad_cov(double a, double b) {
  const double t = std::min(a, b);
  const double d = std::abs(a - b);
  return lad_c0(t) - lad_c1(t) * d + lad_c2(t) * d * d + d * d * d / 3.0;
}

double kernel_moment(const CriterionSpec& spec, int power) {
  // Design-law constants E[K((X - x)/h)^power] under the canonical X ~ U(0,1).
  auto f = [&](double x) {
    const double u = (x - spec.eval_x) / spec.bandwidth;
    const double k = spec.kernel == KernelId::Gaussian ? std::exp(-0.5 * u * u)
                                                       : (std::abs(u) <= 1.0 ? 1.0 : 0.0);
    return power == 2 ? k * k : k;
  };
  return adaptive_simpson(f, 0.0, 1.0, 1e-12);
}

}  // namespace

GaussianModel GaussianModel::scaled_covariance(double cov_scale) const {
  if (!(cov_scale > 0.0)) throw std::invalid_argument("scaled_covariance: scale must be positive");
  GaussianModel out = *this;
  out.cov *= cov_scale;
  if (out.chol.size() > 0) out.chol *= std::sqrt(cov_scale);
  out.jitter_used *= cov_scale;
  if (out.cov_se.size() > 0) out.cov_se *= cov_scale;
  return out;
}

std::pair<Eigen::MatrixXd, double> cholesky_with_jitter(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0)
    throw std::invalid_argument("cholesky_with_jitter: square matrix required");
  if (cov.cwiseAbs().maxCoeff() == 0.0) {
    // Exactly degenerate model: the zero matrix is its own factor.
    return {Eigen::MatrixXd::Zero(cov.rows(), cov.cols()), 0.0};
  }
  const double scale = cov.trace() / static_cast<double>(cov.rows());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(cov.rows(), cov.cols());
  double jitter = 0.0;
  for (;;) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov + jitter * id);
    if (llt.info() == Eigen::Success) return {Eigen::MatrixXd(llt.matrixL()), jitter};
    if (jitter == 0.0) {
      jitter = 1e-12 * scale;
      if (!(jitter > 0.0)) jitter = 1e-300;  // zero-trace matrices still get a ladder
    } else {
      jitter *= 2.0;
    }
    if (jitter > 1e-6 * scale && jitter > 1e-250)
      throw std::runtime_error("cholesky_with_jitter: not positive definite after max jitter");
  }
}

GaussianModel analytic_model(const CriterionSpec& spec, const ParameterGrid& grid,
                             bool allow_paper_formula) {
  if (grid.dim() != 1) throw std::invalid_argument("analytic_model: 1-D grids only");
  const Eigen::Index m = static_cast<Eigen::Index>(grid.size());
  GaussianModel model;
  model.source = ModelSource::Analytic;
  model.mean.resize(m);
  model.cov.resize(m, m);
  const double sign = spec.objective_sign();

  switch (spec.kind) {
    case CriterionKind::CubeRoot: {
      const double delta = grid.spacing();
      for (Eigen::Index i = 0; i < m; ++i) {
        model.mean(i) = sign * 0.5;
        for (Eigen::Index j = 0; j < m; ++j) {
          model.cov(i, j) = 1.75 - delta * std::abs(static_cast<double>(i - j));
        }
      }
      break;
    }
    case CriterionKind::LadRegression: {
      if (!allow_paper_formula)
        throw std::invalid_argument(
            "analytic_model: the LAD closed form disagrees with direct integration; "
            "pass allow_paper_formula to build it anyway");
      for (Eigen::Index i = 0; i < m; ++i) {
        const double ti = grid.scalar(static_cast<std::size_t>(i));
        model.mean(i) = sign * lad_mean(ti);
        for (Eigen::Index j = 0; j < m; ++j) {
          model.cov(i, j) = lad_cov(ti, grid.scalar(static_cast<std::size_t>(j)));
        }
      }
      break;
    }
    case CriterionKind::MinVolume: {
      if (!allow_paper_formula)
        throw std::invalid_argument(
            "analytic_model: the minimum-volume closed form disagrees with direct "
            "integration; pass allow_paper_formula to build it anyway");
      const double ck = kernel_moment(spec, 1);
      const double ck2 = kernel_moment(spec, 2);
      for (Eigen::Index i = 0; i < m; ++i) {
        model.mean(i) = sign * 2.0 * ck * spec.width;
        for (Eigen::Index j = 0; j < m; ++j) {
          const double d = std::abs(grid.scalar(static_cast<std::size_t>(i)) -
                                    grid.scalar(static_cast<std::size_t>(j)));
          model.cov(i, j) = ck2 * d - 2.0 * ck * spec.width * spec.width;
        }
      }
      break;
    }
    case CriterionKind::Tabulated:
      throw std::invalid_argument("analytic_model: no closed form for tabulated criteria");
  }

  // The flagged closed forms need not be positive semidefinite; keep the
  // moments available for discrepancy reporting even when sampling is not.
  try {
    auto [l, j] = cholesky_with_jitter(model.cov);
    model.chol = std::move(l);
    model.jitter_used = j;
  } catch (const std::runtime_error&) {
    if (!allow_paper_formula) throw;
    model.chol.resize(0, 0);
    model.jitter_used = std::numeric_limits<double>::quiet_NaN();
  }
  return model;
}

GaussianModel mc_model(const CriterionSpec& spec, const ParameterGrid& grid,
                       const DataGenSpec& sampler, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("mc_model: at least two samples required");
  const Eigen::Index m = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index s = static_cast<Eigen::Index>(samples);
  const double sign = spec.objective_sign();

  Eigen::MatrixXd draws(s, m);
  auto engine = make_engine(seed);
  for (Eigen::Index r = 0; r < s; ++r) {
    const Observation z = sampler.draw_one(engine);
    for (Eigen::Index i = 0; i < m; ++i) {
      draws(r, i) = sign * spec.evaluate(grid.point(static_cast<std::size_t>(i)), z);
    }
  }

  GaussianModel model;
  model.source = ModelSource::MonteCarlo;
  model.mc_samples = samples;
  model.mean = draws.colwise().mean();
  const Eigen::MatrixXd centered = draws.rowwise() - model.mean.transpose();
  model.cov = centered.transpose() * centered / static_cast<double>(s - 1);

  model.mean_se = (model.cov.diagonal() / static_cast<double>(s)).cwiseSqrt();
  model.cov_se.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double c = model.cov(i, j);
      const double m4 =
          (centered.col(i).cwiseProduct(centered.col(j)).array() - c).square().mean();
      model.cov_se(i, j) = std::sqrt(std::max(m4, 0.0) / static_cast<double>(s));
    }
  }

  auto [l, j] = cholesky_with_jitter(model.cov);
  model.chol = std::move(l);
  model.jitter_used = j;
  return model;
}

ArgmaxDistribution sample_argmax_distribution(const GaussianModel& model,
                                              std::uint64_t replications, std::uint64_t seed) {
  if (replications == 0)
    throw std::invalid_argument("sample_argmax_distribution: replications required");
  if (model.chol.size() == 0)
    throw std::invalid_argument("sample_argmax_distribution: model has no factorization");
  const Eigen::Index m = model.mean.size();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(m), 0);
  Eigen::VectorXd xi(m);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::uint64_t r = 0; r < replications; ++r) {
    auto engine = make_engine(derive_seed(seed, r));
    for (Eigen::Index i = 0; i < m; ++i) xi(i) = gauss(engine);
    const Eigen::VectorXd w = model.mean + model.chol * xi;
    ++counts[argmax_index(w)];
  }
  return ArgmaxDistribution::from_counts(counts, replications, seed);
}

ModelDiscrepancy model_discrepancy(const GaussianModel& formula, const GaussianModel& oracle) {
  if (formula.mean.size() != oracle.mean.size())
    throw std::invalid_argument("model_discrepancy: size mismatch");
  ModelDiscrepancy d;
  d.max_mean_abs_dev = (formula.mean - oracle.mean).cwiseAbs().maxCoeff();
  d.max_cov_abs_dev = (formula.cov - oracle.cov).cwiseAbs().maxCoeff();
  return d;
}

}  // namespace mest
