#include "mest/coherence.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mest/rng.hpp"

namespace mest {

namespace {

constexpr std::size_t kExhaustiveCap = 18;
// Boundary cases sit exactly at sigma_lower_sq in exact arithmetic; allow a
// small relative slack so they are not rejected on float noise.
constexpr double kPassSlack = 1e-9;

std::vector<std::size_t> mask_to_indices(std::uint64_t mask, std::size_t m) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m; ++i) {
    if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
  }
  return idx;
}

// Minimum Schur-complement diagonal of sigma restricted to subset A (mask),
// conditioning on the complement.
double min_schur_diag_for_subset(const Eigen::MatrixXd& sigma, std::uint64_t mask,
                                 std::size_t m) {
  const std::vector<std::size_t> a = mask_to_indices(mask, m);
  const std::vector<std::size_t> ac =
      mask_to_indices(~mask & ((std::uint64_t{1} << m) - 1), m);
  const Eigen::Index na = static_cast<Eigen::Index>(a.size());
  const Eigen::Index nc = static_cast<Eigen::Index>(ac.size());

  Eigen::MatrixXd s_cc(nc, nc), s_ca(nc, na);
  for (Eigen::Index i = 0; i < nc; ++i) {
    for (Eigen::Index j = 0; j < nc; ++j) s_cc(i, j) = sigma(ac[i], ac[j]);
    for (Eigen::Index j = 0; j < na; ++j) s_ca(i, j) = sigma(ac[i], a[j]);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(s_cc);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("coherent_pd_check: conditioning block not factorizable");
  const Eigen::MatrixXd solved = ldlt.solve(s_ca);  // nc x na

  double min_diag = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < na; ++j) {
    const double schur = sigma(a[j], a[j]) - s_ca.col(j).dot(solved.col(j));
    min_diag = std::min(min_diag, schur);
  }
  return min_diag;
}

}  // namespace

CoherenceReport coherent_pd_check(const Eigen::MatrixXd& sigma, double sigma_lower_sq,
                                  const CoherenceMode& mode) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 2)
    throw std::invalid_argument("coherent_pd_check: square matrix of size >= 2 required");
  if (!sigma.isApprox(sigma.transpose(), 1e-12))
    throw std::invalid_argument("coherent_pd_check: matrix must be symmetric");
  const std::size_t m = static_cast<std::size_t>(sigma.rows());
  if (mode.exhaustive && m > kExhaustiveCap)
    throw std::invalid_argument("coherent_pd_check: exhaustive mode capped at size 18");

  CoherenceReport report;
  report.matrix_size = m;
  report.sigma_lower_sq = sigma_lower_sq;
  report.min_schur_diag = std::numeric_limits<double>::infinity();
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;

  auto visit = [&](std::uint64_t mask) {
    if (mask == 0 || mask == full) return;
    const double d = min_schur_diag_for_subset(sigma, mask, m);
    ++report.subsets_checked;
    if (d < report.min_schur_diag) {
      report.min_schur_diag = d;
      if (d < sigma_lower_sq * (1.0 - kPassSlack) - 1e-15) {
        report.witness = mask_to_indices(mask, m);
      }
    }
  };

  if (mode.exhaustive) {
    report.exhaustive = true;
    for (std::uint64_t mask = 1; mask < full; ++mask) visit(mask);
  } else {
    // Singletons and their complements always get checked; the rest are
    // uniform random proper subsets.
    for (std::size_t i = 0; i < m; ++i) {
      visit(std::uint64_t{1} << i);
      visit(full ^ (std::uint64_t{1} << i));
    }
    auto engine = make_engine(mode.seed);
    std::uniform_int_distribution<std::uint64_t> u(1, full - 1);
    for (std::uint64_t k = 0; k < mode.sampled_subsets; ++k) visit(u(engine));
  }

  report.pass = report.min_schur_diag >= sigma_lower_sq * (1.0 - kPassSlack) - 1e-15;
  if (report.pass) report.witness.reset();
  return report;
}

bool eigen_sufficiency(const Eigen::MatrixXd& sigma, double sigma_lower_sq) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0)
    throw std::invalid_argument("eigen_sufficiency: square matrix required");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigen_sufficiency: eigensolver failed");
  return es.eigenvalues().minCoeff() >= sigma_lower_sq;
}

Eigen::MatrixXd linear_toeplitz(double c, double delta, std::size_t size) {
  if (size < 2) throw std::invalid_argument("linear_toeplitz: size >= 2 required");
  if (!(delta > 0.0)) throw std::invalid_argument("linear_toeplitz: delta must be positive");
  if (!(c > static_cast<double>(size - 1) * delta / 2.0))
    throw std::invalid_argument("linear_toeplitz: requires c > p*delta/2");
  Eigen::MatrixXd sigma(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    for (Eigen::Index j = 0; j < sigma.cols(); ++j) {
      sigma(i, j) = c - delta * std::abs(static_cast<double>(i - j));
    }
  }
  return sigma;
}

ToeplitzCofactors toeplitz_cofactors(double c, double delta, std::size_t p) {
  if (p < 3) throw std::invalid_argument("toeplitz_cofactors: p >= 3 required");
  if (!(delta > 0.0)) throw std::invalid_argument("toeplitz_cofactors: delta must be positive");
  const double dp = static_cast<double>(p);
  const auto pw = [](double base, double e) { return std::pow(base, e); };

  // Corner diagonal, interior diagonal, first off-diagonal, anti-corner;
  // every other cofactor is zero.
  const double corner =
      pw(2.0, dp - 2.0) * c * pw(delta, dp - 2.0) -
      (dp - 2.0) * pw(2.0, dp - 3.0) * pw(delta, dp - 1.0);
  const double interior =
      pw(2.0, dp - 1.0) * c * pw(delta, dp - 2.0) -
      (dp - 1.0) * pw(2.0, dp - 2.0) * pw(delta, dp - 1.0);
  const double adjacent =
      -pw(2.0, dp - 2.0) * c * pw(delta, dp - 2.0) +
      (dp - 1.0) * pw(2.0, dp - 3.0) * pw(delta, dp - 1.0);
  const double anti_corner = pw(2.0, dp - 3.0) * pw(delta, dp - 1.0);
  const double determinant =
      pw(2.0, dp - 1.0) * c * pw(delta, dp - 1.0) -
      (dp - 1.0) * pw(2.0, dp - 2.0) * pw(delta, dp);

  ToeplitzCofactors out;
  out.determinant = determinant;
  const Eigen::Index ep = static_cast<Eigen::Index>(p);
  out.cofactors = Eigen::MatrixXd::Zero(ep, ep);
  for (Eigen::Index i = 0; i < ep; ++i) {
    for (Eigen::Index j = 0; j < ep; ++j) {
      if (i == j) {
        out.cofactors(i, j) = (i == 0 || i == ep - 1) ? corner : interior;
      } else if (std::abs(i - j) == 1) {
        out.cofactors(i, j) = adjacent;
      } else if ((i == 0 && j == ep - 1) || (i == ep - 1 && j == 0)) {
        out.cofactors(i, j) = anti_corner;
      }
    }
  }
  return out;
}

double toeplitz_conditional_variance(double c, double delta, std::size_t p) {
  if (p < 1) throw std::invalid_argument("toeplitz_conditional_variance: p >= 1 required");
  const double dp = static_cast<double>(p);
  const double num = 2.0 * delta * (2.0 * c - dp * delta);
  const double den = 2.0 * c - (dp - 1.0) * delta;
  if (!(num > 0.0 && den > 0.0))
    throw std::invalid_argument("toeplitz_conditional_variance: requires c > p*delta/2");
  return num / den;
}

}  // namespace mest
