#include <doctest.h>

#include <random>

#include "mest/coherence.hpp"

using namespace mest;

namespace {

Eigen::MatrixXd random_spd(std::mt19937_64& engine, Eigen::Index m) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = g(engine);
  }
  return a * a.transpose() + 0.05 * Eigen::MatrixXd::Identity(m, m);
}

// Dense oracle for one subset: explicit Schur complement diagonal.
double schur_diag_oracle(const Eigen::MatrixXd& sigma, const std::vector<std::size_t>& a,
                         std::size_t pick) {
  std::vector<std::size_t> ac;
  for (std::size_t i = 0; i < static_cast<std::size_t>(sigma.rows()); ++i) {
    if (std::find(a.begin(), a.end(), i) == a.end()) ac.push_back(i);
  }
  Eigen::MatrixXd scc(ac.size(), ac.size());
  Eigen::VectorXd sca(ac.size());
  for (std::size_t i = 0; i < ac.size(); ++i) {
    for (std::size_t j = 0; j < ac.size(); ++j) scc(i, j) = sigma(ac[i], ac[j]);
    sca(static_cast<Eigen::Index>(i)) = sigma(ac[i], pick);
  }
  return sigma(pick, pick) - sca.dot(scc.ldlt().solve(sca));
}

}  // namespace

TEST_CASE("identity matrix is coherent at any threshold below 1") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(5, 5);
  const auto report = coherent_pd_check(id, 0.9, CoherenceMode::Exhaustive());
  CHECK(report.pass);
  CHECK(report.exhaustive);
  CHECK(report.subsets_checked == (1u << 5) - 2);
  CHECK(report.min_schur_diag == doctest::Approx(1.0));
  CHECK_FALSE(report.witness.has_value());
}

TEST_CASE("failing check reports a witness subset") {
  Eigen::MatrixXd sigma(3, 3);
  sigma << 1.0, 0.99, 0.0, 0.99, 1.0, 0.0, 0.0, 0.0, 1.0;
  const auto report = coherent_pd_check(sigma, 0.5, CoherenceMode::Exhaustive());
  CHECK_FALSE(report.pass);
  REQUIRE(report.witness.has_value());
  // Conditioning one of the correlated pair on the other leaves variance
  // 1 - 0.99^2 < 0.5.
  CHECK(report.min_schur_diag == doctest::Approx(1.0 - 0.99 * 0.99));
}

TEST_CASE("schur diagonals match the dense oracle on random matrices") {
  std::mt19937_64 engine(31);
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXd sigma = random_spd(engine, 5);
    const auto report = coherent_pd_check(sigma, 0.0, CoherenceMode::Exhaustive());
    double oracle_min = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 1; mask < 31; ++mask) {
      std::vector<std::size_t> a;
      for (std::size_t i = 0; i < 5; ++i) {
        if (mask & (1u << i)) a.push_back(i);
      }
      for (std::size_t pick : a) {
        oracle_min = std::min(oracle_min, schur_diag_oracle(sigma, a, pick));
      }
    }
    CHECK(report.min_schur_diag == doctest::Approx(oracle_min).epsilon(1e-9));
  }
}

TEST_CASE("eigen sufficiency implies coherence (sampled spot check)") {
  std::mt19937_64 engine(37);
  int implications = 0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::MatrixXd sigma = random_spd(engine, 6);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double threshold = lmin * 0.999;
    if (eigen_sufficiency(sigma, threshold)) {
      ++implications;
      CHECK(coherent_pd_check(sigma, threshold, CoherenceMode::Exhaustive()).pass);
    }
  }
  CHECK(implications == 100);  // threshold below lambda_min by construction
}

TEST_CASE("sampled mode covers singletons and stays below the exhaustive cap") {
  std::mt19937_64 engine(41);
  const Eigen::MatrixXd sigma = random_spd(engine, 6);
  const auto sampled = coherent_pd_check(sigma, 0.0, CoherenceMode::Sampled(100, 4));
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.subsets_checked >= 12);  // 6 singletons + 6 complements
  const auto exhaustive = coherent_pd_check(sigma, 0.0, CoherenceMode::Exhaustive());
  CHECK(sampled.min_schur_diag >= exhaustive.min_schur_diag - 1e-12);
  Eigen::MatrixXd big = Eigen::MatrixXd::Identity(20, 20);
  CHECK_THROWS_AS(coherent_pd_check(big, 0.5, CoherenceMode::Exhaustive()),
                  std::invalid_argument);
  CHECK_NOTHROW(coherent_pd_check(big, 0.5, CoherenceMode::Sampled(50, 1)));
}

TEST_CASE("linear toeplitz family and its guards") {
  const Eigen::MatrixXd sigma = linear_toeplitz(1.75, 0.25, 4);
  CHECK(sigma(0, 0) == 1.75);
  CHECK(sigma(0, 3) == doctest::Approx(1.0));
  CHECK(sigma(2, 1) == doctest::Approx(1.5));
  CHECK_THROWS_AS(linear_toeplitz(0.3, 0.25, 11), std::invalid_argument);
  CHECK_THROWS_AS(linear_toeplitz(1.75, 0.0, 4), std::invalid_argument);
}

TEST_CASE("cofactor closed forms match dense minors") {
  for (std::size_t p : {std::size_t{3}, std::size_t{4}, std::size_t{6}, std::size_t{8}}) {
    for (double delta : {0.25, 0.1, 0.05}) {
      const double c = 1.75;
      const Eigen::MatrixXd m = linear_toeplitz(c, delta, p);
      const auto closed = toeplitz_cofactors(c, delta, p);
      CHECK(closed.determinant ==
            doctest::Approx(m.determinant()).epsilon(1e-9));
      const Eigen::Index ep = static_cast<Eigen::Index>(p);
      for (Eigen::Index i = 0; i < ep; ++i) {
        for (Eigen::Index j = 0; j < ep; ++j) {
          Eigen::MatrixXd minor(ep - 1, ep - 1);
          for (Eigen::Index r = 0, rr = 0; r < ep; ++r) {
            if (r == i) continue;
            for (Eigen::Index s = 0, ss = 0; s < ep; ++s) {
              if (s == j) continue;
              minor(rr, ss++) = m(r, s);
            }
            ++rr;
          }
          const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
          const double oracle = sign * minor.determinant();
          // Relative to the largest cofactor magnitude: the structurally zero
          // entries of the oracle carry O(1e-21) rounding noise.
          const double scale = std::max(std::abs(oracle), std::abs(closed.determinant));
          CHECK(std::abs(closed.cofactors(i, j) - oracle) <= 1e-9 * scale);
        }
      }
    }
  }
  CHECK_THROWS_AS(toeplitz_cofactors(1.75, 0.1, 2), std::invalid_argument);
}

TEST_CASE("cofactors are homogeneous of degree p-1 in (c, delta)") {
  // Underflow guard: evaluating at delta = 1 and rescaling must agree with
  // the direct evaluation at small delta.
  for (std::size_t p : {std::size_t{4}, std::size_t{7}}) {
    const double c = 1.75, delta = 0.05;
    const auto direct = toeplitz_cofactors(c, delta, p);
    const auto unit = toeplitz_cofactors(c / delta, 1.0, p);
    const double scale = std::pow(delta, static_cast<double>(p) - 1.0);
    CHECK((direct.cofactors - scale * unit.cofactors).cwiseAbs().maxCoeff() <
          1e-12 * direct.cofactors.cwiseAbs().maxCoeff());
    CHECK(direct.determinant ==
          doctest::Approx(scale * delta * unit.determinant).epsilon(1e-12));
  }
}

TEST_CASE("conditional variance closed form matches the dense Schur complement") {
  for (std::size_t p : {std::size_t{2}, std::size_t{5}, std::size_t{20}, std::size_t{50}}) {
    for (double delta : {0.25, 0.01}) {
      const double c = 7.0 / 4.0 + delta * static_cast<double>(p);  // keep c > p delta / 2
      const Eigen::MatrixXd sigma = linear_toeplitz(c, delta, p + 1);
      const Eigen::MatrixXd rest = sigma.bottomRightCorner(p, p);
      const Eigen::VectorXd v = sigma.col(0).tail(p);
      const double oracle = sigma(0, 0) - v.dot(rest.ldlt().solve(v));
      CHECK(toeplitz_conditional_variance(c, delta, p) ==
            doctest::Approx(oracle).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(toeplitz_conditional_variance(0.1, 0.25, 10), std::invalid_argument);
}
