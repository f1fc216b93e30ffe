#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace mest {

struct CoherenceReport {
  std::size_t matrix_size = 0;
  std::uint64_t subsets_checked = 0;
  bool exhaustive = false;
  double min_schur_diag = 0.0;
  double sigma_lower_sq = 0.0;
  bool pass = false;
  std::optional<std::vector<std::size_t>> witness;  // failing subset, if any
};

struct CoherenceMode {
  bool exhaustive = true;
  std::uint64_t sampled_subsets = 0;  // for the sampled mode
  std::uint64_t seed = 0;

  static CoherenceMode Exhaustive() { return {true, 0, 0}; }
  static CoherenceMode Sampled(std::uint64_t k, std::uint64_t seed) { return {false, k, seed}; }
};

/// Coherent positive definiteness: every proper nonempty subset A must have
/// Schur-complement diagonal >= sigma_lower_sq. Exhaustive mode enumerates
/// all 2^M - 2 subsets (M <= 18); sampled mode draws k random subsets plus
/// all singletons and singleton complements.
CoherenceReport coherent_pd_check(const Eigen::MatrixXd& sigma, double sigma_lower_sq,
                                  const CoherenceMode& mode);

/// lambda_min(sigma) >= sigma_lower_sq; a sufficient condition for coherence.
bool eigen_sufficiency(const Eigen::MatrixXd& sigma, double sigma_lower_sq);

/// (p+1)x(p+1)-style matrix with entries c - delta*|i-j|. Requires
/// c > size*delta/2 so the conditional variance stays positive.
Eigen::MatrixXd linear_toeplitz(double c, double delta, std::size_t size);

/// Closed-form signed cofactors and determinant of the p x p matrix
/// M_{i,j} = c - delta|i-j| (p >= 3).
struct ToeplitzCofactors {
  Eigen::MatrixXd cofactors;
  double determinant = 0.0;
};
ToeplitzCofactors toeplitz_cofactors(double c, double delta, std::size_t p);

/// Closed form 2*delta*(2c - p*delta) / (2c - (p-1)*delta) for
/// Var(row 1 | rows 2..p+1) of the (p+1)-point linear Toeplitz family.
double toeplitz_conditional_variance(double c, double delta, std::size_t p);

}  // namespace mest
