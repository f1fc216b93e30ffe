#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "mest/grid.hpp"
#include "mest/sample.hpp"

namespace mest {

enum class CriterionKind { CubeRoot, LadRegression, MinVolume, Tabulated };
enum class KernelId { Gaussian, Uniform };

/// A parameter-indexed criterion family f_theta(z). Minimization criteria
/// (LAD, the minimum-volume inner problem) carry objective_sign() == -1 so
/// that every estimator downstream is an argmax.
struct CriterionSpec {
  CriterionKind kind = CriterionKind::CubeRoot;

  // MinVolume parameters.
  double width = 0.25;      // interval half-width iota, in (0, 1)
  double bandwidth = 0.1;   // kernel bandwidth h, > 0
  KernelId kernel = KernelId::Gaussian;
  double eval_x = 0.5;      // fixed evaluation input x

  // Tabulated values, (grid point) x (observation).
  Eigen::MatrixXd table;

  static CriterionSpec cube_root();
  static CriterionSpec lad();
  static CriterionSpec min_volume(double width, double bandwidth,
                                  KernelId kernel = KernelId::Gaussian,
                                  double eval_x = 0.5);
  static CriterionSpec tabulated(Eigen::MatrixXd values);

  /// Envelope constant b: |f_theta(z)| <= b on the declared domain.
  double envelope() const;

  /// +1 for criteria maximized as-is, -1 for criteria that are minimized.
  double objective_sign() const;

  /// Raw criterion value f_theta(z). For Tabulated, theta[0] and z.first are
  /// interpreted as (grid index, observation index).
  double evaluate(const std::vector<double>& theta, const Observation& z) const;

  /// objective_sign() * f_theta(z); the value every argmax works on.
  double objective(const std::vector<double>& theta, const Observation& z) const {
    return objective_sign() * evaluate(theta, z);
  }
};

/// Q_n over the grid: component j is the mean of f_{theta_j} over the data.
/// Raw (unsigned) criterion values.
Eigen::VectorXd empirical_criterion(const CriterionSpec& spec, const ParameterGrid& grid,
                                    const SampleSet& data);

/// Signed version used by estimators: objective_sign * empirical_criterion.
Eigen::VectorXd empirical_objective(const CriterionSpec& spec, const ParameterGrid& grid,
                                    const SampleSet& data);

/// Smallest index attaining the maximum. Throws on NaN or empty input.
std::size_t argmax_index(const Eigen::VectorXd& values);

}  // namespace mest
