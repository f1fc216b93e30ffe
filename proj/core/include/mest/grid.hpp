#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mest {

/// Finite discretization of the parameter space: a 1-D interval grid or a
/// lexicographically ordered product grid. Points are delta-separated
/// (packing property) and immutable after construction.
class ParameterGrid {
 public:
  static ParameterGrid linspace(double lo, double hi, std::size_t points,
                                std::string label = "theta");
  /// Cartesian product appending a 1-D axis, axis0-major lexicographic order.
  /// Chaining builds higher-dimensional grids.
  static ParameterGrid product(const ParameterGrid& axis0, const ParameterGrid& axis1);

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return lo_.size(); }
  const std::vector<double>& point(std::size_t i) const { return points_[i]; }
  double scalar(std::size_t i) const { return points_[i][0]; }
  double spacing() const { return spacing_; }
  const std::vector<double>& lower() const { return lo_; }
  const std::vector<double>& upper() const { return hi_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::size_t>& axis_sizes() const { return axis_sizes_; }

  bool is_product() const { return axis_sizes_.size() >= 2; }
  /// (theta index, eta index) -> flat index for product grids.
  std::size_t flat_index(std::size_t i0, std::size_t i1) const;

  /// Nearest grid point to a scalar value; ties toward the lower index.
  std::size_t snap(double value) const;

  bool same_layout(const ParameterGrid& other) const;

 private:
  std::vector<std::vector<double>> points_;
  double spacing_ = 0.0;
  std::vector<double> lo_, hi_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> axis_sizes_;  // empty for plain 1-D grids
};

}  // namespace mest
