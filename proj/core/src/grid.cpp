#include "mest/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mest {

ParameterGrid ParameterGrid::linspace(double lo, double hi, std::size_t points,
                                      std::string label) {
  if (points == 0) throw std::invalid_argument("linspace: empty grid");
  if (points > 1 && !(hi > lo)) throw std::invalid_argument("linspace: hi must exceed lo");
  ParameterGrid g;
  g.points_.reserve(points);
  const double step = points > 1 ? (hi - lo) / static_cast<double>(points - 1) : 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    g.points_.push_back({lo + step * static_cast<double>(i)});
  }
  if (points > 1) g.points_.back() = {hi};  // endpoint included exactly
  g.spacing_ = step;
  g.lo_ = {lo};
  g.hi_ = {points > 1 ? hi : lo};
  g.labels_ = {std::move(label)};
  return g;
}

ParameterGrid ParameterGrid::product(const ParameterGrid& axis0, const ParameterGrid& axis1) {
  if (axis1.dim() != 1)
    throw std::invalid_argument("product: the appended axis must be a 1-D grid");
  ParameterGrid g;
  g.points_.reserve(axis0.size() * axis1.size());
  for (std::size_t i = 0; i < axis0.size(); ++i) {
    for (std::size_t j = 0; j < axis1.size(); ++j) {
      std::vector<double> pt = axis0.point(i);
      pt.push_back(axis1.scalar(j));
      g.points_.push_back(std::move(pt));
    }
  }
  const double s0 = axis0.size() > 1 ? axis0.spacing() : std::numeric_limits<double>::infinity();
  const double s1 = axis1.size() > 1 ? axis1.spacing() : std::numeric_limits<double>::infinity();
  g.spacing_ = std::min(s0, s1);
  if (!std::isfinite(g.spacing_)) g.spacing_ = 0.0;
  g.lo_ = axis0.lower();
  g.lo_.push_back(axis1.lower()[0]);
  g.hi_ = axis0.upper();
  g.hi_.push_back(axis1.upper()[0]);
  g.labels_ = axis0.labels();
  g.labels_.push_back(axis1.labels()[0]);
  g.axis_sizes_ = axis0.axis_sizes().empty() ? std::vector<std::size_t>{axis0.size()}
                                             : axis0.axis_sizes();
  g.axis_sizes_.push_back(axis1.size());
  return g;
}

std::size_t ParameterGrid::flat_index(std::size_t i0, std::size_t i1) const {
  if (axis_sizes_.size() != 2) throw std::logic_error("flat_index: two-axis grids only");
  if (i0 >= axis_sizes_[0] || i1 >= axis_sizes_[1])
    throw std::out_of_range("flat_index: axis index out of range");
  return i0 * axis_sizes_[1] + i1;
}

std::size_t ParameterGrid::snap(double value) const {
  if (dim() != 1) throw std::logic_error("snap: 1-D grids only");
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double d = std::abs(points_[i][0] - value);
    if (d < best_dist) {  // strict: ties stay at the lower index
      best_dist = d;
      best = i;
    }
  }
  return best;
}

bool ParameterGrid::same_layout(const ParameterGrid& other) const {
  return points_ == other.points_;
}

}  // namespace mest
