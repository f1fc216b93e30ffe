#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mest {

/// One observation. Scalar criteria read `first` only; LAD reads (y, x) and
/// minimum-volume reads (x, y) from (first, second).
struct Observation {
  double first = 0.0;
  double second = 0.0;
};

struct SampleSet {
  std::vector<Observation> observations;

  std::size_t n() const { return observations.size(); }

  static SampleSet from_scalars(const std::vector<double>& zs) {
    SampleSet s;
    s.observations.reserve(zs.size());
    for (double z : zs) s.observations.push_back({z, 0.0});
    return s;
  }
  static SampleSet from_pairs(const std::vector<std::pair<double, double>>& ps) {
    SampleSet s;
    s.observations.reserve(ps.size());
    for (auto& p : ps) s.observations.push_back({p.first, p.second});
    return s;
  }
};

}  // namespace mest
