#pragma once

#include <vector>

#include "quasilevel/potential.hpp"

namespace quasilevel {

/// Evaluates a plane-wave sum on the nodes origin + (i + 1/2) h u + (j + 1/2) h v one row at a time.
/// Each wave is split as cos(A_i + B_j) with per-column tables, so a row costs two products per wave.
class WaveRowEvaluator {
 public:
  WaveRowEvaluator(std::vector<PlaneWave> waves, Vec2 origin, double spacing, int nx, Vec2 u = {1.0, 0.0});

  void row(int j, double* out) const;
  int nx() const { return nx_; }

 private:
  std::vector<PlaneWave> waves_;
  Vec2 origin_;
  Vec2 u_;
  Vec2 v_;
  double h_;
  int nx_;
  std::vector<double> cos_a_;
  std::vector<double> sin_a_;
};

}  // namespace quasilevel
