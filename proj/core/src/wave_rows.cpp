#include "quasilevel/wave_rows.hpp"

#include <cmath>

namespace quasilevel {

WaveRowEvaluator::WaveRowEvaluator(std::vector<PlaneWave> waves, Vec2 origin, double spacing, int nx, Vec2 u)
    : waves_(std::move(waves)), origin_(origin), u_(u / norm(u)), v_(perp(u_)), h_(spacing), nx_(nx) {
  const std::size_t W = waves_.size();
  cos_a_.resize(W * static_cast<std::size_t>(nx));
  sin_a_.resize(W * static_cast<std::size_t>(nx));
  for (std::size_t w = 0; w < W; ++w) {
    const PlaneWave& pw = waves_[w];
    const double base = dot(pw.g, origin_) - pw.phase;
    const double gu = dot(pw.g, u_);
    for (int i = 0; i < nx; ++i) {
      const double a = base + (i + 0.5) * h_ * gu;
      cos_a_[w * nx + i] = pw.amplitude * std::cos(a);
      sin_a_[w * nx + i] = pw.amplitude * std::sin(a);
    }
  }
}

void WaveRowEvaluator::row(int j, double* out) const {
  for (int i = 0; i < nx_; ++i) out[i] = 0.0;
  for (std::size_t w = 0; w < waves_.size(); ++w) {
    const double b = (j + 0.5) * h_ * dot(waves_[w].g, v_);
    const double cb = std::cos(b);
    const double sb = std::sin(b);
    const double* ca = cos_a_.data() + w * nx_;
    const double* sa = sin_a_.data() + w * nx_;
    for (int i = 0; i < nx_; ++i) out[i] += ca[i] * cb - sa[i] * sb;
  }
}

}  // namespace quasilevel
