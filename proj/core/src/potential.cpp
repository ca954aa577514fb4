#include "quasilevel/potential.hpp"

#include <cmath>
#include <string>

#include "quasilevel/errors.hpp"

namespace quasilevel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

void require_finite(Vec2 v, const char* what) {
  if (!is_finite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

double reduce_phase(double p) {
  double r = std::fmod(p, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

PotentialSpec::PotentialSpec(double V0, double k, Radians alpha, Vec2 a)
    : V0_(V0), k_(k), alpha_(alpha.value), a_(a) {
  require_finite(V0, "V0");
  require_finite(k, "k");
  require_finite(alpha.value, "alpha");
  require_finite(a, "shift a");
  if (V0 <= 0.0) throw InvalidArgument("V0 must be positive");
  if (k <= 0.0) throw InvalidArgument("k must be positive");
  if (!(alpha.value > 0.0) || alpha.value > std::numbers::pi / 2.0 * (1.0 + 1e-15)) {
    throw InvalidArgument("alpha must lie in (0, 90] degrees");
  }
}

PotentialSpec::PotentialSpec(double V0, double k, Degrees alpha, Vec2 a)
    : PotentialSpec(V0, k, to_radians(alpha), a) {}

PotentialSpec PotentialSpec::with_shift(Vec2 a) const {
  return PotentialSpec(V0_, k_, Radians{alpha_}, a);
}

GeneralPhaseSpec::GeneralPhaseSpec(double V0, double k, std::array<double, 4> phases)
    : V0_(V0), k_(k), A_{} {
  require_finite(V0, "V0");
  require_finite(k, "k");
  if (V0 <= 0.0) throw InvalidArgument("V0 must be positive");
  if (k <= 0.0) throw InvalidArgument("k must be positive");
  for (std::size_t j = 0; j < 4; ++j) {
    require_finite(phases[j], "phase");
    A_[j] = reduce_phase(phases[j]);
  }
}

GeneralPhaseSpec GeneralPhaseSpec::eightfold(double V0, double k, Vec2 a) {
  GeneralPhaseSpec base(V0, k, {0.0, 0.0, 0.0, 0.0});
  return GeneralPhaseSpec(V0, k, {0.0, dot(base.wavevector(1), a), 0.0, dot(base.wavevector(3), a)});
}

Vec2 GeneralPhaseSpec::wavevector(int j) const {
  const double t = j * std::numbers::pi / 4.0;
  return {k_ * std::cos(t), k_ * std::sin(t)};
}

GeneralPhaseSpec GeneralPhaseSpec::phase_flipped() const {
  std::array<double, 4> p = A_;
  for (double& v : p) v += std::numbers::pi;
  return GeneralPhaseSpec(V0_, k_, p);
}

Vec2 rotate(Vec2 p, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

Vec2 rotate_about(Vec2 center, Vec2 p, double theta) { return center + rotate(p - center, theta); }

double eval_V1(Vec2 r, double V0, double k) { return V0 * (std::cos(k * r.x) + std::cos(k * r.y)); }

double eval_V(Vec2 r, const PotentialSpec& spec) {
  const Vec2 q = rotate(r - spec.a(), -spec.alpha());
  return eval_V1(r, spec.V0(), spec.k()) + eval_V1(q, spec.V0(), spec.k());
}

double eval_V_general(Vec2 r, const GeneralPhaseSpec& spec) {
  double sum = 0.0;
  for (int j = 0; j < 4; ++j) sum += std::cos(dot(spec.wavevector(j), r) - spec.phases()[j]);
  return spec.V0() * sum;
}

Vec2 grad_r_V(Vec2 r, const PotentialSpec& spec) {
  const double k = spec.k();
  const double V0 = spec.V0();
  const Vec2 q = rotate(r - spec.a(), -spec.alpha());
  const Vec2 g1{-V0 * k * std::sin(k * r.x), -V0 * k * std::sin(k * r.y)};
  const Vec2 g2{-V0 * k * std::sin(k * q.x), -V0 * k * std::sin(k * q.y)};
  return g1 + rotate(g2, spec.alpha());
}

Vec2 grad_a_V(Vec2 r, const PotentialSpec& spec) {
  const double k = spec.k();
  const double V0 = spec.V0();
  const Vec2 q = rotate(r - spec.a(), -spec.alpha());
  const Vec2 g2{-V0 * k * std::sin(k * q.x), -V0 * k * std::sin(k * q.y)};
  return -rotate(g2, spec.alpha());
}

Sym2 hessian_r_V(Vec2 r, const PotentialSpec& spec) {
  const double k = spec.k();
  const double V0 = spec.V0();
  const double c = std::cos(spec.alpha());
  const double s = std::sin(spec.alpha());
  const Vec2 q = rotate(r - spec.a(), -spec.alpha());
  const double h1 = -V0 * k * k * std::cos(k * q.x);
  const double h2 = -V0 * k * k * std::cos(k * q.y);
  // R diag(h1, h2) R^T with R the rotation by alpha.
  Sym2 H;
  H.xx = -V0 * k * k * std::cos(k * r.x) + c * c * h1 + s * s * h2;
  H.yy = -V0 * k * k * std::cos(k * r.y) + s * s * h1 + c * c * h2;
  H.xy = c * s * (h1 - h2);
  return H;
}

std::array<PlaneWave, 4> plane_waves(const PotentialSpec& spec) {
  const double k = spec.k();
  const Vec2 u1{std::cos(spec.alpha()), std::sin(spec.alpha())};
  const Vec2 u2 = perp(u1);
  const Vec2 g3 = k * u1;
  const Vec2 g4 = k * u2;
  return {PlaneWave{{k, 0.0}, 0.0, spec.V0()}, PlaneWave{{0.0, k}, 0.0, spec.V0()},
          PlaneWave{g3, dot(g3, spec.a()), spec.V0()}, PlaneWave{g4, dot(g4, spec.a()), spec.V0()}};
}

std::array<PlaneWave, 4> plane_waves(const GeneralPhaseSpec& spec) {
  std::array<PlaneWave, 4> w;
  for (int j = 0; j < 4; ++j) w[j] = PlaneWave{spec.wavevector(j), spec.phases()[j], spec.V0()};
  return w;
}

double eval_waves(Vec2 r, const std::vector<PlaneWave>& waves) {
  double sum = 0.0;
  for (const PlaneWave& w : waves) sum += w.amplitude * std::cos(dot(w.g, r) - w.phase);
  return sum;
}

Vec2 grad_waves(Vec2 r, const std::vector<PlaneWave>& waves) {
  Vec2 g;
  for (const PlaneWave& w : waves) g -= (w.amplitude * std::sin(dot(w.g, r) - w.phase)) * w.g;
  return g;
}

Sym2 hessian_waves(Vec2 r, const std::vector<PlaneWave>& waves) {
  Sym2 H;
  for (const PlaneWave& w : waves) {
    const double c = -w.amplitude * std::cos(dot(w.g, r) - w.phase);
    H.xx += c * w.g.x * w.g.x;
    H.xy += c * w.g.x * w.g.y;
    H.yy += c * w.g.y * w.g.y;
  }
  return H;
}

}  // namespace quasilevel
