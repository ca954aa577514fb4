#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "quasilevel/vec2.hpp"

namespace quasilevel {

struct Radians {
  double value;
};

struct Degrees {
  double value;
};

constexpr Radians to_radians(Degrees d) { return {d.value * std::numbers::pi / 180.0}; }
constexpr Degrees to_degrees(Radians r) { return {r.value * 180.0 / std::numbers::pi}; }

/// Symmetric 2x2 matrix.
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }
};

/// V(r, alpha, a) = V1(r) + V1(R_{-alpha}(r - a)), V1(r) = V0 (cos kx + cos ky).
class PotentialSpec {
 public:
  PotentialSpec(double V0, double k, Radians alpha, Vec2 a = {});
  PotentialSpec(double V0, double k, Degrees alpha, Vec2 a = {});

  double V0() const { return V0_; }
  double k() const { return k_; }
  double alpha() const { return alpha_; }
  Vec2 a() const { return a_; }
  double T() const { return 2.0 * std::numbers::pi / k_; }

  PotentialSpec with_shift(Vec2 a) const;

 private:
  double V0_;
  double k_;
  double alpha_;
  Vec2 a_;
};

/// V(r) = V0 sum_j cos(G_j . r - A_j), G_j = k (cos t_j, sin t_j), t_j = 0, 45, 90, 135 degrees.
class GeneralPhaseSpec {
 public:
  GeneralPhaseSpec(double V0, double k, std::array<double, 4> phases);

  /// Phases reproducing V(r, 45deg, a).
  static GeneralPhaseSpec eightfold(double V0, double k, Vec2 a);

  double V0() const { return V0_; }
  double k() const { return k_; }
  const std::array<double, 4>& phases() const { return A_; }
  Vec2 wavevector(int j) const;

  GeneralPhaseSpec phase_flipped() const;

 private:
  double V0_;
  double k_;
  std::array<double, 4> A_;
};

/// amplitude * cos(g . r - phase)
struct PlaneWave {
  Vec2 g;
  double phase = 0.0;
  double amplitude = 1.0;
};

Vec2 rotate(Vec2 p, double theta);
Vec2 rotate_about(Vec2 center, Vec2 p, double theta);

double eval_V1(Vec2 r, double V0, double k);
double eval_V(Vec2 r, const PotentialSpec& spec);
double eval_V_general(Vec2 r, const GeneralPhaseSpec& spec);
Vec2 grad_r_V(Vec2 r, const PotentialSpec& spec);
Vec2 grad_a_V(Vec2 r, const PotentialSpec& spec);
Sym2 hessian_r_V(Vec2 r, const PotentialSpec& spec);

/// The four plane waves whose sum equals eval_V.
std::array<PlaneWave, 4> plane_waves(const PotentialSpec& spec);
std::array<PlaneWave, 4> plane_waves(const GeneralPhaseSpec& spec);

double eval_waves(Vec2 r, const std::vector<PlaneWave>& waves);
Vec2 grad_waves(Vec2 r, const std::vector<PlaneWave>& waves);
Sym2 hessian_waves(Vec2 r, const std::vector<PlaneWave>& waves);

}  // namespace quasilevel
