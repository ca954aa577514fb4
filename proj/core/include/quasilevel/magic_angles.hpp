#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "quasilevel/vec2.hpp"

namespace quasilevel {

/// Rational approximant m/n of sqrt(2) - 1.
struct Convergent {
  int s = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

/// Commensurate rotation angle 2 atan(m/n) and its period lattice.
struct MagicAngle {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t m0 = 0;
  std::int64_t n0 = 0;
  double angle = 0.0;
  double k = 1.0;
  Vec2 b1;
  Vec2 b2;
  double Tnm = 0.0;

  double T() const;
  bool both_odd() const { return (m % 2 != 0) && (n % 2 != 0); }
  /// m0^2 + n0^2
  std::int64_t q0() const { return m0 * m0 + n0 * n0; }
};

/// Oriented square region: origin is the corner, axis is the direction of the width edge.
struct Window {
  Vec2 origin;
  double width = 0.0;
  double height = 0.0;
  Vec2 axis{1.0, 0.0};

  static Window centered(Vec2 center, double edge);
  bool contains(Vec2 p, double slack = 0.0) const;
};

struct SymmetricShift {
  Vec2 a_sym;
  double dist = 0.0;
};

std::vector<Convergent> convergents_sqrt2_minus_1(int s_max);
std::pair<double, double> convergent_closed_form(int s);

MagicAngle make_magic_angle(std::int64_t n, std::int64_t m, double k = 1.0);

/// Coprime (n, m) with 2 atan(m/n) = alpha, searched up to max_denominator.
std::optional<std::pair<std::int64_t, std::int64_t>> magic_pair_of(double alpha, double tol = 1e-12,
                                                                   std::int64_t max_denominator = 1000000);

double angle_gap(double alpha, std::int64_t n, std::int64_t m);
/// delta = |tan(alpha/2) - m/n|
double angle_gap_delta(double alpha, std::int64_t n, std::int64_t m);
/// First-order estimate 2 delta / (1 + tan^2(alpha/2)) = delta (1 + cos alpha).
double angle_gap_estimate(double alpha, std::int64_t n, std::int64_t m);
/// (-1)^(s-1) 2 (sqrt2 - 1)^(2s+1), the signed asymptote of alpha_s - 45deg.
double angle_gap_asymptote(int s);

/// T sqrt(m^2 + n^2) for convergent s.
double T_s(int s, double k = 1.0);
double epsilon_s(int s, double V0, double k);
double epsilon_s_asymptotic(int s, double V0);

double diameter_bound(double epsilon, double V0, double k);
double epsilon_nm_bound(std::int64_t n, std::int64_t m, double V0);

/// Spacing of the lattice of fourfold-symmetric shifts: T / sqrt(2 q0).
double symmetric_shift_step(const MagicAngle& angle);
/// Largest distance from any shift to the symmetric-shift lattice: T / (2 sqrt q0).
double symmetric_shift_covering_radius(const MagicAngle& angle);
/// The tighter radius T / (2 sqrt(2 q0)) quoted in the literature.
double symmetric_shift_quoted_radius(const MagicAngle& angle);

Vec2 symmetric_shift_from_index(const MagicAngle& angle, std::int64_t p, std::int64_t q, std::int64_t i,
                                std::int64_t j);
SymmetricShift nearest_symmetric_shift(Vec2 a, const MagicAngle& angle);

/// A fourfold symmetry center of V(r, angle, a_sym). Throws NotSymmetricShift.
Vec2 symmetry_center_of_shift(const MagicAngle& angle, Vec2 a_sym, double tol = 1e-9);
/// Generators of the square lattice of symmetry centers (spacing Tnm / sqrt 2).
std::pair<Vec2, Vec2> symmetry_center_basis(const MagicAngle& angle);
std::vector<Vec2> symmetry_centers(const MagicAngle& angle, const Window& window, Vec2 a_sym = {});

}  // namespace quasilevel
