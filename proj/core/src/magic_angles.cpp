#include "quasilevel/magic_angles.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include "quasilevel/errors.hpp"
#include "quasilevel/potential.hpp"

namespace quasilevel {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

using cplx = std::complex<double>;

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  bool zero() const { return re == 0 && im == 0; }
  std::int64_t norm() const { return re * re + im * im; }
};

std::int64_t round_div(std::int64_t num, std::int64_t den) {
  return static_cast<std::int64_t>(std::llround(static_cast<long double>(num) / den));
}

/// Quotient rounded to the nearest Gaussian integer.
GaussInt gauss_div(GaussInt a, GaussInt b) {
  const GaussInt conj{b.re, -b.im};
  const GaussInt num = a * conj;
  const std::int64_t den = b.norm();
  return {round_div(num.re, den), round_div(num.im, den)};
}

/// x a + y b = g with g a greatest common divisor.
void gauss_ext_gcd(GaussInt a, GaussInt b, GaussInt& g, GaussInt& x, GaussInt& y) {
  GaussInt r0 = a, r1 = b;
  GaussInt x0{1, 0}, x1{0, 0};
  GaussInt y0{0, 0}, y1{1, 0};
  while (!r1.zero()) {
    const GaussInt q = gauss_div(r0, r1);
    const GaussInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    const GaussInt x2 = x0 - q * x1;
    x0 = x1;
    x1 = x2;
    const GaussInt y2 = y0 - q * y1;
    y0 = y1;
    y1 = y2;
  }
  g = r0;
  x = x0;
  y = y0;
}

cplx to_c(Vec2 v) { return {v.x, v.y}; }
Vec2 to_v(cplx c) { return {c.real(), c.imag()}; }

/// Generator w of the symmetric-shift lattice T w Z[i].
cplx shift_generator(const MagicAngle& a) {
  const cplx one_i(1.0, 1.0);
  const cplx g = a.both_odd() ? one_i : cplx(1.0, 0.0);
  return one_i * g / (2.0 * cplx(static_cast<double>(a.n), -static_cast<double>(a.m)));
}

}  // namespace

double MagicAngle::T() const { return 2.0 * std::numbers::pi / k; }

Window Window::centered(Vec2 center, double edge) {
  return Window{center - Vec2{edge / 2.0, edge / 2.0}, edge, edge, {1.0, 0.0}};
}

bool Window::contains(Vec2 p, double slack) const {
  const Vec2 d = p - origin;
  const double u = dot(d, axis);
  const double v = dot(d, perp(axis));
  return u >= -slack && u <= width + slack && v >= -slack && v <= height + slack;
}

std::vector<Convergent> convergents_sqrt2_minus_1(int s_max) {
  if (s_max < 1) throw InvalidArgument("s_max must be at least 1");
  std::vector<Convergent> out;
  out.reserve(static_cast<std::size_t>(s_max));
  std::int64_t m = 1, n = 2;
  out.push_back({1, m, n});
  for (int s = 2; s <= s_max; ++s) {
    std::int64_t twice_n = 0, next_n = 0;
    if (__builtin_mul_overflow(n, std::int64_t{2}, &twice_n) ||
        __builtin_add_overflow(twice_n, m, &next_n)) {
      throw IntegerOverflow("convergent s = " + std::to_string(s) + " exceeds 64-bit integers");
    }
    m = n;
    n = next_n;
    out.push_back({s, m, n});
  }
  return out;
}

std::pair<double, double> convergent_closed_form(int s) {
  if (s < 1) throw InvalidArgument("s must be at least 1");
  const double lo = kSqrt2 - 1.0;
  const double hi = kSqrt2 + 1.0;
  const double sign_m = (s % 2 == 1) ? 1.0 : -1.0;
  const double m = (sign_m * std::pow(lo, s) + std::pow(hi, s)) / (2.0 * kSqrt2);
  const double n = (-sign_m * std::pow(lo, s + 1) + std::pow(hi, s + 1)) / (2.0 * kSqrt2);
  return {m, n};
}

MagicAngle make_magic_angle(std::int64_t n, std::int64_t m, double k) {
  if (!(m > 0 && m < n) || std::gcd(m, n) != 1) {
    throw InvalidPair("(n, m) = (" + std::to_string(n) + ", " + std::to_string(m) +
                      ") must satisfy 0 < m < n and gcd(m, n) = 1");
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("k must be positive");
  if (n > 1000000000) throw IntegerOverflow("magic pair too large for exact lattice arithmetic");
  MagicAngle a;
  a.n = n;
  a.m = m;
  a.k = k;
  a.angle = 2.0 * std::atan2(static_cast<double>(m), static_cast<double>(n));
  const double T = a.T();
  const Vec2 b1{T * m, -T * n};
  const Vec2 b2{T * n, T * m};
  if (a.both_odd()) {
    a.m0 = (m + n) / 2;
    a.n0 = (n - m) / 2;
    a.b1 = 0.5 * (b1 + b2);
    a.b2 = 0.5 * (b2 - b1);
  } else {
    a.m0 = m;
    a.n0 = n;
    a.b1 = b1;
    a.b2 = b2;
  }
  a.Tnm = T * std::sqrt(static_cast<double>(a.q0()));
  return a;
}

std::optional<std::pair<std::int64_t, std::int64_t>> magic_pair_of(double alpha, double tol,
                                                                   std::int64_t max_denominator) {
  if (!(alpha > 0.0) || !(alpha < std::numbers::pi / 2.0)) return std::nullopt;
  const double t = std::tan(alpha / 2.0);
  // Continued-fraction convergents of t.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = t;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    if (a > 1e12) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_denominator) break;
    if (p2 > 0 && p2 < q2 && std::abs(2.0 * std::atan2(static_cast<double>(p2), static_cast<double>(q2)) - alpha) <= tol) {
      return std::make_pair(q2, p2);
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

double angle_gap(double alpha, std::int64_t n, std::int64_t m) {
  const MagicAngle a = make_magic_angle(n, m);
  if (!(alpha > 0.0) || !(alpha < std::numbers::pi / 2.0)) throw InvalidArgument("alpha must lie in (0, 90) degrees");
  return std::abs(alpha - a.angle);
}

double angle_gap_delta(double alpha, std::int64_t n, std::int64_t m) {
  make_magic_angle(n, m);
  return std::abs(std::tan(alpha / 2.0) - static_cast<double>(m) / static_cast<double>(n));
}

double angle_gap_estimate(double alpha, std::int64_t n, std::int64_t m) {
  return angle_gap_delta(alpha, n, m) * (1.0 + std::cos(alpha));
}

double angle_gap_asymptote(int s) {
  const double sign = (s % 2 == 1) ? 1.0 : -1.0;
  return sign * 2.0 * std::pow(kSqrt2 - 1.0, 2 * s + 1);
}

double T_s(int s, double k) {
  const Convergent c = convergents_sqrt2_minus_1(s).back();
  const double mm = static_cast<double>(c.m);
  const double nn = static_cast<double>(c.n);
  return (2.0 * std::numbers::pi / k) * std::sqrt(mm * mm + nn * nn);
}

double epsilon_s(int s, double V0, double k) {
  const Convergent c = convergents_sqrt2_minus_1(s).back();
  const double T = 2.0 * std::numbers::pi / k;
  const double mm = static_cast<double>(c.m);
  const double nn = static_cast<double>(c.n);
  const double gap = std::abs(2.0 * std::atan2(mm, nn) - std::numbers::pi / 4.0);
  const double Ts = T * std::sqrt(mm * mm + nn * nn);
  return kSqrt2 * k * V0 * gap * kSqrt2 * Ts + kSqrt2 * k * V0 * T / (2.0 * std::sqrt(2.0 * (mm * mm + nn * nn)));
}

double epsilon_s_asymptotic(int s, double V0) {
  return std::numbers::pi * V0 * (std::pow(2.0, 2.25) + std::pow(2.0, 0.75)) * std::pow(kSqrt2 - 1.0, s + 0.5);
}

double diameter_bound(double epsilon, double V0, double k) {
  if (epsilon == 0.0) throw ZeroEpsilon();
  const double T = 2.0 * std::numbers::pi / k;
  return std::numbers::pi * V0 * T * (4.0 + kSqrt2) * (kSqrt2 + 1.0) / std::abs(epsilon);
}

double epsilon_nm_bound(std::int64_t n, std::int64_t m, double V0) {
  const MagicAngle a = make_magic_angle(n, m);
  return std::numbers::pi * V0 / std::sqrt(static_cast<double>(a.q0()));
}

double symmetric_shift_step(const MagicAngle& angle) {
  return angle.T() / std::sqrt(2.0 * static_cast<double>(angle.q0()));
}

double symmetric_shift_covering_radius(const MagicAngle& angle) {
  return angle.T() / (2.0 * std::sqrt(static_cast<double>(angle.q0())));
}

double symmetric_shift_quoted_radius(const MagicAngle& angle) {
  return angle.T() / (2.0 * std::sqrt(2.0 * static_cast<double>(angle.q0())));
}

Vec2 symmetric_shift_from_index(const MagicAngle& angle, std::int64_t p, std::int64_t q, std::int64_t i,
                                std::int64_t j) {
  const double T = angle.T();
  const Vec2 c1{T * static_cast<double>(p - q) / 2.0, T * static_cast<double>(p + q) / 2.0};
  const Vec2 c2{T * static_cast<double>(i - j) / 2.0, T * static_cast<double>(i + j) / 2.0};
  return c1 + rotate(c2, angle.angle);
}

SymmetricShift nearest_symmetric_shift(Vec2 a, const MagicAngle& angle) {
  const cplx w = angle.T() * shift_generator(angle);
  const cplx c = to_c(a) / w;
  const cplx r(std::round(c.real()), std::round(c.imag()));
  const Vec2 a_sym = to_v(w * r);
  return {a_sym, norm(a - a_sym)};
}

Vec2 symmetry_center_of_shift(const MagicAngle& angle, Vec2 a_sym, double tol) {
  const SymmetricShift near = nearest_symmetric_shift(a_sym, angle);
  if (near.dist > tol * angle.T()) throw NotSymmetricShift(a_sym, near.dist);
  const cplx w = angle.T() * shift_generator(angle);
  const cplx c = to_c(near.a_sym) / w;
  const GaussInt target{std::llround(c.real()), std::llround(c.imag())};
  // a = T(1+i)/2 (u (n - im) + v (n + im)) / (n - im); the center is T(1+i)/2 u.
  const GaussInt lhs{angle.n, -angle.m};
  const GaussInt rhs{angle.n, angle.m};
  GaussInt g, x, y;
  gauss_ext_gcd(lhs, rhs, g, x, y);
  const GaussInt expected = angle.both_odd() ? GaussInt{1, 1} : GaussInt{1, 0};
  // Normalise g to the chosen generator by a unit.
  const GaussInt unit = gauss_div(expected, g);
  x = x * unit;
  const GaussInt u = x * target;
  const cplx center = angle.T() * cplx(1.0, 1.0) / 2.0 * cplx(static_cast<double>(u.re), static_cast<double>(u.im));
  return to_v(center);
}

std::pair<Vec2, Vec2> symmetry_center_basis(const MagicAngle& angle) {
  return {0.5 * (angle.b1 + angle.b2), 0.5 * (angle.b2 - angle.b1)};
}

std::vector<Vec2> symmetry_centers(const MagicAngle& angle, const Window& window, Vec2 a_sym) {
  const Vec2 c0 = symmetry_center_of_shift(angle, a_sym);
  const auto [e1, e2] = symmetry_center_basis(angle);
  const double step = norm(e1);
  const Vec2 corners[4] = {window.origin, window.origin + window.width * window.axis,
                           window.origin + window.height * perp(window.axis),
                           window.origin + window.width * window.axis + window.height * perp(window.axis)};
  const Vec2 u1 = e1 / step;
  const Vec2 u2 = e2 / step;
  double lo1 = INFINITY, hi1 = -INFINITY, lo2 = INFINITY, hi2 = -INFINITY;
  for (const Vec2& c : corners) {
    const double t1 = dot(c - c0, u1) / step;
    const double t2 = dot(c - c0, u2) / step;
    lo1 = std::min(lo1, t1);
    hi1 = std::max(hi1, t1);
    lo2 = std::min(lo2, t2);
    hi2 = std::max(hi2, t2);
  }
  std::vector<Vec2> out;
  const double slack = 1e-9 * angle.T();
  for (auto i = static_cast<std::int64_t>(std::floor(lo1)) - 1; i <= static_cast<std::int64_t>(std::ceil(hi1)) + 1; ++i) {
    for (auto j = static_cast<std::int64_t>(std::floor(lo2)) - 1; j <= static_cast<std::int64_t>(std::ceil(hi2)) + 1; ++j) {
      const Vec2 p = c0 + static_cast<double>(i) * e1 + static_cast<double>(j) * e2;
      if (window.contains(p, slack)) out.push_back(p);
    }
  }
  return out;
}

}  // namespace quasilevel
