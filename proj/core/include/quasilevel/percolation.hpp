#pragma once

#include "quasilevel/grid_field.hpp"
#include "quasilevel/labeling.hpp"

namespace quasilevel {

enum class PercolationClass { A_minus, A_plus, open_lines, ambiguous };

const char* to_string(PercolationClass c);

struct PercolationInfo {
  PercolationClass cls = PercolationClass::ambiguous;
  int wrapping_above = 0;
  int wrapping_below = 0;
  bool singular = false;
};

PercolationInfo percolation_info(const GridField& field, double epsilon, const LabelOptions& options = {});
PercolationClass percolation_class(const GridField& field, double epsilon, const LabelOptions& options = {});

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

struct ThresholdEstimate {
  /// Bracket of the upper threshold epsilon_nm(a) on the positive side.
  Interval positive;
  /// Bracket of the lower threshold -epsilon_nm(a) on the negative side.
  Interval negative;
  bool sides_agree = false;
};

struct ThresholdOptions {
  double V0 = 1.0;
  double k = 1.0;
  /// Grid spacing in units of T.
  double resolution = 1.0 / 64.0;
  LabelOptions label;
};

/// Periodic-cell field of V(r, angle, a) with saddle hints attached.
GridField sample_cell_with_hints(const MagicAngle& angle, Vec2 a, double spacing, double V0 = 1.0);

/// Two-sided bisection of the percolation thresholds of V(r, angle(n, m), a).
ThresholdEstimate estimate_epsilon_nm(std::int64_t n, std::int64_t m, Vec2 a, double tol,
                                      const ThresholdOptions& options = {});

}  // namespace quasilevel
