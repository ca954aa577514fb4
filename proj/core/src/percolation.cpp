#include "quasilevel/percolation.hpp"

#include <cmath>
#include <string>

#include "quasilevel/critical_points.hpp"
#include "quasilevel/errors.hpp"

namespace quasilevel {

namespace {

int count_wrapping(const GridField& f, double eps, LevelSign sign, const LabelOptions& opt) {
  int n = 0;
  for (const LevelComponent& c : label_components(f, eps, sign, opt)) n += c.wraps() ? 1 : 0;
  return n;
}

PercolationClass classify_or_throw(const GridField& f, double eps, const LabelOptions& opt) {
  const PercolationClass c = percolation_class(f, eps, opt);
  if (c == PercolationClass::ambiguous) {
    throw AmbiguousClassification("grid cannot separate percolation regimes at epsilon = " + std::to_string(eps) +
                                  "; refine the resolution");
  }
  return c;
}

}  // namespace

const char* to_string(PercolationClass c) {
  switch (c) {
    case PercolationClass::A_minus:
      return "A_minus";
    case PercolationClass::A_plus:
      return "A_plus";
    case PercolationClass::open_lines:
      return "open_lines";
    case PercolationClass::ambiguous:
      return "ambiguous";
  }
  return "ambiguous";
}

PercolationInfo percolation_info(const GridField& f, double eps, const LabelOptions& opt) {
  if (!f.periodic()) throw InvalidArgument("percolation classification requires a periodic cell");
  PercolationInfo info;
  info.wrapping_above = count_wrapping(f, eps, LevelSign::above, opt);
  info.wrapping_below = count_wrapping(f, eps, LevelSign::below, opt);
  info.singular = singular_level(f, eps, opt);
  const bool above = info.wrapping_above > 0;
  const bool below = info.wrapping_below > 0;
  if (above && below) {
    info.cls = PercolationClass::open_lines;
  } else if (above) {
    info.cls = PercolationClass::A_minus;
  } else if (below) {
    info.cls = PercolationClass::A_plus;
  } else {
    info.cls = info.singular ? PercolationClass::open_lines : PercolationClass::ambiguous;
  }
  return info;
}

PercolationClass percolation_class(const GridField& f, double eps, const LabelOptions& opt) {
  return percolation_info(f, eps, opt).cls;
}

GridField sample_cell_with_hints(const MagicAngle& angle, Vec2 a, double spacing, double V0) {
  const PotentialSpec spec(V0, angle.k, Radians{angle.angle}, a);
  GridField f = sample_periodic_cell(spec, spacing);
  f.saddle_hints = saddle_hints(find_critical_points_any_shift(angle, a, 0.0, V0));
  return f;
}

ThresholdEstimate estimate_epsilon_nm(std::int64_t n, std::int64_t m, Vec2 a, double tol,
                                      const ThresholdOptions& opt) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  const MagicAngle angle = make_magic_angle(n, m, opt.k);
  const GridField f = sample_cell_with_hints(angle, a, opt.resolution * angle.T(), opt.V0);
  const double top = 4.0 * opt.V0;

  ThresholdEstimate est;
  // Positive side: A_plus above the threshold, not A_plus at and below it.
  double lo = 0.0, hi = top;
  if (classify_or_throw(f, hi, opt.label) != PercolationClass::A_plus) {
    throw AmbiguousClassification("no A_plus regime below 4 V0");
  }
  if (classify_or_throw(f, lo, opt.label) == PercolationClass::A_plus) {
    hi = lo;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (classify_or_throw(f, mid, opt.label) == PercolationClass::A_plus) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  est.positive = {lo, hi};
  // Negative side, bisected independently.
  lo = -top;
  hi = 0.0;
  if (classify_or_throw(f, lo, opt.label) != PercolationClass::A_minus) {
    throw AmbiguousClassification("no A_minus regime above -4 V0");
  }
  if (classify_or_throw(f, hi, opt.label) == PercolationClass::A_minus) {
    lo = hi;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (classify_or_throw(f, mid, opt.label) == PercolationClass::A_minus) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  est.negative = {lo, hi};
  est.sides_agree = std::abs(est.positive.mid() + est.negative.mid()) <= tol;
  return est;
}

}  // namespace quasilevel
