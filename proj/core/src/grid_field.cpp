#include "quasilevel/grid_field.hpp"

#include <cmath>
#include <string>

#include "quasilevel/errors.hpp"
#include "quasilevel/parallel.hpp"

namespace quasilevel {

namespace {

void fill_values(GridField& f, const PotentialSpec& spec, unsigned workers) {
  f.values.assign(static_cast<std::size_t>(f.nx) * f.ny, 0.0);
  const std::size_t band = 64;
  const std::size_t bands = (static_cast<std::size_t>(f.ny) + band - 1) / band;
  parallel_for(bands, workers, [&](std::size_t b) {
    const int j0 = static_cast<int>(b * band);
    const int j1 = std::min(f.ny, static_cast<int>((b + 1) * band));
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < f.nx; ++i) f.values[f.index(i, j)] = eval_V(f.position(i, j), spec);
    }
  });
}

}  // namespace

Window periodic_cell_window(const MagicAngle& angle, Vec2 origin) {
  return Window{origin, angle.Tnm, angle.Tnm, angle.b1 / norm(angle.b1)};
}

void check_spacing(double spacing, double T) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidArgument("spacing must be positive");
  if (spacing > T / 16.0 * (1.0 + 1e-12)) {
    throw ResolutionTooCoarse("spacing " + std::to_string(spacing) + " exceeds the T/16 floor " +
                              std::to_string(T / 16.0));
  }
}

MagicAngle magic_angle_of(const PotentialSpec& spec) {
  const auto pair = magic_pair_of(spec.alpha());
  if (!pair) {
    throw NotPeriodic("alpha = " + std::to_string(to_degrees(Radians{spec.alpha()}).value) +
                      " deg is not a magic angle");
  }
  return make_magic_angle(pair->first, pair->second, spec.k());
}

GridField sample_grid(const PotentialSpec& spec, const Window& window, double spacing, BoundaryMode mode,
                      unsigned workers) {
  check_spacing(spacing, spec.T());
  if (mode == BoundaryMode::periodic_cell) {
    const MagicAngle angle = magic_angle_of(spec);
    const Window cell = periodic_cell_window(angle, window.origin);
    const double tol = 1e-9 * spec.T();
    if (std::abs(window.width - cell.width) > tol || std::abs(window.height - cell.height) > tol ||
        norm(window.axis - cell.axis) > 1e-9) {
      throw InvalidArgument("periodic mode requires the window to be the fundamental cell");
    }
    return sample_periodic_cell(spec, spacing, window.origin, workers);
  }
  if (!(window.width > 0.0) || !(window.height > 0.0)) throw InvalidArgument("window must have positive extent");
  GridField f;
  f.origin = window.origin;
  f.spacing = spacing;
  f.axis_u = window.axis / norm(window.axis);
  f.axis_v = perp(f.axis_u);
  f.nx = static_cast<int>(std::ceil(window.width / spacing - 1e-9));
  f.ny = static_cast<int>(std::ceil(window.height / spacing - 1e-9));
  f.mode = BoundaryMode::open_window;
  f.period_T = spec.T();
  f.V0 = spec.V0();
  fill_values(f, spec, workers);
  return f;
}

GridField sample_periodic_cell(const PotentialSpec& spec, double target_spacing, Vec2 origin, unsigned workers) {
  check_spacing(target_spacing, spec.T());
  const MagicAngle angle = magic_angle_of(spec);
  const int N = static_cast<int>(std::ceil(angle.Tnm / target_spacing - 1e-9));
  GridField f;
  f.origin = origin;
  f.spacing = angle.Tnm / N;
  f.axis_u = angle.b1 / norm(angle.b1);
  f.axis_v = perp(f.axis_u);
  f.nx = N;
  f.ny = N;
  f.mode = BoundaryMode::periodic_cell;
  f.lattice_basis = {angle.b1, angle.b2};
  f.period_T = spec.T();
  f.V0 = spec.V0();
  fill_values(f, spec, workers);
  return f;
}

}  // namespace quasilevel
