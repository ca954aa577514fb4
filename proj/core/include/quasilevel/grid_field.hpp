#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "quasilevel/magic_angles.hpp"
#include "quasilevel/potential.hpp"
#include "quasilevel/vec2.hpp"

namespace quasilevel {

enum class BoundaryMode { open_window, periodic_cell };

/// Local quadratic model of a saddle used to resolve connectivity within a few grid cells of it.
struct SaddleHint {
  Vec2 position;
  double value = 0.0;
  Vec2 rising;   // unit eigenvector of the positive Hessian eigenvalue
  Vec2 falling;  // unit eigenvector of the negative Hessian eigenvalue
};

/// Samples at cell centres: node (i, j) sits at origin + (i + 1/2) h axis_u + (j + 1/2) h axis_v.
struct GridField {
  Vec2 origin;
  double spacing = 0.0;
  Vec2 axis_u{1.0, 0.0};
  Vec2 axis_v{0.0, 1.0};
  int nx = 0;
  int ny = 0;
  std::vector<double> values;
  BoundaryMode mode = BoundaryMode::open_window;
  std::array<Vec2, 2> lattice_basis{};
  double period_T = 0.0;
  double V0 = 1.0;
  std::vector<SaddleHint> saddle_hints;

  std::size_t size() const { return values.size(); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  double at(int i, int j) const { return values[index(i, j)]; }
  Vec2 position(double i, double j) const {
    return origin + ((i + 0.5) * spacing) * axis_u + ((j + 0.5) * spacing) * axis_v;
  }
  bool periodic() const { return mode == BoundaryMode::periodic_cell; }
};

/// The fundamental square cell spanned by the minimal basis, cornered at origin.
Window periodic_cell_window(const MagicAngle& angle, Vec2 origin = {});

/// Rejects spacing coarser than T/16.
void check_spacing(double spacing, double T);

GridField sample_grid(const PotentialSpec& spec, const Window& window, double spacing, BoundaryMode mode,
                      unsigned workers = 0);

/// Periodic cell for a magic-angle spec; spacing is refined so that the cell holds an integer node count.
GridField sample_periodic_cell(const PotentialSpec& spec, double target_spacing, Vec2 origin = {},
                               unsigned workers = 0);

/// The magic angle matching spec.alpha(); NotPeriodic otherwise.
MagicAngle magic_angle_of(const PotentialSpec& spec);

}  // namespace quasilevel
