#pragma once

#include <map>
#include <vector>

#include "quasilevel/critical_points.hpp"
#include "quasilevel/grid_field.hpp"
#include "quasilevel/labeling.hpp"
#include "quasilevel/magic_angles.hpp"

namespace quasilevel {

/// A bounded region of {V > 0} or {V < 0} enclosed by the singular net.
struct NetCell {
  int cell_id = 0;
  LevelSign sign = LevelSign::below;
  std::vector<std::uint32_t> cells;
  std::vector<LatticeOffset> offsets;
  double diameter = 0.0;
  /// Indices into SingularNet::critical_points.
  std::vector<std::size_t> boundary_saddles;
  /// Symmetry centre enclosed by the cell (principal cells only; centroid for islands).
  Vec2 center;
  LatticeOffset wrap_vector{0, 0};
};

struct SingularNet {
  MagicAngle angle;
  Vec2 a_sym;
  double spacing = 0.0;
  GridField field;
  std::vector<CriticalPoint> critical_points;
  /// Faces of the net that are fourfold symmetric about an enclosed symmetry centre.
  std::vector<NetCell> cells;
  /// Faces of the net without fourfold symmetry (only in non-generic nets).
  std::vector<NetCell> asymmetric_faces;
  /// Closed zero-level islands nested inside the cells.
  std::vector<NetCell> islands;
  int zero_level_saddles = 0;
  /// More than two inequivalent saddles sit on the net.
  bool non_generic = false;
};

/// Fraction of member nodes whose 90 degree image about `center` is not within one node of a member.
double fourfold_mismatch(const NetCell& cell, const GridField& field, Vec2 center);

/// Net at level 0 of V(r, angle, a_sym) sampled at `spacing`. Throws NotSymmetricShift, NonGenericNet.
SingularNet extract_singular_net(const MagicAngle& angle, Vec2 a_sym, double spacing, double V0 = 1.0);
std::vector<NetCell> extract_net_cells(const MagicAngle& angle, Vec2 a_sym, double spacing, double V0 = 1.0);

/// Count of critical points per critical value (rounded to 1e-8 V0).
std::map<double, int> saddle_level_histogram(const MagicAngle& angle, Vec2 a_sym, double V0 = 1.0);

}  // namespace quasilevel
