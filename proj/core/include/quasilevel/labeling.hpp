#pragma once

#include <cstdint>
#include <vector>

#include "quasilevel/convex_hull.hpp"
#include "quasilevel/grid_field.hpp"
#include "quasilevel/union_find.hpp"

namespace quasilevel {

/// below: V < epsilon, above: V > epsilon
enum class LevelSign { below, above };

const char* to_string(LevelSign s);

inline bool in_set(double v, double epsilon, LevelSign s) {
  return s == LevelSign::above ? v > epsilon : v < epsilon;
}

struct LevelComponent {
  int label = 0;
  LevelSign sign = LevelSign::below;
  std::vector<std::uint32_t> cells;
  /// Periodic mode: lattice copy of each cell in the unrolled component.
  std::vector<LatticeOffset> offsets;
  double diameter = 0.0;
  bool touches_boundary = false;
  LatticeOffset wrap_vector{0, 0};
  int wrap_rank = 0;

  std::size_t n_cells() const { return cells.size(); }
  bool wraps() const { return wrap_rank > 0; }
};

struct Labeling {
  /// Component label per node, -1 outside the set.
  std::vector<std::int32_t> labels;
  std::vector<LevelComponent> components;
};

struct LabelOptions {
  /// Saddle hints act when |value - epsilon| <= hint_band * V0.
  double hint_band = 0.1;
  /// Radius of a hint's neighbourhood, in grid spacings.
  double hint_radius = 2.0;
  /// Levels within tie * V0 of a saddle value are treated as exactly singular.
  double tie = 1e-9;
};

Labeling label_grid(const GridField& field, double epsilon, LevelSign sign, const LabelOptions& options = {});
std::vector<LevelComponent> label_components(const GridField& field, double epsilon, LevelSign sign,
                                             const LabelOptions& options = {});

/// Member nodes in integer grid coordinates of the universal cover.
std::vector<IPoint> unrolled_points(const LevelComponent& c, const GridField& field);
/// Max pairwise distance of member cell centres; +inf for wrapping components.
double component_diameter(const LevelComponent& c, const GridField& field);

/// True when some saddle hint sits at exactly this level.
bool singular_level(const GridField& field, double epsilon, const LabelOptions& options = {});

}  // namespace quasilevel
