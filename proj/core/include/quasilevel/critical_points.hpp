#pragma once

#include <functional>
#include <map>
#include <vector>

#include "quasilevel/grid_field.hpp"
#include "quasilevel/magic_angles.hpp"
#include "quasilevel/potential.hpp"

namespace quasilevel {

/// A smooth field with analytic derivatives on a periodic domain.
struct FieldModel {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
  std::function<Sym2(Vec2)> hessian;
  double V0 = 1.0;
  double k = 1.0;
  /// Upper bound on the third directional derivative (Lipschitz constant of the Hessian).
  double hessian_lipschitz = 4.0;

  double T() const;
};

FieldModel field_model(const PotentialSpec& spec);
FieldModel field_model(std::vector<PlaneWave> waves, double V0, double k);

enum class CriticalType { min, max, saddle, degenerate };

const char* to_string(CriticalType t);

struct CriticalPoint {
  Vec2 position;
  CriticalType type = CriticalType::degenerate;
  double value = 0.0;
  double hessian_det = 0.0;
  double hessian_trace = 0.0;
  Vec2 rising;
  Vec2 falling;
  /// |grad| at each Newton iterate, ending with the converged residual.
  std::vector<double> residuals;
};

struct CriticalSearchOptions {
  /// Seed grid spacing; 0 selects T/64.
  double seed_spacing = 0.0;
  /// Newton stops once |grad| <= tolerance * k * V0.
  double tolerance = 1e-10;
  int max_iterations = 100;
  /// Duplicates closer than merge_radius * T are merged.
  double merge_radius = 1e-6;
  /// |det H| below degenerate_det * (k^2 V0)^2 is degenerate.
  double degenerate_det = 1e-8;
  unsigned workers = 1;
};

/// All critical points in the fundamental cell {origin + s b1 + t b2 : s, t in [0, 1)}.
/// Seed whose Newton iteration settled on a nonzero local minimum of |grad| (no critical point).
struct GradientMinimum {
  Vec2 seed;
  Vec2 position;
  double gradient_norm = 0.0;
};

struct CriticalSearch {
  std::vector<CriticalPoint> points;
  std::vector<GradientMinimum> gradient_minima;
};

/// Critical points of `model` in the cell origin + [0,1)b1 + [0,1)b2, with rejected seeds. Throws NewtonStall.
CriticalSearch search_critical_points(const FieldModel& model, Vec2 b1, Vec2 b2, Vec2 origin = {},
                                      const CriticalSearchOptions& options = {});

std::vector<CriticalPoint> find_critical_points(const FieldModel& model, Vec2 b1, Vec2 b2, Vec2 origin = {},
                                                const CriticalSearchOptions& options = {});

/// Critical points of V(r, angle, a_sym); a_sym must be a symmetric shift.
std::vector<CriticalPoint> find_critical_points(const MagicAngle& angle, Vec2 a_sym, double seed_spacing = 0.0,
                                                double V0 = 1.0);

/// Critical points of V(r, angle, a) for any shift.
std::vector<CriticalPoint> find_critical_points_any_shift(const MagicAngle& angle, Vec2 a,
                                                          double seed_spacing = 0.0, double V0 = 1.0);

/// Newton refinement from one seed. Throws NewtonStall, also when the seed settles on a gradient minimum.
CriticalPoint refine_critical_point(const FieldModel& model, Vec2 seed, const CriticalSearchOptions& options = {});

/// #min + #max - #saddle
int euler_count(const std::vector<CriticalPoint>& points);

std::vector<SaddleHint> saddle_hints(const std::vector<CriticalPoint>& points);

/// Count of critical points per critical value, values rounded to resolution * V0.
std::map<double, int> critical_value_histogram(const std::vector<CriticalPoint>& points, double V0,
                                               double resolution = 1e-8);

}  // namespace quasilevel
