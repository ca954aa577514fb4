#include "quasilevel/singular_net.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>
#include <string>

#include "quasilevel/errors.hpp"

namespace quasilevel {

namespace {

constexpr double kZeroLevel = 1e-8;

/// Symmetry centre nearest p modulo the period lattice, returned as the image nearest p.
Vec2 nearest_center(Vec2 p, const std::vector<Vec2>& centers, const MagicAngle& angle) {
  const double det = cross(angle.b1, angle.b2);
  Vec2 best{NAN, NAN};
  double best_r = INFINITY;
  for (const Vec2& c : centers) {
    const Vec2 d = p - c;
    const double s1 = std::round(cross(d, angle.b2) / det);
    const double s2 = std::round(cross(angle.b1, d) / det);
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        const Vec2 img = c + (s1 + di) * angle.b1 + (s2 + dj) * angle.b2;
        const double r = norm(p - img);
        if (r < best_r) {
          best_r = r;
          best = img;
        }
      }
    }
  }
  return best;
}

NetCell to_cell(const LevelComponent& c, const GridField& f, const std::vector<CriticalPoint>& cps,
                const std::vector<std::size_t>& net_saddles, double radius) {
  NetCell cell;
  cell.sign = c.sign;
  cell.cells = c.cells;
  cell.offsets = c.offsets;
  cell.wrap_vector = c.wrap_vector;
  if (c.wraps()) {
    cell.diameter = std::numeric_limits<double>::infinity();
    return cell;
  }
  std::vector<Vec2> pts;
  pts.reserve(c.cells.size());
  for (const IPoint& p : unrolled_points(c, f)) {
    pts.push_back({static_cast<double>(p.x) * f.spacing, static_cast<double>(p.y) * f.spacing});
  }
  // Saddles on the cell's rim close the region; add them in the unrolled frame.
  for (std::size_t s : net_saddles) {
    const Vec2 sp = cps[s].position;
    bool touches = false;
    Vec2 best_unrolled;
    double best_r = INFINITY;
    for (std::size_t k = 0; k < c.cells.size(); ++k) {
      const int i = static_cast<int>(c.cells[k] % f.nx);
      const int j = static_cast<int>(c.cells[k] / f.nx);
      // Nearest image of the saddle relative to this node.
      const Vec2 node = f.position(i, j);
      const Vec2 d = sp - node;
      double du = dot(d, f.axis_u);
      double dv = dot(d, f.axis_v);
      const double Lu = f.spacing * f.nx;
      const double Lv = f.spacing * f.ny;
      du -= std::round(du / Lu) * Lu;
      dv -= std::round(dv / Lv) * Lv;
      const double r = std::hypot(du, dv);
      if (r <= radius && r < best_r) {
        touches = true;
        best_r = r;
        const double ui = i + static_cast<double>(c.offsets[k][0]) * f.nx;
        const double vj = j + static_cast<double>(c.offsets[k][1]) * f.ny;
        best_unrolled = {ui * f.spacing + du, vj * f.spacing + dv};
      }
    }
    if (touches) {
      cell.boundary_saddles.push_back(s);
      pts.push_back(best_unrolled);
    }
  }
  Vec2 mean;
  for (const Vec2& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  cell.center = f.origin + (mean.x + 0.5 * f.spacing) * f.axis_u + (mean.y + 0.5 * f.spacing) * f.axis_v;
  cell.diameter = std::sqrt(diameter2(std::move(pts)));
  return cell;
}

constexpr double kSymmetryMismatch = 0.01;

std::uint64_t key(std::int64_t x, std::int64_t y) {
  return (static_cast<std::uint64_t>(x + (1 << 30)) << 32) | static_cast<std::uint64_t>(y + (1 << 30));
}

}  // namespace

double fourfold_mismatch(const NetCell& cell, const GridField& f, Vec2 center) {
  if (cell.cells.empty()) return 1.0;
  std::unordered_set<std::uint64_t> members;
  std::vector<Vec2> pos;
  members.reserve(cell.cells.size() * 2);
  pos.reserve(cell.cells.size());
  for (std::size_t k = 0; k < cell.cells.size(); ++k) {
    const std::int64_t i = cell.cells[k] % f.nx + static_cast<std::int64_t>(cell.offsets[k][0]) * f.nx;
    const std::int64_t j = cell.cells[k] / f.nx + static_cast<std::int64_t>(cell.offsets[k][1]) * f.ny;
    members.insert(key(i, j));
    pos.push_back(f.origin + (static_cast<double>(i) + 0.5) * f.spacing * f.axis_u +
                  (static_cast<double>(j) + 0.5) * f.spacing * f.axis_v);
  }
  std::size_t miss = 0;
  for (const Vec2& p : pos) {
    const Vec2 q = center + perp(p - center);
    const Vec2 d = q - f.origin;
    const auto i = static_cast<std::int64_t>(std::lround(dot(d, f.axis_u) / f.spacing - 0.5));
    const auto j = static_cast<std::int64_t>(std::lround(dot(d, f.axis_v) / f.spacing - 0.5));
    bool hit = false;
    for (int dj = -1; dj <= 1 && !hit; ++dj) {
      for (int di = -1; di <= 1 && !hit; ++di) hit = members.count(key(i + di, j + dj)) > 0;
    }
    if (!hit) ++miss;
  }
  return static_cast<double>(miss) / static_cast<double>(pos.size());
}

SingularNet extract_singular_net(const MagicAngle& angle, Vec2 a_sym, double spacing, double V0) {
  const SymmetricShift near = nearest_symmetric_shift(a_sym, angle);
  if (near.dist > 1e-9 * angle.T()) throw NotSymmetricShift(a_sym, near.dist);
  SingularNet net;
  net.angle = angle;
  net.a_sym = a_sym;
  net.critical_points = find_critical_points(angle, a_sym, 0.0, V0);
  for (const CriticalPoint& cp : net.critical_points) {
    if (cp.type == CriticalType::degenerate) {
      throw NonGenericNet("degenerate critical point at (" + std::to_string(cp.position.x) + ", " +
                          std::to_string(cp.position.y) + ")");
    }
  }
  const PotentialSpec spec(V0, angle.k, Radians{angle.angle}, a_sym);
  net.field = sample_periodic_cell(spec, spacing);
  net.field.saddle_hints = saddle_hints(net.critical_points);
  net.spacing = net.field.spacing;

  std::vector<std::size_t> net_saddles;
  for (std::size_t s = 0; s < net.critical_points.size(); ++s) {
    const CriticalPoint& cp = net.critical_points[s];
    if (cp.type == CriticalType::saddle && std::abs(cp.value) <= kZeroLevel * V0) net_saddles.push_back(s);
  }
  net.zero_level_saddles = static_cast<int>(net_saddles.size());
  net.non_generic = net.zero_level_saddles > 2;

  const LabelOptions opt;
  const double radius = opt.hint_radius * net.field.spacing;
  const Window cell_window = periodic_cell_window(angle);
  const std::vector<Vec2> centers = symmetry_centers(angle, cell_window, a_sym);
  int next_id = 0;
  for (LevelSign sign : {LevelSign::above, LevelSign::below}) {
    const Labeling lab = label_grid(net.field, 0.0, sign, opt);
    for (const LevelComponent& comp : lab.components) {
      NetCell cell = to_cell(comp, net.field, net.critical_points, net_saddles, radius);
      cell.cell_id = next_id++;
      if (!cell.boundary_saddles.empty()) {
        const Vec2 c = nearest_center(cell.center, centers, angle);
        if (!cell.wrap_vector[0] && !cell.wrap_vector[1] &&
            fourfold_mismatch(cell, net.field, c) <= kSymmetryMismatch) {
          cell.center = c;
          net.cells.push_back(std::move(cell));
        } else {
          net.asymmetric_faces.push_back(std::move(cell));
        }
      } else {
        net.islands.push_back(std::move(cell));
      }
    }
  }
  return net;
}

std::vector<NetCell> extract_net_cells(const MagicAngle& angle, Vec2 a_sym, double spacing, double V0) {
  return extract_singular_net(angle, a_sym, spacing, V0).cells;
}

std::map<double, int> saddle_level_histogram(const MagicAngle& angle, Vec2 a_sym, double V0) {
  return critical_value_histogram(find_critical_points(angle, a_sym, 0.0, V0), V0);
}

}  // namespace quasilevel
