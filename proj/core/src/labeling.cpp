#include "quasilevel/labeling.hpp"

#include <cmath>
#include <limits>

#include "quasilevel/errors.hpp"

namespace quasilevel {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct HintCandidate {
  std::uint32_t node;
  int ii;
  int jj;
  double r;
  int lobe;
};

struct HintLayout {
  std::vector<std::int32_t> hint_of;
  std::vector<std::int8_t> lobe;
  std::vector<std::uint8_t> separated;
  std::vector<std::vector<HintCandidate>> candidates;
};

HintLayout layout_hints(const GridField& f, double eps, LevelSign sign, const LabelOptions& opt) {
  HintLayout L;
  if (f.saddle_hints.empty()) return L;
  L.hint_of.assign(f.size(), -1);
  L.lobe.assign(f.size(), 0);
  std::vector<double> claim(f.size(), std::numeric_limits<double>::infinity());
  const double R = opt.hint_radius * f.spacing;
  const double band = opt.hint_band * f.V0;
  const double tie = opt.tie * f.V0;
  L.separated.assign(f.saddle_hints.size(), 0);
  L.candidates.resize(f.saddle_hints.size());
  for (std::size_t h = 0; h < f.saddle_hints.size(); ++h) {
    const SaddleHint& s = f.saddle_hints[h];
    if (std::abs(s.value - eps) > band) continue;
    L.separated[h] = sign == LevelSign::above ? (eps >= s.value - tie) : (eps <= s.value + tie);
    const Vec2 dir = sign == LevelSign::above ? s.rising : s.falling;
    const Vec2 d0 = s.position - f.origin;
    const double cu = dot(d0, f.axis_u) / f.spacing - 0.5;
    const double cv = dot(d0, f.axis_v) / f.spacing - 0.5;
    const double Rn = opt.hint_radius;
    for (int jj = static_cast<int>(std::floor(cv - Rn)); jj <= static_cast<int>(std::ceil(cv + Rn)); ++jj) {
      for (int ii = static_cast<int>(std::floor(cu - Rn)); ii <= static_cast<int>(std::ceil(cu + Rn)); ++ii) {
        const Vec2 d = f.position(ii, jj) - s.position;
        const double r = norm(d);
        if (r > R) continue;
        int wi = ii, wj = jj;
        if (f.periodic()) {
          wi = ii - floor_div(ii, f.nx) * f.nx;
          wj = jj - floor_div(jj, f.ny) * f.ny;
        } else if (ii < 0 || jj < 0 || ii >= f.nx || jj >= f.ny) {
          continue;
        }
        const auto node = static_cast<std::uint32_t>(f.index(wi, wj));
        const double side = dot(d, dir);
        const int lobe = side > 0.0 ? 1 : (side < 0.0 ? -1 : 0);
        L.candidates[h].push_back({node, ii, jj, r, lobe});
        if (r < claim[node]) {
          claim[node] = r;
          L.hint_of[node] = static_cast<std::int32_t>(h);
          L.lobe[node] = static_cast<std::int8_t>(lobe);
        }
      }
    }
  }
  return L;
}

LatticeOffset offset_between(const GridField& f, int ia, int ja, int ib, int jb) {
  if (!f.periodic()) return {0, 0};
  return {floor_div(ib, f.nx) - floor_div(ia, f.nx), floor_div(jb, f.ny) - floor_div(ja, f.ny)};
}

}  // namespace

const char* to_string(LevelSign s) { return s == LevelSign::above ? "above" : "below"; }

bool singular_level(const GridField& field, double epsilon, const LabelOptions& options) {
  for (const SaddleHint& s : field.saddle_hints) {
    if (std::abs(s.value - epsilon) <= options.tie * field.V0) return true;
  }
  return false;
}

Labeling label_grid(const GridField& f, double eps, LevelSign sign, const LabelOptions& opt) {
  if (!std::isfinite(eps)) throw InvalidArgument("epsilon must be finite");
  if (f.nx <= 0 || f.ny <= 0 || f.values.size() != static_cast<std::size_t>(f.nx) * f.ny) {
    throw InvalidArgument("malformed grid field");
  }
  const std::size_t n = f.size();
  std::vector<std::uint8_t> member(n);
  for (std::size_t k = 0; k < n; ++k) member[k] = in_set(f.values[k], eps, sign) ? 1 : 0;

  const HintLayout hints = layout_hints(f, eps, sign, opt);
  const bool has_hints = !hints.hint_of.empty();
  auto allowed = [&](std::uint32_t a, std::uint32_t b) {
    if (!has_hints) return true;
    const std::int32_t h = hints.hint_of[a];
    if (h < 0 || h != hints.hint_of[b] || !hints.separated[h]) return true;
    return hints.lobe[a] * hints.lobe[b] >= 0;
  };

  OffsetUnionFind uf(n);
  auto link = [&](std::uint32_t a, std::uint32_t b, LatticeOffset d) {
    if (member[b] && allowed(a, b)) uf.unite(a, b, d);
  };
  const bool periodic = f.periodic();
  const int nx = f.nx;
  const int ny = f.ny;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const auto a = static_cast<std::uint32_t>(f.index(i, j));
      if (!member[a]) continue;
      if (i + 1 < nx) {
        link(a, a + 1, {0, 0});
      } else if (periodic) {
        link(a, static_cast<std::uint32_t>(f.index(0, j)), {1, 0});
      }
      if (j + 1 < ny) {
        link(a, static_cast<std::uint32_t>(f.index(i, j + 1)), {0, 0});
      } else if (periodic) {
        link(a, static_cast<std::uint32_t>(f.index(i, 0)), {0, 1});
      }
    }
  }
  // Ambiguous plaquettes: the bilinear centre decides which diagonal is joined.
  const int pj = periodic ? ny : ny - 1;
  const int pi = periodic ? nx : nx - 1;
  for (int j = 0; j < pj; ++j) {
    const int j1 = (j + 1 < ny) ? j + 1 : 0;
    const std::int32_t oj = (j + 1 < ny) ? 0 : 1;
    for (int i = 0; i < pi; ++i) {
      const int i1 = (i + 1 < nx) ? i + 1 : 0;
      const std::int32_t oi = (i + 1 < nx) ? 0 : 1;
      const auto c00 = static_cast<std::uint32_t>(f.index(i, j));
      const auto c10 = static_cast<std::uint32_t>(f.index(i1, j));
      const auto c01 = static_cast<std::uint32_t>(f.index(i, j1));
      const auto c11 = static_cast<std::uint32_t>(f.index(i1, j1));
      const bool diag = member[c00] && member[c11] && !member[c10] && !member[c01];
      const bool anti = member[c10] && member[c01] && !member[c00] && !member[c11];
      if (!diag && !anti) continue;
      const double centre = 0.25 * (f.values[c00] + f.values[c10] + f.values[c01] + f.values[c11]);
      if (!in_set(centre, eps, sign)) continue;
      if (diag) {
        link(c00, c11, {oi, oj});
      } else {
        link(c10, c01, {-oi, oj});
      }
    }
  }
  // Saddles below (above) the level join their rising (falling) lobes through the saddle point.
  if (has_hints) {
    for (std::size_t h = 0; h < hints.candidates.size(); ++h) {
      if (hints.candidates[h].empty() || hints.separated[h]) continue;
      const HintCandidate* best[2] = {nullptr, nullptr};
      for (const HintCandidate& c : hints.candidates[h]) {
        if (c.lobe == 0 || hints.hint_of[c.node] != static_cast<std::int32_t>(h) || !member[c.node]) continue;
        const HintCandidate*& slot = best[c.lobe > 0 ? 1 : 0];
        if (!slot || c.r < slot->r) slot = &c;
      }
      if (best[0] && best[1]) {
        uf.unite(best[0]->node, best[1]->node, offset_between(f, best[0]->ii, best[0]->jj, best[1]->ii, best[1]->jj));
      }
    }
  }

  Labeling out;
  out.labels.assign(n, -1);
  std::vector<std::int32_t> comp_of_root(n, -1);
  for (std::uint32_t k = 0; k < n; ++k) {
    if (!member[k]) continue;
    const auto [root, off] = uf.find(k);
    std::int32_t c = comp_of_root[root];
    if (c < 0) {
      c = static_cast<std::int32_t>(out.components.size());
      comp_of_root[root] = c;
      LevelComponent comp;
      comp.label = c;
      comp.sign = sign;
      comp.wrap_rank = uf.wrap_rank(root);
      comp.wrap_vector = uf.wrap_vector(root);
      out.components.push_back(std::move(comp));
    }
    LevelComponent& comp = out.components[c];
    comp.cells.push_back(k);
    if (periodic) comp.offsets.push_back(off);
    out.labels[k] = c;
    if (!periodic) {
      const int i = static_cast<int>(k % nx);
      const int j = static_cast<int>(k / nx);
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) comp.touches_boundary = true;
    }
  }
  for (LevelComponent& c : out.components) c.diameter = component_diameter(c, f);
  return out;
}

std::vector<LevelComponent> label_components(const GridField& field, double epsilon, LevelSign sign,
                                             const LabelOptions& options) {
  return label_grid(field, epsilon, sign, options).components;
}

std::vector<IPoint> unrolled_points(const LevelComponent& c, const GridField& f) {
  std::vector<IPoint> pts;
  pts.reserve(c.cells.size());
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    std::int64_t i = c.cells[k] % f.nx;
    std::int64_t j = c.cells[k] / f.nx;
    if (!c.offsets.empty()) {
      i += static_cast<std::int64_t>(c.offsets[k][0]) * f.nx;
      j += static_cast<std::int64_t>(c.offsets[k][1]) * f.ny;
    }
    pts.push_back({i, j});
  }
  return pts;
}

double component_diameter(const LevelComponent& c, const GridField& f) {
  if (c.cells.empty()) throw InvalidArgument("component is empty");
  if (c.wraps()) return std::numeric_limits<double>::infinity();
  const std::int64_t d2 = diameter2(unrolled_points(c, f));
  return std::sqrt(static_cast<double>(d2)) * f.spacing;
}

}  // namespace quasilevel
