#include "quasilevel/critical_points.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quasilevel/errors.hpp"
#include "quasilevel/parallel.hpp"

namespace quasilevel {

namespace {

struct Eigen2 {
  double lo;
  double hi;
  Vec2 v_lo;
  Vec2 v_hi;
};

Eigen2 eigen(const Sym2& H) {
  const double mean = 0.5 * (H.xx + H.yy);
  const double diff = 0.5 * (H.xx - H.yy);
  const double rad = std::hypot(diff, H.xy);
  Eigen2 e{mean - rad, mean + rad, {}, {}};
  const double theta = 0.5 * std::atan2(H.xy, diff);
  e.v_hi = {std::cos(theta), std::sin(theta)};
  e.v_lo = perp(e.v_hi);
  return e;
}

Vec2 wrap_into_cell(Vec2 p, Vec2 b1, Vec2 b2, Vec2 origin) {
  const double det = cross(b1, b2);
  const Vec2 d = p - origin;
  double s = cross(d, b2) / det;
  double t = cross(b1, d) / det;
  s -= std::floor(s);
  t -= std::floor(t);
  if (s >= 1.0) s = 0.0;
  if (t >= 1.0) t = 0.0;
  return origin + s * b1 + t * b2;
}

double torus_distance(Vec2 p, Vec2 q, Vec2 b1, Vec2 b2) {
  const double det = cross(b1, b2);
  const Vec2 d = p - q;
  double s = cross(d, b2) / det;
  double t = cross(b1, d) / det;
  s -= std::round(s);
  t -= std::round(t);
  double best = INFINITY;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) best = std::min(best, norm((s + a) * b1 + (t + b) * b2));
  }
  return best;
}

}  // namespace

double FieldModel::T() const { return 2.0 * std::numbers::pi / k; }

FieldModel field_model(const PotentialSpec& spec) {
  FieldModel m;
  m.value = [spec](Vec2 r) { return eval_V(r, spec); };
  m.gradient = [spec](Vec2 r) { return grad_r_V(r, spec); };
  m.hessian = [spec](Vec2 r) { return hessian_r_V(r, spec); };
  m.V0 = spec.V0();
  m.k = spec.k();
  m.hessian_lipschitz = 4.0 * spec.k() * spec.k() * spec.k() * spec.V0();
  return m;
}

FieldModel field_model(std::vector<PlaneWave> waves, double V0, double k) {
  FieldModel m;
  m.value = [waves](Vec2 r) { return eval_waves(r, waves); };
  m.gradient = [waves](Vec2 r) { return grad_waves(r, waves); };
  m.hessian = [waves](Vec2 r) { return hessian_waves(r, waves); };
  m.V0 = V0;
  m.k = k;
  m.hessian_lipschitz = 0.0;
  for (const PlaneWave& w : waves) m.hessian_lipschitz += std::abs(w.amplitude) * std::pow(norm(w.g), 3);
  return m;
}

const char* to_string(CriticalType t) {
  switch (t) {
    case CriticalType::min:
      return "min";
    case CriticalType::max:
      return "max";
    case CriticalType::saddle:
      return "saddle";
    case CriticalType::degenerate:
      return "degenerate";
  }
  return "degenerate";
}

namespace {

enum class Outcome { converged, gradient_minimum };

/// grad |grad|^2 = 2 H grad vanishes while grad does not.
bool at_gradient_minimum(const FieldModel& model, Vec2 x) {
  const Vec2 g = model.gradient(x);
  const Sym2 H = model.hessian(x);
  const Vec2 hg{H.xx * g.x + H.xy * g.y, H.xy * g.x + H.yy * g.y};
  const Eigen2 e = eigen(H);
  const double hn = std::max(std::abs(e.lo), std::abs(e.hi));
  return norm(hg) <= 1e-4 * hn * norm(g);
}

Outcome newton(const FieldModel& model, Vec2 seed, const CriticalSearchOptions& opt, CriticalPoint& cp) {
  const double T = model.T();
  const double scale = model.k * model.V0;
  const double target = opt.tolerance * scale;
  Vec2 x = seed;
  for (int it = 0;; ++it) {
    const Vec2 g = model.gradient(x);
    const double res = norm(g);
    cp.residuals.push_back(res);
    cp.position = x;
    if (res <= target) return Outcome::converged;
    if (it >= opt.max_iterations) {
      if (at_gradient_minimum(model, x)) return Outcome::gradient_minimum;
      throw NewtonStall(seed, res);
    }
    const Sym2 H = model.hessian(x);
    const double det = H.det();
    Vec2 step;
    if (std::abs(det) > 1e-14 * scale * scale * model.k * model.k) {
      step = {-(H.yy * g.x - H.xy * g.y) / det, -(-H.xy * g.x + H.xx * g.y) / det};
    } else {
      step = -g / (model.k * scale);
    }
    while (norm(step) > T / 8.0) step *= 0.5;
    // Backtrack on |grad|; when Newton stalls near det = 0, also try steepest descent of |grad|^2 (-H grad).
    double newton_res = res;
    for (int b = 0; b < 40; ++b, step *= 0.5) {
      newton_res = norm(model.gradient(x + step));
      if (newton_res < res) break;
    }
    if (!(newton_res < res)) step = {};
    if (!(newton_res < 0.99 * res)) {
      if (at_gradient_minimum(model, x)) return Outcome::gradient_minimum;
      const Vec2 hg{H.xx * g.x + H.xy * g.y, H.xy * g.x + H.yy * g.y};
      double best = std::min(newton_res, res);
      if (norm(hg) > 0.0) {
        Vec2 trial = -(T / 8.0 / norm(hg)) * hg;
        Vec2 best_step = step;
        for (int b = 0; b < 60; ++b, trial *= 0.5) {
          const double r = norm(model.gradient(x + trial));
          if (r < best) {
            best = r;
            best_step = trial;
          } else if (best < std::min(newton_res, res)) {
            break;
          }
        }
        step = best_step;
      }
      if (!(best < res)) throw NewtonStall(seed, res);
    }
    x += step;
  }
}

void classify(const FieldModel& model, const CriticalSearchOptions& opt, CriticalPoint& cp) {
  const Vec2 x = cp.position;
  const Sym2 H = model.hessian(x);
  cp.value = model.value(x);
  cp.hessian_det = H.det();
  cp.hessian_trace = H.trace();
  const Eigen2 e = eigen(H);
  cp.rising = e.v_hi;
  cp.falling = e.v_lo;
  const double kk = model.k * model.k * model.V0;
  if (std::abs(cp.hessian_det) < opt.degenerate_det * kk * kk) {
    cp.type = CriticalType::degenerate;
  } else if (cp.hessian_det < 0.0) {
    cp.type = CriticalType::saddle;
  } else {
    cp.type = cp.hessian_trace > 0.0 ? CriticalType::min : CriticalType::max;
  }
}

}  // namespace

CriticalPoint refine_critical_point(const FieldModel& model, Vec2 seed, const CriticalSearchOptions& opt) {
  CriticalPoint cp;
  if (newton(model, seed, opt, cp) == Outcome::gradient_minimum) throw NewtonStall(seed, cp.residuals.back());
  classify(model, opt, cp);
  return cp;
}

CriticalSearch search_critical_points(const FieldModel& model, Vec2 b1, Vec2 b2, Vec2 origin,
                                      const CriticalSearchOptions& opt) {
  const double T = model.T();
  const double h_target = opt.seed_spacing > 0.0 ? opt.seed_spacing : T / 64.0;
  const int n1 = std::max(8, static_cast<int>(std::ceil(norm(b1) / h_target - 1e-9)));
  const int n2 = std::max(8, static_cast<int>(std::ceil(norm(b2) / h_target - 1e-9)));
  auto node = [&](int i, int j) {
    return origin + (static_cast<double>(i) / n1) * b1 + (static_cast<double>(j) / n2) * b2;
  };
  std::vector<double> g2(static_cast<std::size_t>(n1) * n2);
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      const Vec2 g = model.gradient(node(i, j));
      g2[static_cast<std::size_t>(j) * n1 + i] = dot(g, g);
    }
  }
  const double reach = 0.5 * std::hypot(norm(b1) / n1, norm(b2) / n2);
  // Taylor certificate: |grad(x)| >= |grad(s)| - |H(s)| r - L3 r^2 / 2 for |x - s| <= r.
  auto may_hold_zero = [&](Vec2 s, double g) {
    const Eigen2 e = eigen(model.hessian(s));
    const double hn = std::max(std::abs(e.lo), std::abs(e.hi));
    return g <= (hn * reach + 0.5 * model.hessian_lipschitz * reach * reach) * (1.0 + 1e-9);
  };
  std::vector<Vec2> seeds;
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * n1 + i;
      bool is_min = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const int ii = (i + di + n1) % n1;
          const int jj = (j + dj + n2) % n2;
          const std::size_t o = static_cast<std::size_t>(jj) * n1 + ii;
          // Ties go to the lower index so that flat pairs seed once.
          if (g2[o] < g2[c] || (g2[o] == g2[c] && o < c)) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min && may_hold_zero(node(i, j), std::sqrt(g2[c]))) seeds.push_back(node(i, j));
    }
  }
  std::vector<CriticalPoint> refined(seeds.size());
  std::vector<Outcome> outcome(seeds.size());
  parallel_for(seeds.size(), opt.workers, [&](std::size_t s) {
    outcome[s] = newton(model, seeds[s], opt, refined[s]);
    if (outcome[s] == Outcome::converged) classify(model, opt, refined[s]);
  });

  CriticalSearch result;
  std::vector<CriticalPoint>& out = result.points;
  const double merge = opt.merge_radius * T;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    CriticalPoint& cp = refined[s];
    if (outcome[s] == Outcome::gradient_minimum) {
      result.gradient_minima.push_back({seeds[s], cp.position, cp.residuals.back()});
      continue;
    }
    cp.position = wrap_into_cell(cp.position, b1, b2, origin);
    bool dup = false;
    for (const CriticalPoint& q : out) {
      if (torus_distance(cp.position, q.position, b1, b2) <= merge) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(cp));
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.position.y < b.position.y || (a.position.y == b.position.y && a.position.x < b.position.x);
  });
  return result;
}

std::vector<CriticalPoint> find_critical_points(const FieldModel& model, Vec2 b1, Vec2 b2, Vec2 origin,
                                                const CriticalSearchOptions& opt) {
  return search_critical_points(model, b1, b2, origin, opt).points;
}

std::vector<CriticalPoint> find_critical_points_any_shift(const MagicAngle& angle, Vec2 a, double seed_spacing,
                                                          double V0) {
  const PotentialSpec spec(V0, angle.k, Radians{angle.angle}, a);
  CriticalSearchOptions opt;
  opt.seed_spacing = seed_spacing;
  return find_critical_points(field_model(spec), angle.b1, angle.b2, {}, opt);
}

std::vector<CriticalPoint> find_critical_points(const MagicAngle& angle, Vec2 a_sym, double seed_spacing, double V0) {
  const SymmetricShift near = nearest_symmetric_shift(a_sym, angle);
  if (near.dist > 1e-9 * angle.T()) throw NotSymmetricShift(a_sym, near.dist);
  return find_critical_points_any_shift(angle, a_sym, seed_spacing, V0);
}

int euler_count(const std::vector<CriticalPoint>& points) {
  int c = 0;
  for (const CriticalPoint& p : points) {
    if (p.type == CriticalType::min || p.type == CriticalType::max) ++c;
    if (p.type == CriticalType::saddle) --c;
  }
  return c;
}

std::vector<SaddleHint> saddle_hints(const std::vector<CriticalPoint>& points) {
  std::vector<SaddleHint> out;
  for (const CriticalPoint& p : points) {
    if (p.type != CriticalType::saddle) continue;
    out.push_back({p.position, p.value, p.rising, p.falling});
  }
  return out;
}

std::map<double, int> critical_value_histogram(const std::vector<CriticalPoint>& points, double V0,
                                               double resolution) {
  std::map<double, int> hist;
  const double q = resolution * V0;
  for (const CriticalPoint& p : points) {
    double key = std::round(p.value / q) * q;
    if (key == 0.0) key = 0.0;
    ++hist[key];
  }
  return hist;
}

}  // namespace quasilevel
