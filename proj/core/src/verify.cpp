#include "quasilevel/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "quasilevel/quasilevel.hpp"
#include "quasilevel/rng.hpp"

namespace quasilevel {

namespace {

using Check = std::function<std::string()>;

constexpr double kPi = std::numbers::pi;

std::string fail_if(bool bad, const std::string& what) { return bad ? what : std::string(); }

std::string check_convergents() {
  const auto cs = convergents_sqrt2_minus_1(20);
  for (const Convergent& c : cs) {
    const auto [m, n] = convergent_closed_form(c.s);
    if (std::llround(m) != c.m || std::llround(n) != c.n) return "closed form mismatch at s=" + std::to_string(c.s);
  }
  return fail_if(cs[3].m != 12 || cs[3].n != 29, "fourth convergent is not (12, 29)");
}

std::string check_symmetry() {
  Rng rng(11);
  const PotentialSpec eight(1.0, 1.0, Degrees{45.0});
  const PotentialSpec thirty(1.0, 1.0, Degrees{30.0});
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const Vec2 r{rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0)};
    worst = std::max(worst, std::abs(eval_V(rotate(r, kPi / 4.0), eight) - eval_V(r, eight)));
    worst = std::max(worst, std::abs(eval_V(rotate(r, kPi / 2.0), thirty) - eval_V(r, thirty)));
    const GeneralPhaseSpec g(1.0, 1.0, {rng.uniform(0, 6), rng.uniform(0, 6), rng.uniform(0, 6), rng.uniform(0, 6)});
    worst = std::max(worst, std::abs(eval_V_general(r, g.phase_flipped()) + eval_V_general(r, g)) * 100.0);
  }
  return fail_if(worst > 1e-10, "symmetry residual " + std::to_string(worst));
}

std::string check_gradients() {
  Rng rng(12);
  double worst = 0.0, fd = 0.0;
  const double h = 1e-5 * 2.0 * kPi;
  for (int s = 0; s < 10000; ++s) {
    const Vec2 r{rng.uniform(-30.0, 30.0), rng.uniform(-30.0, 30.0)};
    const Vec2 a{rng.uniform(-30.0, 30.0), rng.uniform(-30.0, 30.0)};
    const PotentialSpec spec(1.0, 1.0, Radians{rng.uniform(0.01, kPi / 2.0)}, a);
    worst = std::max(worst, norm(grad_a_V(r, spec)));
    if (s % 10 == 0) {
      const Vec2 g = grad_r_V(r, spec);
      const double gx = (eval_V(r + Vec2{h, 0}, spec) - eval_V(r - Vec2{h, 0}, spec)) / (2 * h);
      const double gy = (eval_V(r + Vec2{0, h}, spec) - eval_V(r - Vec2{0, h}, spec)) / (2 * h);
      fd = std::max(fd, norm(g - Vec2{gx, gy}));
    }
  }
  if (worst > std::numbers::sqrt2 + 1e-12) return "|grad_a V| exceeds sqrt2 k V0";
  return fail_if(fd > 1e-6, "finite-difference mismatch " + std::to_string(fd));
}

std::string check_periodicity() {
  Rng rng(13);
  for (auto [n, m] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{5, 2}}) {
    const MagicAngle a = make_magic_angle(n, m);
    const PotentialSpec spec(1.0, 1.0, Radians{a.angle});
    double worst = 0.0, half = 0.0;
    for (int s = 0; s < 200; ++s) {
      const Vec2 r{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
      worst = std::max(worst, std::abs(eval_V(r + a.b1, spec) - eval_V(r, spec)));
      worst = std::max(worst, std::abs(eval_V(r + a.b2, spec) - eval_V(r, spec)));
      half = std::max(half, std::abs(eval_V(r + 0.5 * a.b1, spec) - eval_V(r, spec)));
    }
    if (worst > 1e-10 || half < 1e-3) return "period lattice wrong for (" + std::to_string(n) + "," + std::to_string(m) + ")";
  }
  return {};
}

std::string check_labeling() {
  const PotentialSpec spec(1.0, 1.0, Degrees{45.0}, {0.3, 0.7});
  const double T = 2.0 * kPi;
  const GridField f = sample_grid(spec, Window::centered({0.0, 0.0}, 6.0 * T), T / 24.0, BoundaryMode::open_window);
  for (double eps : {0.8, -0.8, 2.0}) {
    double d_full = -1.0;
    for (LevelSign sgn : {LevelSign::above, LevelSign::below}) {
      for (const LevelComponent& c : label_components(f, eps, sgn)) {
        if (!c.touches_boundary) d_full = std::max(d_full, c.diameter);
      }
    }
    const ClosedComponentStats s = max_closed_diameter(f, eps);
    if (std::abs(s.d_hat - d_full) > 1e-9) return "streaming and full labeling disagree at eps=" + std::to_string(eps);
  }
  return {};
}

std::string check_singular_net() {
  const MagicAngle a = make_magic_angle(2, 1);
  const SingularNet net = extract_singular_net(a, {0.0, 0.0}, a.T() / 64.0);
  if (euler_count(net.critical_points) != 0) return "Euler count is not zero";
  if (net.zero_level_saddles != 2) return "expected 2 zero-level saddles, got " + std::to_string(net.zero_level_saddles);
  if (net.cells.empty()) return "no net cells";
  for (const NetCell& c : net.cells) {
    if (c.diameter < a.Tnm - 2 * net.spacing || c.diameter > std::numbers::sqrt2 * a.Tnm + 2 * net.spacing) {
      return "net cell diameter " + std::to_string(c.diameter) + " outside [Tnm, sqrt2 Tnm]";
    }
  }
  return {};
}

std::string check_percolation() {
  const MagicAngle a = make_magic_angle(2, 1);
  const GridField f = sample_cell_with_hints(a, {0.0, 0.0}, a.T() / 32.0);
  if (percolation_class(f, -3.9) != PercolationClass::A_minus) return "eps=-3.9 is not A_minus";
  if (percolation_class(f, 3.9) != PercolationClass::A_plus) return "eps=3.9 is not A_plus";
  return fail_if(percolation_class(f, 0.0) != PercolationClass::open_lines, "eps=0 is not open_lines");
}

std::string check_fit() {
  std::vector<double> x, y;
  for (double e : {0.5, 0.25, 0.125, 0.0625, 0.03125}) {
    x.push_back(e);
    y.push_back(3.0 / e);
  }
  const auto [slope, se] = fit_power_law(x, y);
  return fail_if(std::abs(slope + 1.0) > 1e-12 || se > 1e-10, "exact power law not recovered");
}

std::string check_bounds() {
  const double d = diameter_bound(0.1, 1.0, 1.0);
  if (std::abs(d - kPi * 2 * kPi * (4 + std::numbers::sqrt2) * (std::numbers::sqrt2 + 1) / 0.1) > 1e-9) return "diameter bound";
  if (std::abs(diameter_bound(0.05, 1.0, 1.0) - 2 * d) > 1e-9) return "diameter bound homogeneity";
  return fail_if(std::abs(epsilon_nm_bound(3, 1, 1.0) - kPi / std::sqrt(5.0)) > 1e-12, "epsilon_nm bound");
}

}  // namespace

std::vector<CheckResult> run_verify_suite() {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"convergents", check_convergents},   {"symmetry", check_symmetry},       {"gradients", check_gradients},
      {"periodicity", check_periodicity},   {"bounds", check_bounds},           {"labeling", check_labeling},
      {"singular-net", check_singular_net}, {"percolation", check_percolation}, {"power-fit", check_fit},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checks) {
    CheckResult r{name, false, {}};
    try {
      r.detail = fn();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace quasilevel
