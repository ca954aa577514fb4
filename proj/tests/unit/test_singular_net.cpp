#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "quasilevel/critical_points.hpp"
#include "quasilevel/errors.hpp"
#include "quasilevel/singular_net.hpp"

using namespace quasilevel;
using std::numbers::pi;

namespace {

bool has_point_near(const std::vector<CriticalPoint>& pts, Vec2 p, const MagicAngle& a, CriticalType type,
                    double tol) {
  for (const CriticalPoint& c : pts) {
    if (c.type != type) continue;
    const Vec2 d = p - c.position;
    // Rotated images can leave the cell; compare modulo the lattice.
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        if (norm(d + static_cast<double>(i) * a.b1 + static_cast<double>(j) * a.b2) <= tol) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("critical points of the two-wave potential") {
  const std::vector<PlaneWave> waves{{{1, 0}, 0.0, 1.0}, {{0, 1}, 0.0, 1.0}};
  const FieldModel model = field_model(waves, 1.0, 1.0);
  const CriticalPoint s = refine_critical_point(model, {pi + 0.2, -0.15});
  CHECK(s.type == CriticalType::saddle);
  CHECK(s.position.x == doctest::Approx(pi).epsilon(1e-12));
  CHECK(std::abs(s.position.y) < 1e-12);
  CHECK(std::abs(s.value) < 1e-12);
  const CriticalPoint mx = refine_critical_point(model, {0.3, 0.2});
  CHECK(mx.type == CriticalType::max);
  CHECK(mx.value == doctest::Approx(2.0));
  const CriticalPoint mn = refine_critical_point(model, {pi - 0.3, pi + 0.2});
  CHECK(mn.type == CriticalType::min);
  CHECK(mn.value == doctest::Approx(-2.0));

  const auto all = find_critical_points(model, {2 * pi, 0}, {0, 2 * pi}, {0.1, 0.1});
  CHECK(all.size() == 4);
  CHECK(euler_count(all) == 0);
}

TEST_CASE("Newton converges quadratically") {
  const MagicAngle a = make_magic_angle(2, 1);
  const FieldModel model = field_model(PotentialSpec(1, 1, Radians{a.angle}));
  const CriticalPoint cp = refine_critical_point(model, {0.2, -0.1});
  CHECK(cp.type == CriticalType::max);
  CHECK(cp.value == doctest::Approx(4.0));
  const auto& r = cp.residuals;
  REQUIRE(r.size() >= 3);
  int checked = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i - 1] < 1e-2 && r[i - 1] > 1e-7 && r[i] > 0) {
      CHECK(r[i] / (r[i - 1] * r[i - 1]) <= 1e2);
      CHECK(r[i] / r[i - 1] <= 1e-2);
      ++checked;
    }
  }
  CHECK(checked >= 1);
  CHECK(r.back() <= 1e-10);
}

TEST_CASE("critical points at symmetric shifts") {
  for (auto [n, m] : {std::pair<int, int>{2, 1}, {3, 1}, {5, 2}}) {
    const MagicAngle a = make_magic_angle(n, m);
    const auto pts = find_critical_points(a, Vec2{0, 0});
    CAPTURE(n);
    CAPTURE(m);
    CHECK(euler_count(pts) == 0);
    const FieldModel model = field_model(PotentialSpec(1, 1, Radians{a.angle}));
    for (const CriticalPoint& c : pts) {
      CHECK(norm(model.gradient(c.position)) <= 1e-10);
      const Sym2 H = model.hessian(c.position);
      CHECK(c.hessian_det == doctest::Approx(H.det()));
      if (c.type == CriticalType::saddle) CHECK(H.det() < 0);
      if (c.type == CriticalType::max) CHECK((H.det() > 0 && H.trace() < 0));
      if (c.type == CriticalType::min) CHECK((H.det() > 0 && H.trace() > 0));
      CHECK(c.type != CriticalType::degenerate);
      CHECK(c.value == doctest::Approx(oracle::V(c.position.x, c.position.y, 1, 1, a.angle, 0, 0)).epsilon(1e-12));
    }
    // The critical set is invariant under 90 degree rotation about the symmetry centre at the origin.
    for (const CriticalPoint& c : pts) {
      CHECK(has_point_near(pts, rotate(c.position, pi / 2), a, c.type, 1e-7));
    }
  }
}

TEST_CASE("(2,1) critical structure") {
  const MagicAngle a = make_magic_angle(2, 1);
  const auto pts = find_critical_points(a, Vec2{0, 0});
  int zero_saddles = 0;
  double vmax = -10;
  for (const CriticalPoint& c : pts) {
    if (c.type == CriticalType::saddle && std::abs(c.value) < 1e-9) ++zero_saddles;
    vmax = std::max(vmax, c.value);
  }
  CHECK(zero_saddles == 2);
  CHECK(vmax == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(has_point_near(pts, {0, 0}, a, CriticalType::max, 1e-9));
}

TEST_CASE("generic shifts are rejected") {
  const MagicAngle a = make_magic_angle(2, 1);
  CHECK_THROWS_AS(find_critical_points(a, Vec2{0.123, 0.456}), NotSymmetricShift);
  CHECK_THROWS_AS(extract_singular_net(a, Vec2{0.123, 0.456}, a.T() / 32), NotSymmetricShift);
  try {
    extract_singular_net(a, Vec2{0.123, 0.456}, a.T() / 32);
  } catch (const NotSymmetricShift& e) {
    CHECK(e.distance() > 0.0);
  }
}

TEST_CASE("principal cells of the singular net") {
  struct Case {
    int n, m;
    int cells;
    bool non_generic;
  };
  for (const Case c : {Case{2, 1, 2, false}, Case{3, 1, 2, false}, Case{5, 2, 2, true}}) {
    CAPTURE(c.n);
    CAPTURE(c.m);
    const MagicAngle a = make_magic_angle(c.n, c.m);
    const SingularNet net = extract_singular_net(a, Vec2{0, 0}, a.T() / 32);
    CHECK(net.cells.size() == static_cast<std::size_t>(c.cells));
    CHECK(net.non_generic == c.non_generic);
    CHECK(euler_count(net.critical_points) == 0);
    const double lower = a.Tnm - 2.0 * net.spacing;
    int plus = 0, minus = 0;
    for (const NetCell& cell : net.cells) {
      CHECK(cell.diameter >= lower);
      CHECK(cell.diameter <= std::numbers::sqrt2 * a.Tnm + 2.0 * net.spacing);
      CHECK(cell.wrap_vector == LatticeOffset{0, 0});
      CHECK(!cell.boundary_saddles.empty());
      CHECK(fourfold_mismatch(cell, net.field, cell.center) <= 0.01);
      (cell.sign == LevelSign::above ? plus : minus) += 1;
    }
    CHECK(plus == 1);
    CHECK(minus == 1);
    for (const NetCell& f : net.asymmetric_faces) CHECK(f.diameter < 0.5 * a.Tnm);
    if (!c.non_generic) CHECK(net.asymmetric_faces.empty());
    for (const NetCell& isl : net.islands) {
      CHECK(isl.boundary_saddles.empty());
      CHECK(isl.diameter < 0.5 * a.Tnm);
    }
  }
}

TEST_CASE("saddle level histogram") {
  const MagicAngle a = make_magic_angle(2, 1);
  const auto hist = saddle_level_histogram(a, Vec2{0, 0});
  REQUIRE(hist.count(0.0) == 1);
  CHECK(hist.at(0.0) == 2);
}
