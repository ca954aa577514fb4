#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "quasilevel/convex_hull.hpp"
#include "quasilevel/errors.hpp"
#include "quasilevel/field_io.hpp"
#include "quasilevel/grid_field.hpp"
#include "quasilevel/labeling.hpp"
#include "quasilevel/percolation.hpp"
#include "quasilevel/streaming_labeler.hpp"
#include "quasilevel/union_find.hpp"

using namespace quasilevel;
using std::numbers::pi;

namespace {

GridField raw_field(int nx, int ny, std::vector<double> values, bool periodic) {
  GridField f;
  f.nx = nx;
  f.ny = ny;
  f.spacing = 1.0;
  f.values = std::move(values);
  if (periodic) {
    f.mode = BoundaryMode::periodic_cell;
    f.lattice_basis = {Vec2{static_cast<double>(nx), 0}, Vec2{0, static_cast<double>(ny)}};
  }
  return f;
}

std::vector<double> noise(int nx, int ny, std::uint64_t seed) {
  oracle::Uniform u(seed);
  std::vector<double> v(static_cast<std::size_t>(nx) * ny);
  for (double& x : v) x = u(-1, 1);
  return v;
}

void check_against_flood(const GridField& f, double eps, LevelSign sign) {
  const Labeling lab = label_grid(f, eps, sign);
  const oracle::FloodResult ref = oracle::flood_fill(f.values, f.nx, f.ny, eps, sign == LevelSign::above, f.periodic());
  REQUIRE(lab.components.size() == ref.components.size());
  CHECK(lab.labels == ref.labels);
  for (std::size_t c = 0; c < ref.components.size(); ++c) {
    CHECK(lab.components[c].n_cells() == ref.components[c].cells.size());
    if (f.periodic()) {
      CHECK(lab.components[c].wraps() == ref.components[c].wraps);
    } else {
      CHECK(lab.components[c].touches_boundary == ref.components[c].touches_boundary);
    }
  }
}

}  // namespace

TEST_CASE("sample_grid stores eval_V at node positions") {
  const PotentialSpec s(1.2, 1.0, Degrees{45}, {0.4, -0.3});
  const GridField f = sample_grid(s, Window::centered({3, -2}, 20.0), 2 * pi / 40, BoundaryMode::open_window);
  oracle::Uniform u(21);
  for (int t = 0; t < 100; ++t) {
    const int i = static_cast<int>(u(0, f.nx));
    const int j = static_cast<int>(u(0, f.ny));
    const Vec2 p = f.position(i, j);
    CHECK(f.at(i, j) == oracle::V(p.x, p.y, 1.2, 1.0, pi / 4, 0.4, -0.3));
  }
}

TEST_CASE("sample_grid preconditions") {
  const PotentialSpec s(1, 1, Degrees{45});
  CHECK_THROWS_AS(sample_grid(s, Window::centered({0, 0}, 10), 2 * pi / 15, BoundaryMode::open_window),
                  ResolutionTooCoarse);
  CHECK_THROWS_AS(sample_periodic_cell(s, 2 * pi / 64), NotPeriodic);
  const MagicAngle a = make_magic_angle(2, 1);
  const PotentialSpec p(1, 1, Radians{a.angle});
  CHECK_THROWS_AS(sample_grid(p, Window::centered({0, 0}, 10), 0.1, BoundaryMode::periodic_cell), InvalidArgument);
}

TEST_CASE("periodic cell is continuous across the seam") {
  const MagicAngle a = make_magic_angle(2, 1);
  const PotentialSpec s(1, 1, Radians{a.angle}, {0.3, 0.8});
  const GridField f = sample_periodic_cell(s, a.T() / 64);
  const double L = f.spacing * f.nx;
  CHECK(L == doctest::Approx(a.Tnm));
  for (int j = 0; j < f.ny; j += 7) {
    const Vec2 beyond = f.position(f.nx, j);
    CHECK(std::abs(eval_V(beyond, s) - f.at(0, j)) <= 1e-9);
    const Vec2 above = f.position(j % f.nx, f.ny);
    CHECK(std::abs(eval_V(above, s) - f.at(j % f.nx, 0)) <= 1e-9);
  }
}

TEST_CASE("labeling agrees with flood fill on random grids") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int nx = 17 + static_cast<int>(seed % 5) * 9;
    const int ny = 23 + static_cast<int>(seed % 3) * 11;
    for (bool periodic : {false, true}) {
      const GridField f = raw_field(nx, ny, noise(nx, ny, seed), periodic);
      for (double eps : {-0.3, 0.0, 0.25}) {
        check_against_flood(f, eps, LevelSign::above);
        check_against_flood(f, eps, LevelSign::below);
      }
    }
  }
}

TEST_CASE("labeling agrees with flood fill on smooth periodic fields") {
  const MagicAngle a = make_magic_angle(2, 1);
  for (Vec2 sh : {Vec2{0.3, 1.1}, Vec2{2.0, -0.4}}) {
    GridField f = sample_periodic_cell(PotentialSpec(1, 1, Radians{a.angle}, sh), a.T() / 24);
    for (double eps : {-1.0, -0.2, 0.2, 1.0}) {
      check_against_flood(f, eps, LevelSign::above);
      check_against_flood(f, eps, LevelSign::below);
    }
  }
}

TEST_CASE("level above the maximum gives one component") {
  const GridField f = sample_grid(PotentialSpec(1, 1, Degrees{45}), Window::centered({0, 0}, 30), 0.2,
                                  BoundaryMode::open_window);
  const auto comps = label_components(f, 4.01, LevelSign::below);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].n_cells() == f.size());
}

TEST_CASE("two-wave checkerboard") {
  const int n = 64;
  const double h = 2 * pi / 16;
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(j) * n + i] = oracle::V1((i + 0.5) * h, (j + 0.5) * h, 1, 1);
  }
  GridField f = raw_field(n, n, v, false);
  f.spacing = h;
  const auto comps = label_components(f, 0.1, LevelSign::above);
  const auto ref = oracle::flood_fill(v, n, n, 0.1, true, false);
  CHECK(comps.size() == ref.components.size());
  // One cap per maximum (2 pi p, 2 pi q), p, q = 0..4, including partial caps on edges and corners.
  CHECK(comps.size() == 25);
  CHECK(label_components(f, -0.1, LevelSign::above).size() == 1);
}

TEST_CASE("A minus structure at a symmetric shift") {
  const MagicAngle a = make_magic_angle(2, 1);
  const GridField f = sample_cell_with_hints(a, {0, 0}, a.T() / 64);
  const auto comps = label_components(f, -0.5, LevelSign::above);
  int wrapping = 0;
  for (const LevelComponent& c : comps) wrapping += c.wraps() ? 1 : 0;
  CHECK(wrapping == 1);
  for (const LevelComponent& c : comps) {
    if (c.wraps()) {
      CHECK(std::isinf(c.diameter));
      CHECK(c.wrap_vector != LatticeOffset{0, 0});
    } else {
      CHECK(c.wrap_vector == LatticeOffset{0, 0});
    }
  }
}

TEST_CASE("component count is stable under refinement") {
  const MagicAngle a = make_magic_angle(2, 1);
  const Vec2 sh{0.9, 0.2};
  const auto coarse = label_components(sample_cell_with_hints(a, sh, a.T() / 32), 0.5, LevelSign::above);
  const auto fine = label_components(sample_cell_with_hints(a, sh, a.T() / 64), 0.5, LevelSign::above);
  CHECK(coarse.size() == fine.size());
}

TEST_CASE("convex-hull diameter equals brute force") {
  oracle::Uniform u(22);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(u(0, 300));
    std::vector<IPoint> pts;
    std::vector<oracle::P> ref;
    for (int k = 0; k < n; ++k) {
      const IPoint p{static_cast<std::int64_t>(u(-500, 500)), static_cast<std::int64_t>(u(-500, 500))};
      pts.push_back(p);
      ref.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    }
    CHECK(static_cast<double>(diameter2(pts)) == oracle::brute_diameter2(ref));
  }
  CHECK(diameter2(std::vector<IPoint>{{3, 4}}) == 0);
  CHECK(diameter2(std::vector<IPoint>{{0, 0}, {3, 4}, {3, 4}, {0, 0}}) == 25);
  CHECK(diameter2(std::vector<IPoint>{{0, 0}, {1, 1}, {2, 2}, {5, 5}}) == 50);
}

TEST_CASE("component diameters match brute force over member centres") {
  const GridField f = raw_field(60, 50, noise(60, 50, 23), false);
  const auto comps = label_components(f, 0.1, LevelSign::above);
  for (const LevelComponent& c : comps) {
    std::vector<oracle::P> pts;
    for (std::uint32_t k : c.cells) pts.push_back({static_cast<double>(k % 60), static_cast<double>(k / 60)});
    CHECK(std::abs(c.diameter - std::sqrt(oracle::brute_diameter2(pts))) <= 1e-12);
    CHECK(component_diameter(c, f) == c.diameter);
  }
  GridField one = raw_field(3, 3, {-1, -1, -1, -1, 1, -1, -1, -1, -1}, false);
  CHECK(label_components(one, 0, LevelSign::above)[0].diameter == 0.0);
  GridField two = raw_field(5, 1, {1, 1, 1, 1, 1}, false);
  CHECK(label_components(two, 0, LevelSign::above)[0].diameter == doctest::Approx(4.0));
}

TEST_CASE("streaming labeler agrees with full labeling") {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const int nx = 40 + static_cast<int>(seed % 7) * 5;
    const int ny = 35 + static_cast<int>(seed % 4) * 6;
    GridField f = raw_field(nx, ny, noise(nx, ny, seed), false);
    f.spacing = 0.5;
    for (double eps : {-0.4, 0.05, 0.6}) {
      for (LevelSign sign : {LevelSign::above, LevelSign::below}) {
        StreamingLabeler s(nx, ny, f.spacing, eps, sign);
        for (int j = 0; j < ny; ++j) s.push_row(&f.values[static_cast<std::size_t>(j) * nx]);
        const ClosedComponentStats st = s.finish();
        std::int64_t closed = 0, censored = 0;
        double best = -1.0;
        for (const LevelComponent& c : label_components(f, eps, sign)) {
          if (c.touches_boundary) {
            ++censored;
          } else {
            ++closed;
            best = std::max(best, c.diameter);
          }
        }
        CHECK(st.closed == closed);
        CHECK(st.censored == censored);
        if (best < 0) {
          CHECK(std::isnan(st.d_hat));
        } else {
          CHECK(st.d_hat == doctest::Approx(best).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("max_closed_diameter") {
  const double T = 2 * pi;
  const GridField f = sample_grid(PotentialSpec(1, 1, Degrees{45}), Window::centered({0, 0}, 4 * T), T / 64,
                                  BoundaryMode::open_window);
  // The peaks above 3.9 are closed; the connected sea below 3.9 is the one censored component.
  const ClosedComponentStats high = max_closed_diameter(f, 3.9);
  CHECK(high.censored == 1);
  CHECK(high.closed > 0);
  CHECK(high.d_hat < T);
  double prev = high.d_hat;
  for (double eps : {3.5, 3.0, 2.5, 2.0}) {
    const ClosedComponentStats s = max_closed_diameter(f, eps);
    CHECK(s.d_hat >= prev - f.spacing);
    prev = s.d_hat;
  }
  CHECK_THROWS_AS(max_closed_diameter(f, 0.0), ZeroEpsilon);
  const GridField tiny = sample_grid(PotentialSpec(1, 1, Degrees{45}), Window::centered({0, 0}, 0.5), T / 64,
                                     BoundaryMode::open_window);
  CHECK_THROWS_AS(max_closed_diameter(tiny, 2.0), WindowTooSmall);
  CHECK(max_closed_diameter(tiny, 3.99).closed == 1);
  const MagicAngle a = make_magic_angle(2, 1);
  CHECK_THROWS_AS(max_closed_diameter(sample_cell_with_hints(a, {}, a.T() / 32), 0.5), InvalidArgument);

  const GridField big = sample_grid(PotentialSpec(1, 1, Degrees{45}, {0.37, 1.21}), Window::centered({0, 0}, 6 * T),
                                    T / 32, BoundaryMode::open_window);
  CHECK(max_closed_diameter(big, 0.02).censored > 0);
}

TEST_CASE("union-find with offsets tracks wraps") {
  OffsetUnionFind uf(4);
  uf.unite(0, 1, {0, 0});
  uf.unite(1, 2, {1, 0});
  auto [r0, o0] = uf.find(0);
  auto [r2, o2] = uf.find(2);
  CHECK(r0 == r2);
  CHECK(o2[0] - o0[0] == 1);
  CHECK(uf.wrap_rank(r0) == 0);
  uf.unite(2, 0, {-1, 0});
  CHECK(uf.wrap_rank(uf.find(0).first) == 0);
  uf.unite(2, 0, {1, 0});
  CHECK(uf.wrap_rank(uf.find(0).first) == 1);
  const LatticeOffset w = uf.wrap_vector(uf.find(0).first);
  CHECK(std::abs(w[0]) == 2);
  CHECK(w[1] == 0);
  uf.unite(3, 3, {0, 1});
  CHECK(uf.wrap_rank(uf.find(3).first) == 1);
  uf.unite(3, 0, {0, 0});
  CHECK(uf.wrap_rank(uf.find(3).first) == 2);

  UnionFind plain(5);
  plain.unite(0, 4);
  plain.unite(4, 2);
  CHECK(plain.find(2) == plain.find(0));
  CHECK(plain.find(1) != plain.find(0));
}

TEST_CASE("percolation classes") {
  const MagicAngle a = make_magic_angle(2, 1);
  const GridField f = sample_cell_with_hints(a, {0, 0}, a.T() / 64);
  CHECK(percolation_class(f, -3.9) == PercolationClass::A_minus);
  CHECK(percolation_class(f, 3.9) == PercolationClass::A_plus);
  CHECK(percolation_class(f, 0.0) == PercolationClass::open_lines);
  const GridField open = sample_grid(PotentialSpec(1, 1, Degrees{45}), Window::centered({0, 0}, 10), 0.2,
                                     BoundaryMode::open_window);
  CHECK_THROWS_AS(percolation_class(open, 0.5), InvalidArgument);
}

TEST_CASE("A plus structure above the threshold") {
  const MagicAngle a = make_magic_angle(2, 1);
  const Vec2 sh{1.3, 0.4};
  const ThresholdEstimate est = estimate_epsilon_nm(2, 1, sh, 1e-3);
  const GridField f = sample_cell_with_hints(a, sh, a.T() / 64);
  for (double eps : {est.positive.hi + 0.05, 0.5 * (est.positive.hi + 4.0), 3.5}) {
    int below = 0, above = 0;
    for (const LevelComponent& c : label_components(f, eps, LevelSign::below)) below += c.wraps() ? 1 : 0;
    for (const LevelComponent& c : label_components(f, eps, LevelSign::above)) above += c.wraps() ? 1 : 0;
    CHECK(below == 1);
    CHECK(above == 0);
  }
}

TEST_CASE("sign-flip duality") {
  const MagicAngle a = make_magic_angle(3, 1);
  GridField f = sample_cell_with_hints(a, {0.2, 0.9}, a.T() / 32);
  GridField g = f;
  for (double& v : g.values) v = -v;
  for (SaddleHint& h : g.saddle_hints) {
    h.value = -h.value;
    std::swap(h.rising, h.falling);
  }
  for (double eps : {-0.7, 0.3, 1.1}) {
    const Labeling x = label_grid(f, eps, LevelSign::above);
    const Labeling y = label_grid(g, -eps, LevelSign::below);
    CHECK(x.labels == y.labels);
    REQUIRE(x.components.size() == y.components.size());
    for (std::size_t c = 0; c < x.components.size(); ++c) CHECK(x.components[c].wraps() == y.components[c].wraps());
  }
}

TEST_CASE("threshold estimates") {
  const ThresholdEstimate sym = estimate_epsilon_nm(2, 1, {0, 0}, 1e-3);
  CHECK(sym.positive.contains(0.0));
  CHECK(sym.positive.width() <= 1e-3);
  CHECK(sym.negative.contains(0.0));
  const ThresholdEstimate quarter = estimate_epsilon_nm(2, 1, {pi / 2, 0}, 1e-3);
  CHECK(quarter.sides_agree);
  CHECK(std::abs(quarter.positive.mid() + quarter.negative.mid()) <= 1e-3);
  CHECK(quarter.positive.hi <= epsilon_nm_bound(2, 1, 1) + 1e-3);
  CHECK(quarter.positive.width() <= 1e-3);
  CHECK_THROWS_AS(estimate_epsilon_nm(2, 1, {0, 0}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(estimate_epsilon_nm(2, 2, {0, 0}, 1e-3), InvalidPair);
}

TEST_CASE("field serialisation") {
  const GridField f = sample_grid(PotentialSpec(1, 1, Degrees{45}), Window::centered({1, 2}, 3), 0.25,
                                  BoundaryMode::open_window);
  std::stringstream bin;
  write_field_binary(bin, f);
  const std::string bytes = bin.str();
  CHECK(bytes.size() == 64 + 8 * f.size());
  CHECK(bytes.substr(0, 5) == "QLVL1");
  CHECK(bytes[63] == '\n');
  std::vector<double> values;
  const BinaryFieldHeader h = read_field_binary(bin, values);
  CHECK(h.nx == f.nx);
  CHECK(h.ny == f.ny);
  CHECK(h.spacing == f.spacing);
  CHECK(h.origin.x == f.origin.x);
  CHECK(values == f.values);

  const GridField wide = sample_grid(PotentialSpec(1, 1, Degrees{45}), Window::centered({0, 0}, 4 * 2 * pi),
                                     2 * pi / 32, BoundaryMode::open_window);
  std::stringstream wbin;
  write_field_binary(wbin, wide);
  const BinaryFieldHeader wh = read_field_binary(wbin, values);
  CHECK(wh.nx == wide.nx);
  CHECK(wh.spacing == doctest::Approx(wide.spacing).epsilon(1e-10));
  CHECK(wh.origin.x == doctest::Approx(wide.origin.x).epsilon(1e-10));
  CHECK(wh.origin.y == doctest::Approx(wide.origin.y).epsilon(1e-10));
  CHECK(values == wide.values);

  std::stringstream csv;
  write_field_csv(csv, f);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "nx,ny,spacing,origin_x,origin_y");
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == f.ny);
}
