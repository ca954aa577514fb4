#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "quasilevel/errors.hpp"
#include "quasilevel/magic_angles.hpp"
#include "quasilevel/report_io.hpp"
#include "quasilevel/sweep.hpp"
#include "quasilevel/sweep_config.hpp"

using namespace quasilevel;
using std::numbers::pi;

namespace {

std::string report_text(const ScalingReport& r) {
  std::ostringstream os;
  write_report_csv(os, r);
  return os.str();
}

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.epsilon_list = {2.0, 1.5, 1.0, 0.7, 0.5};
  cfg.resolution = 1.0 / 16.0;
  return cfg;
}

}  // namespace

TEST_CASE("power-law fit recovers exact exponents") {
  for (double p : {-1.0, -0.5, -2.3, 0.7}) {
    std::vector<double> x, y;
    for (int i = 0; i < 8; ++i) {
      x.push_back(0.05 * std::pow(1.6, i));
      y.push_back(3.7 * std::pow(x.back(), p));
    }
    const auto [slope, se] = fit_power_law(x, y);
    CHECK(slope == doctest::Approx(p).epsilon(1e-12));
    CHECK(se <= 1e-10);
  }
}

TEST_CASE("power-law fit on noisy data") {
  oracle::Uniform u(40);
  std::vector<double> x, y;
  for (int i = 0; i < 40; ++i) {
    x.push_back(std::exp(u(-4, 0)));
    y.push_back(std::pow(x.back(), -1.5) * std::exp(u(-0.05, 0.05)));
  }
  const auto [slope, se] = fit_power_law(x, y);
  CHECK(std::abs(slope + 1.5) <= 4 * se + 1e-3);
  CHECK(se > 0.0);
  CHECK(se < 0.05);
}

TEST_CASE("power-law fit preconditions") {
  CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, 2, 3}), TooFewPoints);
  CHECK_THROWS_AS(fit_power_law({1, 2, 3, 4}, {1, 2, 3}), InvalidArgument);
  CHECK_THROWS_AS(fit_power_law({1, 2, -3, 4}, {1, 2, 3, 4}), InvalidArgument);
  CHECK_THROWS_AS(fit_power_law({2, 2, 2, 2}, {1, 2, 3, 4}), InvalidArgument);
  CHECK_THROWS_AS(fit_exponent({}), TooFewPoints);
}

TEST_CASE("fit uses the per-epsilon maximum and skips censored levels") {
  std::vector<SweepRecord> recs;
  for (double e : {0.8, 0.4, 0.2, 0.1, 0.05}) {
    SweepRecord a;
    a.epsilon = e;
    a.sign = '+';
    a.d_hat = 2.0 / e;
    a.closed = 10;
    SweepRecord b = a;
    b.sign = '-';
    b.d_hat = 1.0 / e;
    recs.push_back(a);
    recs.push_back(b);
  }
  std::vector<std::pair<double, double>> ll;
  FitResult f = fit_exponent(recs, &ll);
  CHECK(f.exponent == doctest::Approx(-1.0));
  CHECK(f.n_points == 5);
  CHECK(ll.size() == 5);
  CHECK(ll[0].first == doctest::Approx(std::log(0.8)));
  CHECK(ll[0].second == doctest::Approx(std::log(2.5)));
  recs[8].censored = 30;
  recs[9].censored = 30;
  f = fit_exponent(recs);
  CHECK(f.n_points == 4);
}

TEST_CASE("config parsing") {
  SweepConfig cfg;
  parse_config_text(
      "# comment\n"
      "potential = magic(5, 2)\n"
      "epsilon_list = 1.0, 0.5,0.25 # trailing\n"
      "window_factor = 3\n"
      "resolution = 0.03125\n"
      "anchor = random\n"
      "trials = 4\n"
      "seed = 99\n"
      "workers = 2\n"
      "shift = 0.5, -1\n"
      "memory_cap_gib = 0.5\n"
      "tag = test\n"
      "\n",
      cfg);
  CHECK(cfg.potential.kind == PotentialKind::magic);
  CHECK(cfg.potential.n == 5);
  CHECK(cfg.potential.m == 2);
  CHECK(cfg.epsilon_list == std::vector<double>{1.0, 0.5, 0.25});
  CHECK(cfg.window_factor == 3.0);
  CHECK(cfg.resolution == 1.0 / 32.0);
  CHECK(cfg.anchor == AnchorMode::random);
  CHECK(cfg.trials == 4);
  CHECK(cfg.seed == 99);
  CHECK(cfg.workers == 2);
  CHECK(cfg.shift.x == 0.5);
  CHECK(cfg.shift.y == -1.0);
  CHECK(cfg.memory_cap_bytes == 0.5 * 1024 * 1024 * 1024);
  CHECK(cfg.tag == "test");
  CHECK_NOTHROW(cfg.validate());

  SweepConfig bad;
  CHECK_THROWS_AS(parse_config_text("colour = blue\n", bad), ConfigError);
  CHECK_THROWS_AS(parse_config_text("just words\n", bad), ConfigError);
  CHECK_THROWS_AS(parse_config_text("trials = many\n", bad), ConfigError);
  CHECK_THROWS_AS(parse_config_text("anchor = left\n", bad), ConfigError);
  CHECK_THROWS_AS(parse_config_text("workers = 0\n", bad), ConfigError);
  CHECK_THROWS_AS(parse_config_text("shift = 1\n", bad), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/quasilevel.cfg"), ConfigError);
}

TEST_CASE("config validation") {
  auto invalid = [](auto mutate) {
    SweepConfig cfg = small_config();
    mutate(cfg);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  };
  CHECK_NOTHROW(small_config().validate());
  invalid([](SweepConfig& c) { c.epsilon_list.clear(); });
  invalid([](SweepConfig& c) { c.epsilon_list = {0.5, 1.0}; });
  invalid([](SweepConfig& c) { c.epsilon_list = {4.5}; });
  invalid([](SweepConfig& c) { c.epsilon_list = {0.0}; });
  invalid([](SweepConfig& c) { c.window_factor = 1.5; });
  invalid([](SweepConfig& c) { c.resolution = 0.1; });
  invalid([](SweepConfig& c) { c.trials = 0; });
  invalid([](SweepConfig& c) { c.V0 = 0; });
  invalid([](SweepConfig& c) { c.shift = {NAN, 0}; });
  invalid([](SweepConfig& c) { c.potential = parse_potential("random_wave(8, 1)"); });
  invalid([](SweepConfig& c) { c.potential = parse_potential("general_alpha(95)"); });
}

TEST_CASE("potential strings") {
  CHECK(parse_potential("eightfold").kind == PotentialKind::eightfold);
  const PotentialChoice m = parse_potential(" magic( 12 ,5 ) ");
  CHECK(m.kind == PotentialKind::magic);
  CHECK(m.n == 12);
  CHECK(m.m == 5);
  CHECK(to_string(m) == "magic(12,5)");
  const PotentialChoice g = parse_potential("general_alpha(30.5)");
  CHECK(g.alpha_deg == 30.5);
  const PotentialChoice r = parse_potential("random_wave(64,7)");
  CHECK(r.waves == 64);
  CHECK(r.wave_seed == 7);
  CHECK(parse_potential(to_string(r)).waves == 64);
  CHECK_THROWS_AS(parse_potential("magic(2,2)"), InvalidPair);
  CHECK_THROWS_AS(parse_potential("twelvefold"), ConfigError);
  CHECK_THROWS_AS(parse_potential("general_alpha(abc)"), ConfigError);
}

TEST_CASE("report format") {
  SweepConfig cfg = small_config();
  const ScalingReport r = run_sweep(cfg);
  REQUIRE(r.records.size() == 2 * cfg.epsilon_list.size());
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    CHECK(r.records[i].epsilon == cfg.epsilon_list[i / 2]);
    CHECK(r.records[i].sign == (i % 2 == 0 ? '+' : '-'));
    const double bound = pi * 2 * pi * (4 + std::numbers::sqrt2) * (std::numbers::sqrt2 + 1) / r.records[i].epsilon;
    CHECK(r.records[i].bound == doctest::Approx(bound));
  }
  std::istringstream in(report_text(r));
  std::string line;
  std::getline(in, line);
  CHECK(line == "epsilon,sign,window_edge,spacing,d_hat,censored,bound,bound_satisfied");
  std::getline(in, line);
  CHECK(line.rfind("2,+,", 0) == 0);
  std::stringstream fields(line);
  std::string cell;
  std::vector<std::string> cells;
  while (std::getline(fields, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 8);
  CHECK(std::stod(cells[2]) == r.records[0].window_edge);
  CHECK(std::stod(cells[6]) == r.records[0].bound);
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(2.0) == "2");
}

TEST_CASE("sweep output is independent of the worker count") {
  SweepConfig cfg = small_config();
  cfg.anchor = AnchorMode::random;
  cfg.trials = 3;
  cfg.seed = 5;
  cfg.workers = 1;
  const std::string one = report_text(run_sweep(cfg));
  cfg.workers = 8;
  const std::string eight = report_text(run_sweep(cfg));
  CHECK(one == eight);
  cfg.seed = 6;
  CHECK(report_text(run_sweep(cfg)) != one);
}

TEST_CASE("bounds hold on a small eightfold sweep") {
  const ScalingReport r = run_sweep(small_config());
  for (const SweepRecord& rec : r.records) {
    CHECK(!std::isnan(rec.d_hat));
    CHECK(rec.bound_satisfied);
  }
  CHECK(r.fit.valid);
}

TEST_CASE("random-wave field moments") {
  const auto waves = random_waves(64, 3, 1.0, 1.0);
  CHECK(waves.size() == 64);
  oracle::Uniform u(41);
  double sum = 0.0, sum2 = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const Vec2 r{u(0, 5000), u(0, 5000)};
    const double v = eval_waves(r, waves);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.08);
  for (const PlaneWave& w : waves) CHECK(norm(w.g) == doctest::Approx(1.0));
  CHECK_THROWS_AS(random_waves(8, 1, 1, 1), InvalidArgument);
  const auto again = random_waves(64, 3, 1.0, 1.0);
  CHECK(again[17].phase == waves[17].phase);
}

TEST_CASE("staircase rows") {
  const auto rows = staircase_check(2, 3, {0, 0});
  REQUIRE(rows.size() == 2);
  for (const StaircaseRow& r : rows) {
    CHECK(r.sqrt2_T_s == doctest::Approx(std::numbers::sqrt2 * T_s(r.s, 1.0)));
    CHECK(r.epsilon == doctest::Approx(1.05 * epsilon_s(r.s, 1, 1)));
    CHECK(r.pass);
  }
  CHECK_THROWS_AS(staircase_check(3, 2, {0, 0}), InvalidArgument);
  std::ostringstream os;
  write_staircase_csv(os, rows);
  CHECK(os.str().rfind("s,epsilon_s,sqrt2_T_s,D_hat,pass\n2,", 0) == 0);
}

TEST_CASE("memory cap") {
  const double T = 2 * pi;
  CHECK(capped_spacing(10 * T, T / 32, T, 1e9) == T / 32);
  const double h = capped_spacing(50 * T, T / 32, T, 8.0 * 1000 * 1000);
  CHECK(h > T / 32);
  CHECK(h <= T / 16);
  CHECK(std::pow(std::ceil(50 * T / h), 2) * 8.0 <= 8.0 * 1000 * 1000);
  CHECK_THROWS_AS(capped_spacing(1000 * T, T / 32, T, 8.0 * 1000 * 1000), MemoryCapExceeded);
  SweepConfig cfg = small_config();
  cfg.epsilon_list = {0.01};
  cfg.memory_cap_bytes = 1e6;
  CHECK_THROWS_AS(run_sweep(cfg), MemoryCapExceeded);
}
