#include "quasilevel/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <regex>
#include <string>

#include "quasilevel/errors.hpp"
#include "quasilevel/magic_angles.hpp"
#include "quasilevel/parallel.hpp"
#include "quasilevel/rng.hpp"
#include "quasilevel/wave_rows.hpp"

namespace quasilevel {

namespace {

constexpr double kAnchorExtent = 1.0e4;

struct Job {
  std::size_t eps_index;
  int trial;
  Vec2 center;
  double edge;
  double spacing;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PotentialChoice parse_potential(const std::string& text) {
  static const std::regex eight(R"(\s*eightfold\s*)");
  static const std::regex magic(R"(\s*magic\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  static const std::regex general(R"(\s*general_alpha\s*\(\s*([-+0-9.eE]+)\s*\)\s*)");
  static const std::regex random(R"(\s*random_wave\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  std::smatch mt;
  PotentialChoice p;
  try {
    if (std::regex_match(text, eight)) {
      p.kind = PotentialKind::eightfold;
    } else if (std::regex_match(text, mt, magic)) {
      p.kind = PotentialKind::magic;
      p.n = std::stoll(mt[1]);
      p.m = std::stoll(mt[2]);
      make_magic_angle(p.n, p.m);
    } else if (std::regex_match(text, mt, general)) {
      p.kind = PotentialKind::general_alpha;
      p.alpha_deg = std::stod(mt[1]);
    } else if (std::regex_match(text, mt, random)) {
      p.kind = PotentialKind::random_wave;
      p.waves = std::stoi(mt[1]);
      p.wave_seed = std::stoull(mt[2]);
    } else {
      throw ConfigError("unknown potential '" + text + "'");
    }
  } catch (const std::logic_error&) {
    throw ConfigError("malformed potential '" + text + "'");
  }
  return p;
}

std::string to_string(const PotentialChoice& p) {
  switch (p.kind) {
    case PotentialKind::eightfold:
      return "eightfold";
    case PotentialKind::magic:
      return "magic(" + std::to_string(p.n) + "," + std::to_string(p.m) + ")";
    case PotentialKind::general_alpha:
      return "general_alpha(" + format_double(p.alpha_deg) + ")";
    case PotentialKind::random_wave:
      return "random_wave(" + std::to_string(p.waves) + "," + std::to_string(p.wave_seed) + ")";
  }
  return "eightfold";
}

double SweepConfig::T() const { return 2.0 * std::numbers::pi / k; }

void SweepConfig::validate() const {
  if (!(V0 > 0.0) || !(k > 0.0)) throw ConfigError("V0 and k must be positive");
  if (epsilon_list.empty()) throw ConfigError("epsilon_list is empty");
  for (std::size_t i = 0; i < epsilon_list.size(); ++i) {
    const double e = epsilon_list[i];
    if (!(e > 0.0 && e < 4.0)) throw ConfigError("epsilon_list entries must lie in (0, 4)");
    if (i > 0 && !(e < epsilon_list[i - 1])) throw ConfigError("epsilon_list must be strictly decreasing");
  }
  if (!(window_factor >= 2.0)) throw ConfigError("window_factor must be at least 2");
  if (!(resolution > 0.0) || resolution > 1.0 / 16.0 * (1.0 + 1e-12)) {
    throw ConfigError("resolution must lie in (0, 1/16] (units of T)");
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (!(memory_cap_bytes > 0.0)) throw ConfigError("memory cap must be positive");
  if (!is_finite(shift)) throw ConfigError("shift must be finite");
  if (potential.kind == PotentialKind::random_wave && potential.waves < 16) {
    throw ConfigError("random_wave needs at least 16 waves");
  }
  if (potential.kind == PotentialKind::general_alpha &&
      !(potential.alpha_deg > 0.0 && potential.alpha_deg <= 90.0)) {
    throw ConfigError("general_alpha angle must lie in (0, 90]");
  }
}

std::vector<double> default_epsilon_list() {
  std::vector<double> out;
  double e = 1.0;
  for (int i = 0; i < 4; ++i) {
    out.push_back(e);
    e *= std::numbers::sqrt2 - 1.0;
  }
  return out;
}

std::vector<PlaneWave> random_waves(int N, std::uint64_t seed, double V0, double k) {
  if (N < 16) throw InvalidArgument("random wave baseline needs N >= 16");
  Rng rng(seed);
  std::vector<PlaneWave> waves;
  waves.reserve(static_cast<std::size_t>(N));
  const double amp = V0 * std::sqrt(2.0 / N);
  for (int i = 0; i < N; ++i) {
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    waves.push_back({{k * std::cos(theta), k * std::sin(theta)}, -phi, amp});
  }
  return waves;
}

std::vector<PlaneWave> sweep_waves(const SweepConfig& cfg) {
  switch (cfg.potential.kind) {
    case PotentialKind::eightfold: {
      const auto w = plane_waves(PotentialSpec(cfg.V0, cfg.k, Degrees{45.0}, cfg.shift));
      return {w.begin(), w.end()};
    }
    case PotentialKind::magic: {
      const MagicAngle a = make_magic_angle(cfg.potential.n, cfg.potential.m, cfg.k);
      const auto w = plane_waves(PotentialSpec(cfg.V0, cfg.k, Radians{a.angle}, cfg.shift));
      return {w.begin(), w.end()};
    }
    case PotentialKind::general_alpha: {
      const auto w = plane_waves(PotentialSpec(cfg.V0, cfg.k, Degrees{cfg.potential.alpha_deg}, cfg.shift));
      return {w.begin(), w.end()};
    }
    case PotentialKind::random_wave:
      return random_waves(cfg.potential.waves, cfg.potential.wave_seed, cfg.V0, cfg.k);
  }
  return {};
}

std::vector<ClosedComponentStats> measure_window(const std::vector<PlaneWave>& waves, Vec2 center, double edge,
                                                 double spacing, const std::vector<double>& levels) {
  if (!(edge > 0.0) || !(spacing > 0.0)) throw InvalidArgument("window edge and spacing must be positive");
  const double cells = std::ceil(edge / spacing - 1e-9);
  if (cells > static_cast<double>(std::numeric_limits<std::int32_t>::max() / 2)) {
    throw MemoryCapExceeded("window has too many nodes per row");
  }
  const int n = static_cast<int>(cells);
  const Vec2 origin = center - Vec2{edge / 2.0, edge / 2.0};
  const WaveRowEvaluator eval(waves, origin, spacing, n);
  std::vector<StreamingLabeler> labelers;
  labelers.reserve(2 * levels.size());
  for (double level : levels) {
    labelers.emplace_back(n, n, spacing, level, LevelSign::above);
    labelers.emplace_back(n, n, spacing, level, LevelSign::below);
  }
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    eval.row(j, row.data());
    for (StreamingLabeler& l : labelers) l.push_row(row.data());
  }
  std::vector<ClosedComponentStats> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const ClosedComponentStats a = labelers[2 * i].finish();
    const ClosedComponentStats b = labelers[2 * i + 1].finish();
    ClosedComponentStats s;
    s.censored = a.censored + b.censored;
    s.closed = a.closed + b.closed;
    if (std::isnan(a.d_hat)) {
      s.d_hat = b.d_hat;
    } else if (std::isnan(b.d_hat)) {
      s.d_hat = a.d_hat;
    } else {
      s.d_hat = std::max(a.d_hat, b.d_hat);
    }
    out.push_back(s);
  }
  return out;
}

double capped_spacing(double edge, double spacing, double T, double memory_cap_bytes) {
  const double n = std::ceil(edge / spacing - 1e-9);
  if (n * n * 8.0 <= memory_cap_bytes) return spacing;
  const double n_max = std::floor(std::sqrt(memory_cap_bytes / 8.0));
  const double degraded = edge / n_max;
  if (degraded > T / 16.0) {
    throw MemoryCapExceeded("window edge " + format_double(edge) + " needs spacing " + format_double(degraded) +
                            " beyond the T/16 floor under the memory cap");
  }
  // Guard against the ceiling above pushing the node count past the cap.
  return degraded * (1.0 + 1e-12);
}

ScalingReport run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<PlaneWave> waves = sweep_waves(cfg);
  const double T = cfg.T();

  std::vector<Vec2> anchors;
  if (cfg.anchor == AnchorMode::origin) {
    anchors.push_back({0.0, 0.0});
  } else {
    Rng rng(cfg.seed);
    for (int t = 0; t < cfg.trials; ++t) {
      const double x = rng.uniform(0.0, kAnchorExtent * T);
      const double y = rng.uniform(0.0, kAnchorExtent * T);
      anchors.push_back({x, y});
    }
  }

  std::vector<Job> jobs;
  for (std::size_t e = 0; e < cfg.epsilon_list.size(); ++e) {
    const double eps = cfg.epsilon_list[e] * cfg.V0;
    const double edge = cfg.window_factor * diameter_bound(eps, cfg.V0, cfg.k);
    const double spacing = capped_spacing(edge, cfg.resolution * T, T, cfg.memory_cap_bytes);
    for (std::size_t t = 0; t < anchors.size(); ++t) {
      jobs.push_back({e, static_cast<int>(t), anchors[t], edge, spacing});
    }
  }
  // Largest windows first so the pool stays balanced; results are indexed, not appended.
  std::vector<std::size_t> order(jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return jobs[a].edge > jobs[b].edge; });

  std::vector<std::vector<ClosedComponentStats>> results(jobs.size());
  parallel_for(order.size(), cfg.workers, [&](std::size_t idx) {
    const Job& job = jobs[order[idx]];
    const double eps = cfg.epsilon_list[job.eps_index] * cfg.V0;
    results[order[idx]] = measure_window(waves, job.center, job.edge, job.spacing, {eps, -eps});
  });

  ScalingReport report;
  report.tag = cfg.tag;
  for (std::size_t e = 0; e < cfg.epsilon_list.size(); ++e) {
    const double eps = cfg.epsilon_list[e] * cfg.V0;
    for (int side = 0; side < 2; ++side) {
      SweepRecord r;
      r.epsilon = eps;
      r.sign = side == 0 ? '+' : '-';
      r.bound = diameter_bound(eps, cfg.V0, cfg.k);
      double sum = 0.0;
      int used = 0;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].eps_index != e) continue;
        r.window_edge = jobs[j].edge;
        r.spacing = jobs[j].spacing;
        const ClosedComponentStats& s = results[j][static_cast<std::size_t>(side)];
        r.censored += s.censored;
        r.closed += s.closed;
        if (s.closed > 0 && !std::isnan(s.d_hat)) {
          sum += s.d_hat;
          ++used;
        }
      }
      // A window where every component touches the boundary records NaN.
      r.d_hat = used > 0 ? sum / used : std::numeric_limits<double>::quiet_NaN();
      r.bound_satisfied = !std::isnan(r.d_hat) && r.d_hat <= r.bound;
      report.records.push_back(r);
    }
  }
  try {
    report.fit = fit_exponent(report.records, &report.loglog);
  } catch (const TooFewPoints&) {
    report.fit = FitResult{};
    report.loglog.clear();
  }
  return report;
}

std::pair<double, double> fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("fit inputs differ in length");
  if (x.size() < 4) throw TooFewPoints("power-law fit needs at least 4 points, got " + std::to_string(x.size()));
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("power-law fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("power-law fit needs distinct abscissae");
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = ly[i] - my - slope * (lx[i] - mx);
    rss += r * r;
  }
  const double se = std::sqrt(rss / (n - 2.0) / sxx);
  return {slope, se};
}

FitResult fit_exponent(const std::vector<SweepRecord>& records, std::vector<std::pair<double, double>>* loglog) {
  struct Agg {
    double d = -1.0;
    std::int64_t censored = 0;
    std::int64_t total = 0;
  };
  std::map<double, Agg, std::greater<>> by_eps;
  for (const SweepRecord& r : records) {
    Agg& a = by_eps[r.epsilon];
    if (!std::isnan(r.d_hat)) a.d = std::max(a.d, r.d_hat);
    a.censored += r.censored;
    a.total += r.censored + r.closed;
  }
  std::vector<double> xs, ys;
  for (const auto& [eps, a] : by_eps) {
    if (!(a.d > 0.0)) continue;
    if (a.total > 0 && 2 * a.censored >= a.total) continue;
    xs.push_back(eps);
    ys.push_back(a.d);
  }
  const auto [slope, se] = fit_power_law(xs, ys);
  if (loglog) {
    loglog->clear();
    for (std::size_t i = 0; i < xs.size(); ++i) loglog->emplace_back(std::log(xs[i]), std::log(ys[i]));
  }
  return FitResult{slope, se, static_cast<int>(xs.size()), true};
}

ScalingReport random_wave_baseline(int N, std::uint64_t seed, const std::vector<double>& epsilon_list,
                                   SweepConfig base) {
  if (N < 16) throw InvalidArgument("random wave baseline needs N >= 16");
  base.potential.kind = PotentialKind::random_wave;
  base.potential.waves = N;
  base.potential.wave_seed = seed;
  base.epsilon_list = epsilon_list;
  base.tag = "baseline";
  return run_sweep(base);
}

std::vector<StaircaseRow> staircase_check(int s_min, int s_max, Vec2 a, double V0, double k, double resolution,
                                          unsigned workers) {
  if (s_min < 1 || s_max < s_min) throw InvalidArgument("invalid s range");
  convergents_sqrt2_minus_1(s_max);
  const double T = 2.0 * std::numbers::pi / k;
  const double h = resolution * T;
  check_spacing(h, T);
  const auto w4 = plane_waves(PotentialSpec(V0, k, Degrees{45.0}, a));
  const std::vector<PlaneWave> waves(w4.begin(), w4.end());
  std::vector<StaircaseRow> rows(static_cast<std::size_t>(s_max - s_min + 1));
  parallel_for(rows.size(), workers, [&](std::size_t idx) {
    StaircaseRow& r = rows[idx];
    r.s = s_min + static_cast<int>(idx);
    r.epsilon_s = epsilon_s(r.s, V0, k);
    r.epsilon = 1.05 * r.epsilon_s;
    r.sqrt2_T_s = std::numbers::sqrt2 * T_s(r.s, k);
    r.spacing = h;
    r.window_edge = 3.0 * r.sqrt2_T_s;
    const auto stats = measure_window(waves, {0.0, 0.0}, r.window_edge, h, {r.epsilon, -r.epsilon});
    double d = -1.0;
    for (const ClosedComponentStats& s : stats) {
      if (!std::isnan(s.d_hat)) d = std::max(d, s.d_hat);
    }
    r.d_hat = d < 0.0 ? std::numeric_limits<double>::quiet_NaN() : d;
    r.pass = !std::isnan(r.d_hat) && r.d_hat <= r.sqrt2_T_s + 2.0 * h;
  });
  return rows;
}

}  // namespace quasilevel
