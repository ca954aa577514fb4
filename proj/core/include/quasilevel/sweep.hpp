#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "quasilevel/potential.hpp"
#include "quasilevel/streaming_labeler.hpp"

namespace quasilevel {

enum class PotentialKind { eightfold, magic, general_alpha, random_wave };

struct PotentialChoice {
  PotentialKind kind = PotentialKind::eightfold;
  std::int64_t n = 0;
  std::int64_t m = 0;
  double alpha_deg = 45.0;
  int waves = 64;
  std::uint64_t wave_seed = 1;
};

/// "eightfold", "magic(n,m)", "general_alpha(deg)", "random_wave(N,seed)"
PotentialChoice parse_potential(const std::string& text);
std::string to_string(const PotentialChoice& p);

enum class AnchorMode { origin, random };

struct SweepConfig {
  PotentialChoice potential;
  double V0 = 1.0;
  double k = 1.0;
  Vec2 shift;
  /// Levels in units of V0, strictly decreasing in (0, 4).
  std::vector<double> epsilon_list;
  /// Window edge = window_factor * diameter_bound(epsilon).
  double window_factor = 2.0;
  /// Grid spacing in units of T.
  double resolution = 1.0 / 32.0;
  AnchorMode anchor = AnchorMode::origin;
  int trials = 1;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double memory_cap_bytes = 8.0 * 1024 * 1024 * 1024;
  std::string output_path = ".";
  std::string tag = "quasiperiodic";

  void validate() const;
  double T() const;
};

/// Geometric list with ratio sqrt(2) - 1 starting at V0.
std::vector<double> default_epsilon_list();

std::vector<PlaneWave> random_waves(int N, std::uint64_t seed, double V0, double k);
std::vector<PlaneWave> sweep_waves(const SweepConfig& cfg);

/// Closed-component statistics of both signs at each level, on one window evaluated once.
std::vector<ClosedComponentStats> measure_window(const std::vector<PlaneWave>& waves, Vec2 center, double edge,
                                                 double spacing, const std::vector<double>& levels);

struct SweepRecord {
  double epsilon = 0.0;
  char sign = '+';
  double window_edge = 0.0;
  double spacing = 0.0;
  double d_hat = 0.0;
  std::int64_t censored = 0;
  std::int64_t closed = 0;
  double bound = 0.0;
  bool bound_satisfied = false;
};

struct FitResult {
  double exponent = 0.0;
  double std_error = 0.0;
  int n_points = 0;
  bool valid = false;
};

struct ScalingReport {
  std::string tag;
  std::vector<SweepRecord> records;
  FitResult fit;
  /// (ln epsilon, ln D_hat) for the points that entered the fit.
  std::vector<std::pair<double, double>> loglog;
};

/// Spacing actually used for a window, raised toward T/16 to respect the memory cap.
double capped_spacing(double edge, double spacing, double T, double memory_cap_bytes);

ScalingReport run_sweep(const SweepConfig& cfg);

/// Ordinary least squares of ln y on ln x: (slope, standard error). Throws TooFewPoints below 4 points.
std::pair<double, double> fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// Fit over the per-epsilon maximum D_hat of records whose censored fraction is below 1/2.
FitResult fit_exponent(const std::vector<SweepRecord>& records, std::vector<std::pair<double, double>>* loglog = nullptr);

ScalingReport random_wave_baseline(int N, std::uint64_t seed, const std::vector<double>& epsilon_list,
                                   SweepConfig base = {});

struct StaircaseRow {
  int s = 0;
  double epsilon = 0.0;
  double epsilon_s = 0.0;
  double sqrt2_T_s = 0.0;
  double spacing = 0.0;
  double window_edge = 0.0;
  double d_hat = 0.0;
  bool pass = false;
};

/// For each s: level 1.05 epsilon_s, window of edge 3 sqrt2 T_s, pass when D_hat <= sqrt2 T_s + 2h.
std::vector<StaircaseRow> staircase_check(int s_min, int s_max, Vec2 a, double V0 = 1.0, double k = 1.0,
                                          double resolution = 1.0 / 32.0, unsigned workers = 1);

}  // namespace quasilevel
