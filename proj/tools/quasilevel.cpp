#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "quasilevel/quasilevel.hpp"

namespace ql = quasilevel;

namespace {

struct FieldArgs {
  double alpha_deg = 45.0;
  std::vector<std::int64_t> magic;
  std::vector<double> shift{0.0, 0.0};
  std::vector<double> center{0.0, 0.0};
  double edge = 8.0;
  double resolution = 1.0 / 64.0;
  double V0 = 1.0;
  double k = 1.0;
  unsigned workers = 0;
};

void add_field_options(CLI::App* cmd, FieldArgs& a) {
  cmd->add_option("--alpha", a.alpha_deg, "Rotation angle in degrees (open window)");
  cmd->add_option("--magic", a.magic, "Magic pair n m; samples the periodic cell")->expected(2);
  cmd->add_option("--shift", a.shift, "Shift a = (x, y)")->expected(2);
  cmd->add_option("--center", a.center, "Window centre (open window)")->expected(2);
  cmd->add_option("--edge", a.edge, "Window edge in units of T (open window)");
  cmd->add_option("--resolution", a.resolution, "Grid spacing in units of T");
  cmd->add_option("--V0", a.V0, "Amplitude");
  cmd->add_option("--k", a.k, "Wavenumber");
  cmd->add_option("--workers", a.workers, "Worker threads (0 = hardware)");
}

ql::GridField make_field(const FieldArgs& a) {
  const ql::Vec2 shift{a.shift[0], a.shift[1]};
  const double T = 2.0 * std::numbers::pi / a.k;
  if (!a.magic.empty()) {
    const ql::MagicAngle angle = ql::make_magic_angle(a.magic[0], a.magic[1], a.k);
    return ql::sample_cell_with_hints(angle, shift, a.resolution * T, a.V0);
  }
  const ql::PotentialSpec spec(a.V0, a.k, ql::Degrees{a.alpha_deg}, shift);
  const ql::Window w = ql::Window::centered({a.center[0], a.center[1]}, a.edge * T);
  return ql::sample_grid(spec, w, a.resolution * T, ql::BoundaryMode::open_window, a.workers);
}

class Output {
 public:
  explicit Output(const std::string& path, bool binary = false) {
    if (path.empty() || path == "-") return;
    file_.open(path, binary ? std::ios::binary : std::ios::out);
    if (!file_) throw ql::InvalidArgument("cannot open " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::ofstream open_in(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw ql::InvalidArgument("cannot open " + (dir / name).string());
  return os;
}

void cmd_convergents(int max_s, const std::string& out) {
  Output o(out);
  std::ostream& os = o.stream();
  os << "s,m,n,m0,n0,angle_deg,gap_to_45deg_rad,T_s_over_T,epsilon_s_over_V0\n";
  const double T = 2.0 * std::numbers::pi;
  for (const ql::Convergent& c : ql::convergents_sqrt2_minus_1(max_s)) {
    const ql::MagicAngle a = ql::make_magic_angle(c.n, c.m);
    os << c.s << ',' << c.m << ',' << c.n << ',' << a.m0 << ',' << a.n0 << ',' << ql::format_real(ql::to_degrees(ql::Radians{a.angle}).value)
       << ',' << ql::format_real(ql::angle_gap(std::numbers::pi / 4.0, c.n, c.m)) << ','
       << ql::format_real(ql::T_s(c.s) / T) << ',' << ql::format_real(ql::epsilon_s(c.s, 1.0, 1.0)) << '\n';
  }
}

void cmd_field(const FieldArgs& a, const std::string& format, const std::string& out) {
  const ql::GridField f = make_field(a);
  Output o(out, format == "binary");
  if (format == "binary") {
    ql::write_field_binary(o.stream(), f);
  } else {
    ql::write_field_csv(o.stream(), f);
  }
}

void cmd_components(const FieldArgs& a, double epsilon, const std::string& sign, const std::string& out) {
  const ql::GridField f = make_field(a);
  const ql::LevelSign s = sign == "above" ? ql::LevelSign::above : ql::LevelSign::below;
  const auto comps = ql::label_components(f, epsilon * a.V0, s);
  Output o(out);
  std::ostream& os = o.stream();
  os << "label,sign,n_cells,diameter,touches_boundary,wrap_i,wrap_j\n";
  for (const ql::LevelComponent& c : comps) {
    os << c.label << ',' << ql::to_string(c.sign) << ',' << c.n_cells() << ',' << ql::format_real(c.diameter) << ','
       << (c.touches_boundary ? "true" : "false") << ',' << c.wrap_vector[0] << ',' << c.wrap_vector[1] << '\n';
  }
}

void cmd_singular_net(std::int64_t n, std::int64_t m, const std::vector<std::int64_t>& index, double resolution,
                      const std::string& out) {
  const ql::MagicAngle angle = ql::make_magic_angle(n, m);
  const ql::Vec2 a = index.empty() ? ql::Vec2{} : ql::symmetric_shift_from_index(angle, index[0], index[1], index[2], index[3]);
  const ql::SingularNet net = ql::extract_singular_net(angle, a, resolution * angle.T());
  std::ofstream cp = open_in(out, "critical_points.csv");
  cp << "x,y,value,type,hess_det\n";
  for (const ql::CriticalPoint& p : net.critical_points) {
    cp << ql::format_real(p.position.x) << ',' << ql::format_real(p.position.y) << ',' << ql::format_real(p.value) << ','
       << ql::to_string(p.type) << ',' << ql::format_real(p.hessian_det) << '\n';
  }
  std::ofstream cells = open_in(out, "net_cells.csv");
  cells << "cell_id,sign,diameter,diameter_over_Tnm\n";
  for (const ql::NetCell& c : net.cells) {
    cells << c.cell_id << ',' << ql::to_string(c.sign) << ',' << ql::format_real(c.diameter) << ','
          << ql::format_real(c.diameter / angle.Tnm) << '\n';
  }
  std::printf("(%lld,%lld) shift (%.6g, %.6g): %zu critical points, %d zero-level saddles, %zu cells, %zu asymmetric "
              "faces, %zu islands%s\n",
              static_cast<long long>(n), static_cast<long long>(m), a.x, a.y, net.critical_points.size(),
              net.zero_level_saddles, net.cells.size(), net.asymmetric_faces.size(), net.islands.size(),
              net.non_generic ? " (non-generic)" : "");
}

int cmd_verify() {
  int failed = 0;
  for (const ql::CheckResult& r : ql::run_verify_suite()) {
    std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    if (!r.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-set percolation in quasiperiodic eightfold potentials"};
  app.require_subcommand(1);

  int max_s = 10;
  std::string conv_out;
  auto* conv = app.add_subcommand("convergents", "Convergents of sqrt(2) - 1 and derived scales");
  conv->add_option("--max-s", max_s, "Largest index s")->check(CLI::Range(1, 40));
  conv->add_option("--out", conv_out, "CSV path (stdout if omitted)");

  FieldArgs field_args;
  std::string format = "csv";
  std::string field_out;
  auto* field = app.add_subcommand("field", "Sample V on a grid");
  add_field_options(field, field_args);
  field->add_option("--format", format, "csv or binary")->check(CLI::IsMember({"csv", "binary"}));
  field->add_option("--out", field_out, "Output path (stdout if omitted)");

  FieldArgs comp_args;
  double epsilon = 0.0;
  std::string sign = "above";
  std::string comp_out;
  auto* comps = app.add_subcommand("components", "Connected components of a level set");
  add_field_options(comps, comp_args);
  comps->add_option("--epsilon", epsilon, "Level in units of V0")->required();
  comps->add_option("--sign", sign, "above or below")->check(CLI::IsMember({"above", "below"}));
  comps->add_option("--out", comp_out, "CSV path (stdout if omitted)");

  std::int64_t n = 2, m = 1;
  std::vector<std::int64_t> shift_index;
  double net_resolution = 1.0 / 64.0;
  std::string net_out = ".";
  auto* net = app.add_subcommand("singular-net", "Critical points and cells of the zero-level net");
  net->add_option("--n", n, "Magic pair n")->required();
  net->add_option("--m", m, "Magic pair m")->required();
  net->add_option("--shift-index", shift_index, "Symmetric shift index p q i j")->expected(4);
  net->add_option("--resolution", net_resolution, "Grid spacing in units of T");
  net->add_option("--out", net_out, "Output directory");

  std::string config_path;
  std::string eps_list, potential, anchor, sweep_out, tag;
  std::optional<double> window_factor, resolution;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<int> trials;
  auto* scaling = app.add_subcommand("scaling", "Sweep epsilon, measure D_hat and fit the exponent");
  scaling->add_option("--config", config_path, "Config file (key = value)");
  scaling->add_option("--potential", potential, "eightfold | magic(n,m) | general_alpha(deg) | random_wave(N,seed)");
  scaling->add_option("--epsilon-list", eps_list, "Comma-separated levels in units of V0");
  scaling->add_option("--window-factor", window_factor, "Window edge over diameter bound");
  scaling->add_option("--resolution", resolution, "Grid spacing in units of T");
  scaling->add_option("--anchor", anchor, "origin or random")->check(CLI::IsMember({"origin", "random"}));
  scaling->add_option("--seed", seed, "Seed for random anchors");
  scaling->add_option("--trials", trials, "Windows per level");
  scaling->add_option("--workers", workers, "Worker threads (0 = hardware)");
  scaling->add_option("--tag", tag, "Label written to loglog.dat");
  scaling->add_option("--out", sweep_out, "Output directory");

  int s_min = 2, s_max = 5;
  std::vector<double> stair_shift{0.0, 0.0};
  double stair_resolution = 1.0 / 32.0;
  unsigned stair_workers = 0;
  std::string stair_out;
  auto* stair = app.add_subcommand("staircase", "Closed-line sizes just above each epsilon_s");
  stair->add_option("--s-min", s_min, "First index");
  stair->add_option("--s-max", s_max, "Last index");
  stair->add_option("--shift", stair_shift, "Shift a = (x, y)")->expected(2);
  stair->add_option("--resolution", stair_resolution, "Grid spacing in units of T");
  stair->add_option("--workers", stair_workers, "Worker threads (0 = hardware)");
  stair->add_option("--out", stair_out, "CSV path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*conv) cmd_convergents(max_s, conv_out);
    if (*field) cmd_field(field_args, format, field_out);
    if (*comps) cmd_components(comp_args, epsilon, sign, comp_out);
    if (*net) cmd_singular_net(n, m, shift_index, net_resolution, net_out);
    if (*scaling) {
      ql::SweepConfig cfg = config_path.empty() ? ql::SweepConfig{} : ql::load_config(config_path);
      if (cfg.epsilon_list.empty()) cfg.epsilon_list = ql::default_epsilon_list();
      if (!potential.empty()) ql::apply_config_value(cfg, "potential", potential);
      if (!eps_list.empty()) ql::apply_config_value(cfg, "epsilon_list", eps_list);
      if (window_factor) cfg.window_factor = *window_factor;
      if (resolution) cfg.resolution = *resolution;
      if (!anchor.empty()) ql::apply_config_value(cfg, "anchor", anchor);
      if (seed) cfg.seed = *seed;
      if (trials) cfg.trials = *trials;
      if (workers) cfg.workers = *workers;
      if (!tag.empty()) cfg.tag = tag;
      if (!sweep_out.empty()) cfg.output_path = sweep_out;
      const ql::ScalingReport report = ql::run_sweep(cfg);
      ql::write_sweep_outputs(report, cfg.output_path);
      std::size_t violations = 0;
      for (const ql::SweepRecord& r : report.records) violations += r.bound_satisfied ? 0 : 1;
      if (report.fit.valid) {
        std::printf("exponent %.4f +- %.4f over %d levels; %zu bound violations\n", report.fit.exponent,
                    report.fit.std_error, report.fit.n_points, violations);
      } else {
        std::printf("no valid fit; %zu bound violations\n", violations);
      }
    }
    if (*stair) {
      const auto rows = ql::staircase_check(s_min, s_max, {stair_shift[0], stair_shift[1]}, 1.0, 1.0, stair_resolution,
                                            stair_workers);
      Output o(stair_out);
      ql::write_staircase_csv(o.stream(), rows);
    }
    if (*verify) return cmd_verify();
  } catch (const ql::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
