#include "quasilevel/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "quasilevel/errors.hpp"

namespace quasilevel {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_report_csv(std::ostream& os, const ScalingReport& report) {
  os << "epsilon,sign,window_edge,spacing,d_hat,censored,bound,bound_satisfied\n";
  for (const SweepRecord& r : report.records) {
    os << format_real(r.epsilon) << ',' << r.sign << ',' << format_real(r.window_edge) << ','
       << format_real(r.spacing) << ',' << format_real(r.d_hat) << ',' << r.censored << ','
       << format_real(r.bound) << ',' << (r.bound_satisfied ? "true" : "false") << '\n';
  }
}

void write_fit_csv(std::ostream& os, const ScalingReport& report) {
  os << "exponent,stderr,n_points\n";
  if (report.fit.valid) {
    os << format_real(report.fit.exponent) << ',' << format_real(report.fit.std_error) << ','
       << report.fit.n_points << '\n';
  } else {
    os << "nan,nan," << report.fit.n_points << '\n';
  }
}

void write_loglog(std::ostream& os, const ScalingReport& report) {
  os << "# ln_epsilon ln_d_hat (" << report.tag << ")\n";
  for (const auto& [x, y] : report.loglog) os << format_real(x) << ' ' << format_real(y) << '\n';
}

void write_sweep_outputs(const ScalingReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  auto open = [&](const char* name) {
    std::ofstream f(base / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (base / name).string());
    return f;
  };
  {
    auto f = open("report.csv");
    write_report_csv(f, report);
  }
  {
    auto f = open("fit.csv");
    write_fit_csv(f, report);
  }
  {
    auto f = open("loglog.dat");
    write_loglog(f, report);
  }
}

void write_staircase_csv(std::ostream& os, const std::vector<StaircaseRow>& rows) {
  os << "s,epsilon_s,sqrt2_T_s,D_hat,pass\n";
  for (const StaircaseRow& r : rows) {
    os << r.s << ',' << format_real(r.epsilon_s) << ',' << format_real(r.sqrt2_T_s) << ',' << format_real(r.d_hat)
       << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace quasilevel
