#pragma once

#include <ostream>
#include <string>

#include "quasilevel/sweep.hpp"

namespace quasilevel {

/// %.17g
std::string format_real(double v);

void write_report_csv(std::ostream& os, const ScalingReport& report);
void write_fit_csv(std::ostream& os, const ScalingReport& report);
void write_loglog(std::ostream& os, const ScalingReport& report);

/// report.csv, fit.csv and loglog.dat under dir (created if missing).
void write_sweep_outputs(const ScalingReport& report, const std::string& dir);

void write_staircase_csv(std::ostream& os, const std::vector<StaircaseRow>& rows);

}  // namespace quasilevel
