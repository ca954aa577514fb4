#pragma once

#include <string>

#include "quasilevel/sweep.hpp"

namespace quasilevel {

/// Parses flat "key = value" text with '#' comments into cfg. Unknown keys are errors.
void parse_config_text(const std::string& text, SweepConfig& cfg);
SweepConfig load_config(const std::string& path);

/// Applies one key/value pair (used by the parser and by command-line overrides).
void apply_config_value(SweepConfig& cfg, const std::string& key, const std::string& value);

std::vector<double> parse_real_list(const std::string& text);

}  // namespace quasilevel
