#include "quasilevel/sweep_config.hpp"

#include <fstream>
#include <sstream>

#include "quasilevel/errors.hpp"

namespace quasilevel {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
}

long long parse_int(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    out.push_back(parse_real("list", t));
  }
  return out;
}

void apply_config_value(SweepConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "potential") {
    cfg.potential = parse_potential(value);
  } else if (key == "shift") {
    const auto v = parse_real_list(value);
    if (v.size() != 2) throw ConfigError("shift expects two numbers");
    cfg.shift = {v[0], v[1]};
  } else if (key == "epsilon_list") {
    cfg.epsilon_list = parse_real_list(value);
  } else if (key == "window_factor") {
    cfg.window_factor = parse_real(key, value);
  } else if (key == "resolution") {
    cfg.resolution = parse_real(key, value);
  } else if (key == "output_path") {
    cfg.output_path = value;
  } else if (key == "anchor") {
    if (value == "origin") {
      cfg.anchor = AnchorMode::origin;
    } else if (value == "random") {
      cfg.anchor = AnchorMode::random;
    } else {
      throw ConfigError("anchor must be 'origin' or 'random'");
    }
  } else if (key == "trials") {
    cfg.trials = static_cast<int>(parse_int(key, value));
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "workers") {
    const long long w = parse_int(key, value);
    if (w < 1) throw ConfigError("workers must be at least 1");
    cfg.workers = static_cast<unsigned>(w);
  } else if (key == "memory_cap_gib") {
    cfg.memory_cap_bytes = parse_real(key, value) * 1024.0 * 1024.0 * 1024.0;
  } else if (key == "V0") {
    cfg.V0 = parse_real(key, value);
  } else if (key == "k") {
    cfg.k = parse_real(key, value);
  } else if (key == "tag") {
    cfg.tag = value;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void parse_config_text(const std::string& text, SweepConfig& cfg) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    try {
      apply_config_value(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

SweepConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  SweepConfig cfg;
  cfg.epsilon_list = default_epsilon_list();
  parse_config_text(buf.str(), cfg);
  return cfg;
}

}  // namespace quasilevel
