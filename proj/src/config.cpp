#include "d2d/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace d2d {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail_parse(int line, const std::string& what) {
  throw ConfigError(ConfigErrorKind::parse, "config line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail_unknown(int line, const std::string& what) {
  throw ConfigError(ConfigErrorKind::unknown_key,
                    "config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& value, int line, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE) {
    fail_parse(line, key + ": expected a number, got '" + value + "'");
  }
  return v;
}

long long parse_int(const std::string& value, int line, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE) {
    fail_parse(line, key + ": expected an integer, got '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& value, int line, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE ||
      value.find('-') != std::string::npos) {
    fail_parse(line, key + ": expected a non-negative integer, got '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& value, int line, const std::string& key) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail_parse(line, key + ": expected true or false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::string format_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunConfig default_config() { return parse_config(""); }

RunConfig parse_config(std::string_view text, bool* seed_was_set) {
  RunConfig cfg;
  if (seed_was_set) *seed_was_set = false;

  enum class Section { none, cell, game, sweep, output };
  Section section = Section::none;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t cut = raw.find_first_of("#;");
    std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_parse(line_no, "unterminated section header");
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (name == "cell") section = Section::cell;
      else if (name == "game") section = Section::game;
      else if (name == "sweep") section = Section::sweep;
      else if (name == "output") section = Section::output;
      else fail_unknown(line_no, "unknown section [" + name + "]");
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail_parse(line_no, "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) fail_parse(line_no, "empty key");

    auto& cell = cfg.sweep.cell;
    auto& game = cfg.sweep.game;
    switch (section) {
      case Section::none:
        fail_parse(line_no, "key '" + key + "' outside of any section");
        break;
      case Section::cell:
        if (key == "cell_radius_m") cell.cell_radius_m = parse_double(value, line_no, key);
        else if (key == "num_cellular") cell.num_cellular = static_cast<int>(parse_int(value, line_no, key));
        else if (key == "num_d2d") cell.num_d2d = static_cast<int>(parse_int(value, line_no, key));
        else if (key == "max_d2d_distance_ratio") cfg.max_d2d_distance_ratio = parse_double(value, line_no, key);
        else if (key == "bandwidth_hz") cell.bandwidth_hz = parse_double(value, line_no, key);
        else if (key == "noise_psd_dbm_hz") cell.noise_psd_dbm_hz = parse_double(value, line_no, key);
        else if (key == "rng_seed") {
          cell.rng_seed = parse_u64(value, line_no, key);
          if (seed_was_set) *seed_was_set = true;
        } else fail_unknown(line_no, "unknown key '" + key + "' in [cell]");
        break;
      case Section::game:
        if (key == "max_tx_power_w") game.max_tx_power_w = parse_double(value, line_no, key);
        else if (key == "circuit_power_w") game.circuit_power_w = parse_double(value, line_no, key);
        else if (key == "peukert_exponent") game.peukert_exponent = parse_double(value, line_no, key);
        else if (key == "battery_capacity_ah") game.battery_capacity_ah = parse_double(value, line_no, key);
        else if (key == "operating_voltage_v") game.operating_voltage_v = parse_double(value, line_no, key);
        else if (key == "epsilon_w") game.epsilon_w = parse_double(value, line_no, key);
        else if (key == "max_iters") game.max_iters = static_cast<int>(parse_int(value, line_no, key));
        else fail_unknown(line_no, "unknown key '" + key + "' in [game]");
        break;
      case Section::sweep:
        if (key == "parameter") {
          const auto p = sweep_parameter_from_name(value);
          if (!p) fail_parse(line_no, "parameter: expected num_d2d, num_channels or max_d2d_distance_ratio");
          cfg.sweep.parameter = *p;
        } else if (key == "values") {
          cfg.sweep.values.clear();
          for (const auto& item : split_list(value)) {
            cfg.sweep.values.push_back(parse_double(item, line_no, key));
          }
        } else if (key == "realizations") {
          cfg.sweep.realizations = static_cast<int>(parse_int(value, line_no, key));
        } else if (key == "algorithms") {
          cfg.sweep.algorithms.clear();
          for (const auto& item : split_list(value)) {
            const auto a = algorithm_from_name(item);
            if (!a) fail_parse(line_no, "algorithms: expected ca, greedy or ca-fixed, got '" + item + "'");
            cfg.sweep.algorithms.push_back(*a);
          }
        } else if (key == "ca_fixed_power_w") {
          cfg.sweep.ca_fixed_power_w = parse_double(value, line_no, key);
        } else if (key == "greedy_metric") {
          if (value == "d2d_to_enb") cfg.sweep.greedy.metric = GreedyMetric::d2d_to_enb;
          else if (value == "intra_pair") cfg.sweep.greedy.metric = GreedyMetric::intra_pair;
          else fail_parse(line_no, "greedy_metric: expected d2d_to_enb or intra_pair");
        } else if (key == "ca_round_two_continue") {
          cfg.sweep.auction.continue_after_rejected_move = parse_bool(value, line_no, key);
        } else fail_unknown(line_no, "unknown key '" + key + "' in [sweep]");
        break;
      case Section::output:
        if (key == "path") cfg.output_path = value;
        else if (key == "format") {
          if (value == "csv") cfg.output_format = OutputFormat::csv;
          else if (value == "json") cfg.output_format = OutputFormat::json;
          else fail_parse(line_no, "format: expected csv or json");
        } else fail_unknown(line_no, "unknown key '" + key + "' in [output]");
        break;
    }
  }

  // The distance is configured as a fraction of the radius; the documented
  // ceiling is the radius itself.
  if (!(cfg.max_d2d_distance_ratio > 0.0 && cfg.max_d2d_distance_ratio <= 1.0)) {
    throw ConfigError(ConfigErrorKind::constraint, "max_d2d_distance_ratio must be in (0, 1]");
  }
  cfg.sweep.cell.max_d2d_distance_m = cfg.max_d2d_distance_ratio * cfg.sweep.cell.cell_radius_m;

  if (cfg.sweep.values.empty()) {
    switch (cfg.sweep.parameter) {
      case SweepParameter::num_d2d:
        cfg.sweep.values = {static_cast<double>(cfg.sweep.cell.num_d2d)};
        break;
      case SweepParameter::num_channels:
        cfg.sweep.values = {static_cast<double>(cfg.sweep.cell.num_cellular)};
        break;
      case SweepParameter::max_d2d_distance_ratio:
        cfg.sweep.values = {cfg.max_d2d_distance_ratio};
        break;
    }
  }

  try {
    cfg.sweep.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ConfigErrorKind::constraint, e.what());
  }
  if (cfg.output_path.empty()) {
    throw ConfigError(ConfigErrorKind::constraint, "output path must not be empty");
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  const auto& cell = cfg.sweep.cell;
  const auto& game = cfg.sweep.game;
  out << "[cell]\n";
  out << "cell_radius_m = " << format_exact(cell.cell_radius_m) << "\n";
  out << "num_cellular = " << cell.num_cellular << "\n";
  out << "num_d2d = " << cell.num_d2d << "\n";
  out << "max_d2d_distance_ratio = " << format_exact(cfg.max_d2d_distance_ratio) << "\n";
  out << "bandwidth_hz = " << format_exact(cell.bandwidth_hz) << "\n";
  out << "noise_psd_dbm_hz = " << format_exact(cell.noise_psd_dbm_hz) << "\n";
  out << "rng_seed = " << cell.rng_seed << "\n";
  out << "\n[game]\n";
  out << "max_tx_power_w = " << format_exact(game.max_tx_power_w) << "\n";
  out << "circuit_power_w = " << format_exact(game.circuit_power_w) << "\n";
  out << "peukert_exponent = " << format_exact(game.peukert_exponent) << "\n";
  out << "battery_capacity_ah = " << format_exact(game.battery_capacity_ah) << "\n";
  out << "operating_voltage_v = " << format_exact(game.operating_voltage_v) << "\n";
  out << "epsilon_w = " << format_exact(game.epsilon_w) << "\n";
  out << "max_iters = " << game.max_iters << "\n";
  out << "\n[sweep]\n";
  out << "parameter = " << sweep_parameter_name(cfg.sweep.parameter) << "\n";
  out << "values = ";
  for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i) {
    if (i) out << ", ";
    out << format_exact(cfg.sweep.values[i]);
  }
  out << "\n";
  out << "realizations = " << cfg.sweep.realizations << "\n";
  out << "algorithms = ";
  for (std::size_t i = 0; i < cfg.sweep.algorithms.size(); ++i) {
    if (i) out << ", ";
    out << algorithm_name(cfg.sweep.algorithms[i]);
  }
  out << "\n";
  out << "ca_fixed_power_w = " << format_exact(cfg.sweep.ca_fixed_power_w) << "\n";
  out << "greedy_metric = "
      << (cfg.sweep.greedy.metric == GreedyMetric::d2d_to_enb ? "d2d_to_enb" : "intra_pair") << "\n";
  out << "ca_round_two_continue = "
      << (cfg.sweep.auction.continue_after_rejected_move ? "true" : "false") << "\n";
  out << "\n[output]\n";
  out << "path = " << cfg.output_path << "\n";
  out << "format = " << (cfg.output_format == OutputFormat::csv ? "csv" : "json") << "\n";
  return out.str();
}

}  // namespace d2d
