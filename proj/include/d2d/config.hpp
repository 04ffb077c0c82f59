#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "d2d/metrics.hpp"

namespace d2d {

enum class ConfigErrorKind { parse, unknown_key, constraint };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ConfigErrorKind kind() const { return kind_; }

 private:
  ConfigErrorKind kind_;
};

enum class OutputFormat { csv, json };

/// Fully resolved run description. Every omitted key takes its default; the
/// D2D distance is configured as a fraction of the cell radius in (0, 1].
struct RunConfig {
  SweepSpec sweep;
  double max_d2d_distance_ratio = 0.1;
  std::string output_path = "results.csv";
  OutputFormat output_format = OutputFormat::csv;

  bool operator==(const RunConfig&) const = default;
};

RunConfig default_config();

/// Parses the flat-section key=value document ([cell], [game], [sweep],
/// [output]; '#' and ';' comments). Unknown sections or keys are rejected;
/// constraint violations name the offending key. If seed_was_set is non-null
/// it reports whether the document assigned rng_seed explicitly.
RunConfig parse_config(std::string_view text, bool* seed_was_set = nullptr);

/// Emits a document that parses back to an identical RunConfig.
std::string serialize_config(const RunConfig& config);

}  // namespace d2d
