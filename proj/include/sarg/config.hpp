#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "sarg/audit.hpp"

namespace sarg {

/// Effective settings for one CLI run. Keys in the JSON form are dotted paths
/// such as "grid.step"; see README for the full table and defaults.
struct RunConfig {
  double l_target = 1e-12;          // precision.l_value
  double quadrature_tol = 1e-9;     // precision.quadrature
  std::filesystem::path zero_cache = ".sarg-zeros";
  AuditGrid grid{{}, 2.0, 80.0, 0.05};
  std::string format = "csv";
  std::uint64_t seed = 20250101;
  double zero_height = 60.0;        // zeros.height
  double zero_window = 40.0;        // zeros.window
  std::string audit_method = "continuation";
  int audit_checkpoints = 8;
  unsigned threads = 1;

  RunConfig();
  void validate() const;
  nlohmann::json to_json() const;
};

/// Defaults, then the JSON file (if any), then SARG_ZERO_CACHE / SARG_SEED from `env`.
RunConfig parse_config(const std::optional<std::filesystem::path>& file,
                       const std::map<std::string, std::string>& env);
/// Same, reading the process environment.
RunConfig parse_config(const std::optional<std::filesystem::path>& file = std::nullopt);
RunConfig parse_config_text(const std::string& json_text, const std::map<std::string, std::string>& env = {});

}  // namespace sarg
