#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cslab/experiments.hpp"

namespace cslab {

/// Process exit codes shared by config loading and the CLI.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int runtime = 1;
inline constexpr int usage = 2;
inline constexpr int missing_file = 3;
inline constexpr int schema = 4;
inline constexpr int divisibility = 5;
inline constexpr int unwritable = 6;
}  // namespace exit_code

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

/// Reads a JSON document. Throws ConfigError (missing_file, schema).
nlohmann::json load_json(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of the compact dump of `doc`. Object keys are
/// sorted, so the digest ignores key order in the source file.
std::string config_hash(const nlohmann::json& doc);

/// Strict parsers: unknown keys, wrong types and missing required keys throw
/// ConfigError(schema); a rho that does not divide B throws
/// ConfigError(divisibility).
SweepConfig parse_sweep_config(const nlohmann::json& doc);
SweepConfig parse_config(const std::filesystem::path& path);
DynamicRangeConfig parse_dynamic_range_config(const nlohmann::json& doc);
RipCampaignConfig parse_rip_config(const nlohmann::json& doc);

struct DesignRuleInputs {
  double ambient_dim = 0.0;  // bandwidth-like quantity (Hz or bins)
  double band_width = 0.0;
  double kappa0 = 0.5;
  double base_bits = 8.0;
};
DesignRuleInputs parse_design_rule_config(const nlohmann::json& doc);

/// The effective sweep config as JSON, every default spelled out.
nlohmann::json to_json(const SweepConfig& cfg);

}  // namespace cslab
