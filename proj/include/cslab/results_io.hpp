#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cslab/experiments.hpp"

namespace cslab {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kResultsHeader =
    "rho,isnr_target_db,method,trial,seed,isnr_db,msnr_db,rsnr_db,support_exact,bits";

enum class OutputFormat { csv, json };

/// The output directory or a file in it cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Results table. Numbers use format_sig6; absent fields are empty;
/// support_exact is 1 or 0. Ends with a newline.
std::string results_to_csv(const ExperimentResult& result);
ExperimentResult results_from_csv(const std::string& text);
ExperimentResult read_results_csv(const std::filesystem::path& path);
nlohmann::json results_to_json(const ExperimentResult& result);

/// Per (point, method) means. Non-finite numbers are written as strings.
nlohmann::json summary_to_json(const std::vector<SummaryRow>& summary);

/// series,log2_rho,mean_rsnr_db with one series per method (and ISNR target).
std::string plot_data_csv(const std::vector<SummaryRow>& summary);

struct RunManifest {
  std::string config_hash;
  std::string tool_version = kToolVersion;
  std::uint64_t master_seed = 0;
  std::string timestamp;  // ISO 8601 UTC
  std::vector<std::string> output_paths;
};

/// SOURCE_DATE_EPOCH when set, otherwise the current time.
std::string manifest_timestamp();
nlohmann::json manifest_to_json(const RunManifest& manifest);

/// Creates `dir` if needed and writes `content` to dir/name. Throws OutputError.
std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& content);

/// Writes results.{csv,json}, summary.json, plot.csv and manifest.json into
/// `dir` and returns the paths in that order.
std::vector<std::filesystem::path> write_results(const ExperimentResult& result,
                                                 const std::filesystem::path& dir,
                                                 OutputFormat format, const RunManifest& manifest);

}  // namespace cslab
