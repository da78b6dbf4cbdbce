#include "cslab/results_io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cslab/numfmt.hpp"

namespace cslab {
namespace {

using nlohmann::json;

std::string opt_number(const std::optional<double>& v) { return v ? format_sig6(*v) : ""; }

std::optional<double> parse_opt_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number(s);
}

std::uint64_t parse_unsigned(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("results csv: bad integer '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

json json_number(double v) {
  if (std::isfinite(v)) return round_sig6(v);
  return format_sig6(v);
}

json json_opt(const std::optional<double>& v) { return v ? json_number(*v) : json(nullptr); }

std::string series_name(const SummaryRow& s) {
  std::string name(to_string(s.method));
  if (s.isnr_target_db) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", *s.isnr_target_db);
    name += "_isnr" + std::string(buf);
  }
  return name;
}

}  // namespace

std::string results_to_csv(const ExperimentResult& result) {
  std::string out = std::string(kResultsHeader) + "\n";
  for (const ResultRow& r : result.rows) {
    out += std::to_string(r.rho) + ',' + opt_number(r.isnr_target_db) + ',' +
           std::string(to_string(r.method)) + ',' + std::to_string(r.trial) + ',' +
           std::to_string(r.seed) + ',' + opt_number(r.isnr_db) + ',' + opt_number(r.msnr_db) +
           ',' + opt_number(r.rsnr_db) + ',' + (r.support_exact ? "1" : "0") + ',' +
           (r.bits ? std::to_string(*r.bits) : "") + '\n';
  }
  return out;
}

ExperimentResult results_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) {
    throw std::invalid_argument("results csv: unexpected header");
  }
  ExperimentResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) throw std::invalid_argument("results csv: expected 10 fields: " + line);
    ResultRow r;
    r.rho = parse_unsigned(f[0]);
    r.isnr_target_db = parse_opt_number(f[1]);
    r.method = method_from_string(f[2]);
    r.trial = parse_unsigned(f[3]);
    r.seed = parse_unsigned(f[4]);
    r.isnr_db = parse_opt_number(f[5]);
    r.msnr_db = parse_opt_number(f[6]);
    r.rsnr_db = parse_opt_number(f[7]);
    if (f[8] != "0" && f[8] != "1") throw std::invalid_argument("results csv: bad support_exact");
    r.support_exact = f[8] == "1";
    if (!f[9].empty()) r.bits = static_cast<int>(parse_unsigned(f[9]));
    result.rows.push_back(r);
  }
  return result;
}

ExperimentResult read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return results_from_csv(buf.str());
}

json results_to_json(const ExperimentResult& result) {
  json rows = json::array();
  for (const ResultRow& r : result.rows) {
    json j;
    j["rho"] = r.rho;
    j["isnr_target_db"] = json_opt(r.isnr_target_db);
    j["method"] = std::string(to_string(r.method));
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["isnr_db"] = json_opt(r.isnr_db);
    j["msnr_db"] = json_opt(r.msnr_db);
    j["rsnr_db"] = json_opt(r.rsnr_db);
    j["support_exact"] = r.support_exact;
    j["bits"] = r.bits ? json(*r.bits) : json(nullptr);
    rows.push_back(std::move(j));
  }
  return {{"rows", rows}};
}

json summary_to_json(const std::vector<SummaryRow>& summary) {
  json points = json::array();
  for (const SummaryRow& s : summary) {
    json j;
    j["rho"] = s.rho;
    j["log2_rho"] = json_number(std::log2(static_cast<double>(s.rho)));
    j["isnr_target_db"] = json_opt(s.isnr_target_db);
    j["method"] = std::string(to_string(s.method));
    j["trials"] = s.trials;
    j["failures"] = s.failures;
    j["mean_isnr_db"] = json_opt(s.mean_isnr_db);
    j["mean_msnr_db"] = json_opt(s.mean_msnr_db);
    j["mean_rsnr_db"] = json_opt(s.mean_rsnr_db);
    j["support_exact_rate"] = json_number(s.support_exact_rate);
    j["bits"] = s.bits ? json(*s.bits) : json(nullptr);
    points.push_back(std::move(j));
  }
  return {{"points", points}};
}

std::string plot_data_csv(const std::vector<SummaryRow>& summary) {
  std::string out = "series,log2_rho,mean_rsnr_db\n";
  // Group by series, keeping first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::string> lines;
  for (const SummaryRow& s : summary) {
    const std::string name = series_name(s);
    if (!lines.count(name)) order.push_back(name);
    lines[name] += name + ',' + format_sig6(std::log2(static_cast<double>(s.rho))) + ',' +
                   opt_number(s.mean_rsnr_db) + '\n';
  }
  for (const auto& name : order) out += lines[name];
  return out;
}

std::string manifest_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest_to_json(const RunManifest& m) {
  return {{"config_hash", m.config_hash},   {"tool_version", m.tool_version},
          {"master_seed", m.master_seed},   {"timestamp", m.timestamp},
          {"output_paths", m.output_paths}};
}

std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw OutputError("write failed for '" + path.string() + "'");
  return path;
}

std::vector<std::filesystem::path> write_results(const ExperimentResult& result,
                                                 const std::filesystem::path& dir,
                                                 OutputFormat format, const RunManifest& manifest) {
  const auto summary = summarize(result);
  std::vector<std::filesystem::path> paths;
  if (format == OutputFormat::csv) {
    paths.push_back(write_text(dir, "results.csv", results_to_csv(result)));
  } else {
    paths.push_back(write_text(dir, "results.json", results_to_json(result).dump(2) + "\n"));
  }
  paths.push_back(write_text(dir, "summary.json", summary_to_json(summary).dump(2) + "\n"));
  paths.push_back(write_text(dir, "plot.csv", plot_data_csv(summary)));

  RunManifest m = manifest;
  m.output_paths.clear();
  for (const auto& p : paths) m.output_paths.push_back(p.filename().string());
  m.output_paths.push_back("manifest.json");
  paths.push_back(write_text(dir, "manifest.json", manifest_to_json(m).dump(2) + "\n"));
  return paths;
}

}  // namespace cslab
