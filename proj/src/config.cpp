#include "cslab/config.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "cslab/errors.hpp"

namespace cslab {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw ConfigError(exit_code::schema, "config: " + what);
}

// Reads keys of one JSON object and rejects any key that was never asked for.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) schema_error(label() + "must be an object");
  }

  const json* find(const std::string& key) {
    known_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (!v) schema_error(label() + "missing required key '" + key + "'");
    return *v;
  }

  std::uint64_t to_unsigned(const json& v, const std::string& key) const {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      schema_error(label() + "'" + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  double to_double(const json& v, const std::string& key) const {
    if (!v.is_number()) schema_error(label() + "'" + key + "' must be a number");
    return v.get<double>();
  }

  std::uint64_t get_unsigned(const std::string& key, std::optional<std::uint64_t> fallback = {}) {
    const json* v = fallback ? find(key) : &require(key);
    return v ? to_unsigned(*v, key) : *fallback;
  }

  double get_double(const std::string& key, std::optional<double> fallback = {}) {
    const json* v = fallback ? find(key) : &require(key);
    return v ? to_double(*v, key) : *fallback;
  }

  bool get_bool(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) schema_error(label() + "'" + key + "' must be a boolean");
    return v->get<bool>();
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) schema_error(label() + "'" + key + "' must be a string");
    return v->get<std::string>();
  }

  const json& array(const json& v, const std::string& key) const {
    if (!v.is_array()) schema_error(label() + "'" + key + "' must be an array");
    return v;
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!known_.count(key)) schema_error(label() + "unknown key '" + key + "'");
    }
  }

  std::string label() const { return where_.empty() ? "" : where_ + ": "; }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> known_;
};

template <typename F>
auto wrap_invalid(F&& f) {
  try {
    return f();
  } catch (const DivisibilityError& e) {
    throw ConfigError(exit_code::divisibility, std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    schema_error(e.what());
  }
}

Distribution parse_distribution(const std::string& name) {
  return wrap_invalid([&] { return distribution_from_string(name); });
}

}  // namespace

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(exit_code::missing_file, "config: cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    schema_error("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

std::string config_hash(const json& doc) {
  const std::string text = doc.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("config_hash: SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

SweepConfig parse_sweep_config(const json& doc) {
  ObjectReader r(doc, "");
  SweepConfig cfg;
  cfg.ambient_dim = r.get_unsigned("B");
  cfg.band_width = r.get_unsigned("W");

  cfg.rho_list.clear();
  for (const json& v : r.array(r.require("rho_list"), "rho_list")) {
    cfg.rho_list.push_back(r.to_unsigned(v, "rho_list"));
  }
  if (const json* v = r.find("isnr_targets_db")) {
    cfg.isnr_targets_db.clear();
    for (const json& e : r.array(*v, "isnr_targets_db")) {
      cfg.isnr_targets_db.push_back(r.to_double(e, "isnr_targets_db"));
    }
  }
  cfg.trials_per_point = r.get_unsigned("trials", cfg.trials_per_point);
  if (const json* v = r.find("methods")) {
    cfg.methods.clear();
    for (const json& e : r.array(*v, "methods")) {
      if (!e.is_string()) schema_error("'methods' entries must be strings");
      cfg.methods.push_back(wrap_invalid([&] { return method_from_string(e.get<std::string>()); }));
    }
  }
  cfg.master_seed = r.get_unsigned("master_seed", cfg.master_seed);
  if (const json* v = r.find("quantizer")) {
    ObjectReader q(*v, "quantizer");
    QuantizerConfig qc;
    qc.base_bits = q.get_double("base_bits");
    qc.saturation = q.get_double("saturation", qc.saturation);
    q.finish();
    cfg.quantizer = qc;
  }
  if (const json* v = r.find("ensemble")) {
    ObjectReader e(*v, "ensemble");
    cfg.distribution = parse_distribution(e.get_string("distribution", "randomized_orthogonal"));
    cfg.orthogonalize = e.get_bool("orthogonalize", cfg.orthogonalize);
    e.finish();
  }
  cfg.measurement_noise_var = r.get_double("measurement_noise_var", cfg.measurement_noise_var);
  if (const json* v = r.find("band_first_bin")) cfg.band_first_bin = r.to_unsigned(*v, "band_first_bin");
  if (const json* v = r.find("cosamp")) {
    ObjectReader c(*v, "cosamp");
    cfg.cosamp.max_iter = c.get_unsigned("max_iter", cfg.cosamp.max_iter);
    cfg.cosamp.tol = c.get_double("tol", cfg.cosamp.tol);
    c.finish();
  }
  cfg.kappa0 = r.get_double("kappa0", cfg.kappa0);
  cfg.kappa1 = r.get_double("kappa1", cfg.kappa1);
  r.finish();
  wrap_invalid([&] {
    cfg.validate();
    return 0;
  });
  return cfg;
}

SweepConfig parse_config(const std::filesystem::path& path) {
  return parse_sweep_config(load_json(path));
}

DynamicRangeConfig parse_dynamic_range_config(const json& doc) {
  ObjectReader r(doc, "");
  DynamicRangeConfig cfg;
  cfg.ambient_dim = r.get_unsigned("B");
  cfg.band_width = r.get_unsigned("W");
  cfg.rho = r.get_unsigned("rho");
  if (const json* v = r.find("bits_list")) {
    cfg.bits_list.clear();
    for (const json& e : r.array(*v, "bits_list")) {
      cfg.bits_list.push_back(static_cast<int>(std::min<std::uint64_t>(r.to_unsigned(e, "bits_list"), 1000)));
    }
  }
  cfg.target_snr_db = r.get_double("target_snr_db", cfg.target_snr_db);
  cfg.saturation = r.get_double("saturation", cfg.saturation);
  cfg.trials = r.get_unsigned("trials", cfg.trials);
  cfg.master_seed = r.get_unsigned("master_seed", cfg.master_seed);
  r.finish();
  wrap_invalid([&] {
    cfg.validate();
    return 0;
  });
  return cfg;
}

RipCampaignConfig parse_rip_config(const json& doc) {
  ObjectReader r(doc, "");
  RipCampaignConfig cfg;
  cfg.ambient_dim = r.get_unsigned("B");
  cfg.rows = r.get_unsigned("M");
  cfg.sparsity = r.get_unsigned("W");
  cfg.distribution = parse_distribution(r.get_string("distribution", "gaussian"));
  cfg.orthogonalize = r.get_bool("orthogonalize", cfg.orthogonalize);
  const std::string mode = r.get_string("mode", "exhaustive");
  if (mode == "exhaustive") {
    cfg.mode = RipMode::exhaustive();
  } else if (mode == "sampled") {
    cfg.mode = RipMode::sampled(r.get_unsigned("n_supports"));
  } else {
    schema_error("'mode' must be \"exhaustive\" or \"sampled\"");
  }
  cfg.trials = r.get_unsigned("trials", cfg.trials);
  cfg.master_seed = r.get_unsigned("master_seed", cfg.master_seed);
  r.finish();
  wrap_invalid([&] {
    cfg.validate();
    return 0;
  });
  return cfg;
}

DesignRuleInputs parse_design_rule_config(const json& doc) {
  ObjectReader r(doc, "");
  DesignRuleInputs in;
  in.ambient_dim = r.get_double("B");
  in.band_width = r.get_double("W");
  in.kappa0 = r.get_double("kappa0", in.kappa0);
  in.base_bits = r.get_double("base_bits", in.base_bits);
  r.finish();
  if (!(in.band_width > 0.0) || !(in.band_width <= in.ambient_dim)) schema_error("need 0 < W <= B");
  if (!(in.kappa0 > 0.0)) schema_error("kappa0 must be > 0");
  return in;
}

json to_json(const SweepConfig& cfg) {
  json j;
  j["B"] = cfg.ambient_dim;
  j["W"] = cfg.band_width;
  j["rho_list"] = cfg.rho_list;
  j["isnr_targets_db"] = cfg.isnr_targets_db;
  j["trials"] = cfg.trials_per_point;
  json methods = json::array();
  for (const Method m : cfg.methods) methods.push_back(std::string(to_string(m)));
  j["methods"] = methods;
  j["master_seed"] = cfg.master_seed;
  if (cfg.quantizer) {
    j["quantizer"] = {{"base_bits", cfg.quantizer->base_bits},
                      {"saturation", cfg.quantizer->saturation}};
  }
  j["ensemble"] = {{"distribution", std::string(to_string(cfg.distribution))},
                   {"orthogonalize", cfg.orthogonalize}};
  j["measurement_noise_var"] = cfg.measurement_noise_var;
  if (cfg.band_first_bin) j["band_first_bin"] = *cfg.band_first_bin;
  j["cosamp"] = {{"max_iter", cfg.cosamp.max_iter}, {"tol", cfg.cosamp.tol}};
  j["kappa0"] = cfg.kappa0;
  j["kappa1"] = cfg.kappa1;
  return j;
}

}  // namespace cslab
