#include "cslab/cli.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cslab/config.hpp"
#include "cslab/experiments.hpp"
#include "cslab/numfmt.hpp"
#include "cslab/parallel.hpp"
#include "cslab/results_io.hpp"
#include "cslab/theory.hpp"

namespace cslab::cli {
namespace {

using nlohmann::json;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string out_dir = "cslab_out";
  std::string format = "csv";
  bool out_given = false;
};

void add_flags(CLI::App* sub, Flags& f, bool config_required = true) {
  auto* config = sub->add_option("--config", f.config, "JSON config file");
  if (config_required) config->required();
  sub->add_option("--seed", f.seed, "master seed (overrides the config)");
  sub->add_option("--trials", f.trials, "trials per point (overrides the config)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", f.out_dir, "output directory")->default_str("cslab_out");
  sub->add_option("--format", f.format, "results format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_str("csv");
}

RunManifest manifest_for(const json& doc, std::uint64_t seed) {
  RunManifest m;
  m.config_hash = config_hash(doc);
  m.master_seed = seed;
  m.timestamp = manifest_timestamp();
  return m;
}

void print_summary(const std::vector<SummaryRow>& summary, std::ostream& out) {
  out << "rho  isnr_target  method    mean_isnr_db  mean_rsnr_db  exact  failures\n";
  for (const SummaryRow& s : summary) {
    out << std::setw(4) << s.rho << "  " << std::setw(11)
        << (s.isnr_target_db ? format_sig6(*s.isnr_target_db) : "-") << "  " << std::left
        << std::setw(8) << to_string(s.method) << std::right << "  " << std::setw(12)
        << (s.mean_isnr_db ? format_sig6(*s.mean_isnr_db) : "-") << "  " << std::setw(12)
        << (s.mean_rsnr_db ? format_sig6(*s.mean_rsnr_db) : "-") << "  " << std::setw(5)
        << format_sig6(s.support_exact_rate) << "  " << s.failures << '\n';
  }
}

int run_sweep(const Flags& f, bool quantized, std::ostream& out) {
  const json doc = load_json(f.config);
  SweepConfig cfg = parse_sweep_config(doc);
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.trials) cfg.trials_per_point = *f.trials;
  if (quantized && !cfg.quantizer) {
    throw ConfigError(exit_code::schema, "config: quantizer-sweep needs a 'quantizer' section");
  }
  if (!quantized && cfg.quantizer) {
    throw ConfigError(exit_code::schema, "config: noise-folding takes no 'quantizer' section");
  }
  const unsigned workers = default_worker_count();
  const ExperimentResult result =
      quantized ? run_quantization_sweep(cfg, workers) : run_noise_folding_sweep(cfg, workers);
  const auto paths =
      write_results(result, f.out_dir, f.format == "json" ? OutputFormat::json : OutputFormat::csv,
                    manifest_for(doc, cfg.master_seed));
  print_summary(summarize(result), out);
  for (const auto& p : paths) out << "wrote " << p.string() << '\n';
  return exit_code::ok;
}

int run_dynamic_range_cmd(const Flags& f, std::ostream& out) {
  const json doc = load_json(f.config);
  DynamicRangeConfig cfg = parse_dynamic_range_config(doc);
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.trials) cfg.trials = *f.trials;
  const auto rows = run_dynamic_range(cfg, default_worker_count());

  std::vector<std::filesystem::path> paths;
  if (f.format == "csv") {
    std::string csv = "bits,trial,seed,par,closed_form_db,conventional_db,compressive_db\n";
    for (const auto& r : rows) {
      csv += std::to_string(r.bits) + ',' + std::to_string(r.trial) + ',' + std::to_string(r.seed) +
             ',' + format_sig6(r.par) + ',' + format_sig6(r.closed_form_db) + ',' +
             format_sig6(r.conventional_db) + ',' + format_sig6(r.compressive_db) + '\n';
    }
    paths.push_back(write_text(f.out_dir, "dynamic_range.csv", csv));
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"bits", r.bits},
                     {"trial", r.trial},
                     {"seed", r.seed},
                     {"par", format_sig6(r.par)},
                     {"closed_form_db", format_sig6(r.closed_form_db)},
                     {"conventional_db", format_sig6(r.conventional_db)},
                     {"compressive_db", format_sig6(r.compressive_db)}});
    }
    paths.push_back(write_text(f.out_dir, "dynamic_range.json", json{{"rows", arr}}.dump(2) + "\n"));
  }

  // Mean dB per bit depth over trials where the value is defined.
  json summary = json::array();
  out << "bits  closed_form_db  conventional_db  compressive_db\n";
  for (const int bits : cfg.bits_list) {
    double acc[3] = {0, 0, 0};
    std::size_t cnt[3] = {0, 0, 0};
    for (const auto& r : rows) {
      if (r.bits != bits) continue;
      const double v[3] = {r.closed_form_db, r.conventional_db, r.compressive_db};
      for (int k = 0; k < 3; ++k) {
        if (std::isfinite(v[k])) {
          acc[k] += round_sig6(v[k]);
          ++cnt[k];
        }
      }
    }
    std::string mean[3];
    for (int k = 0; k < 3; ++k) {
      mean[k] = cnt[k] ? format_sig6(acc[k] / static_cast<double>(cnt[k])) : "nan";
    }
    summary.push_back({{"bits", bits},
                       {"mean_closed_form_db", mean[0]},
                       {"mean_conventional_db", mean[1]},
                       {"mean_compressive_db", mean[2]},
                       {"defined_trials", {cnt[0], cnt[1], cnt[2]}}});
    out << std::setw(4) << bits << "  " << std::setw(14) << mean[0] << "  " << std::setw(15)
        << mean[1] << "  " << std::setw(14) << mean[2] << '\n';
  }
  paths.push_back(write_text(f.out_dir, "summary.json", json{{"points", summary}}.dump(2) + "\n"));

  RunManifest m = manifest_for(doc, cfg.master_seed);
  for (const auto& p : paths) m.output_paths.push_back(p.filename().string());
  m.output_paths.push_back("manifest.json");
  paths.push_back(write_text(f.out_dir, "manifest.json", manifest_to_json(m).dump(2) + "\n"));
  for (const auto& p : paths) out << "wrote " << p.string() << '\n';
  return exit_code::ok;
}

int run_rip_cmd(const Flags& f, std::ostream& out) {
  const json doc = load_json(f.config);
  RipCampaignConfig cfg = parse_rip_config(doc);
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.trials) cfg.trials = *f.trials;
  const auto rows = run_rip_campaign(cfg, default_worker_count());

  std::vector<std::filesystem::path> paths;
  if (f.format == "csv") {
    std::string csv = "trial,seed,delta,supports_visited,exhaustive\n";
    for (const auto& r : rows) {
      csv += std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' +
             format_sig6(r.estimate.delta) + ',' + std::to_string(r.estimate.supports_visited) +
             ',' + (r.estimate.exhaustive ? "1" : "0") + '\n';
    }
    paths.push_back(write_text(f.out_dir, "rip.csv", csv));
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"trial", r.trial},
                     {"seed", r.seed},
                     {"delta", round_sig6(r.estimate.delta)},
                     {"supports_visited", r.estimate.supports_visited},
                     {"exhaustive", r.estimate.exhaustive},
                     {"worst_support", r.estimate.worst_support}});
    }
    paths.push_back(write_text(f.out_dir, "rip.json", json{{"rows", arr}}.dump(2) + "\n"));
  }
  RunManifest m = manifest_for(doc, cfg.master_seed);
  for (const auto& p : paths) m.output_paths.push_back(p.filename().string());
  m.output_paths.push_back("manifest.json");
  paths.push_back(write_text(f.out_dir, "manifest.json", manifest_to_json(m).dump(2) + "\n"));

  for (const auto& r : rows) {
    out << "trial " << r.trial << ": delta = " << format_sig6(r.estimate.delta) << " over "
        << r.estimate.supports_visited << " supports"
        << (r.estimate.exhaustive ? " (exhaustive)" : " (sampled, lower bound)") << '\n';
  }
  for (const auto& p : paths) out << "wrote " << p.string() << '\n';
  return exit_code::ok;
}

int run_design_rules_cmd(const Flags& f, std::ostream& out) {
  const json doc = load_json(f.config);
  const DesignRuleInputs in = parse_design_rule_config(doc);
  const theory::DesignRuleReport r =
      theory::design_rules(in.ambient_dim, in.band_width, in.kappa0, in.base_bits);
  out << std::fixed << std::setprecision(2);
  out << "rho_max          = " << r.rho_max << '\n'
      << "rho_cs           = " << r.rho_cs << '\n'
      << "noise_figure_db  = " << r.noise_figure_db << '\n'
      << "bit_gain         = " << r.bit_gain << '\n'
      << "projected_bits   = " << r.projected_bits << '\n'
      << "projected_dr_db  = " << r.projected_dr_db << '\n'
      << "sampling_rate    = " << r.sampling_rate << '\n';
  if (f.out_given) {
    const json report = {{"rho_max", round_sig6(r.rho_max)},
                         {"rho_cs", round_sig6(r.rho_cs)},
                         {"noise_figure_db", round_sig6(r.noise_figure_db)},
                         {"bit_gain", round_sig6(r.bit_gain)},
                         {"projected_bits", round_sig6(r.projected_bits)},
                         {"projected_dr_db", round_sig6(r.projected_dr_db)},
                         {"sampling_rate", round_sig6(r.sampling_rate)}};
    const auto p = write_text(f.out_dir, "design_rules.json", report.dump(2) + "\n");
    RunManifest m = manifest_for(doc, 0);
    m.output_paths = {"design_rules.json", "manifest.json"};
    write_text(f.out_dir, "manifest.json", manifest_to_json(m).dump(2) + "\n");
    out << "wrote " << p.string() << '\n';
  }
  return exit_code::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressive-sensing receiver lab", "cslab"};
  app.require_subcommand(1);
  Flags f;
  CLI::App* noise = app.add_subcommand("noise-folding", "signal-noise sweep over subsampling");
  CLI::App* quant = app.add_subcommand("quantizer-sweep", "quantized-measurement sweep");
  CLI::App* dr = app.add_subcommand("dynamic-range", "dynamic range of quantized acquisition");
  CLI::App* rip = app.add_subcommand("rip-estimate", "empirical restricted isometry constants");
  CLI::App* design = app.add_subcommand("design-rules", "receiver sizing calculator");
  for (CLI::App* sub : {noise, quant, dr, rip, design}) add_flags(sub, f);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return exit_code::usage;
  }

  try {
    for (CLI::App* sub : {noise, quant, dr, rip, design}) {
      if (sub->parsed() && sub->count("--out") > 0) f.out_given = true;
    }
    if (noise->parsed()) return run_sweep(f, false, out);
    if (quant->parsed()) return run_sweep(f, true, out);
    if (dr->parsed()) return run_dynamic_range_cmd(f, out);
    if (rip->parsed()) return run_rip_cmd(f, out);
    if (design->parsed()) return run_design_rules_cmd(f, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::unwritable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::runtime;
  }
  err << "error: no subcommand\n";
  return exit_code::usage;
}

}  // namespace cslab::cli
