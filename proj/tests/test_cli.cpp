#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "cslab/cli.hpp"
#include "cslab/config.hpp"
#include "cslab/numfmt.hpp"
#include "cslab/results_io.hpp"

using namespace cslab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("cslab_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path file(const std::string& name, const std::string& content) const {
    std::ofstream(path / name) << content;
    return path / name;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kSmallSweep = R"({
  "B": 256, "W": 2, "rho_list": [1, 2, 4], "isnr_targets_db": [30],
  "trials": 3, "methods": ["oracle", "bandpass"], "master_seed": 1
})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal config fills defaults") {
  const SweepConfig c = parse_sweep_config(json::parse(R"({"B": 64, "W": 2, "rho_list": [1, 2]})"));
  const SweepConfig d;
  CHECK(c.ambient_dim == 64);
  CHECK(c.band_width == 2);
  CHECK(c.rho_list == std::vector<std::size_t>{1, 2});
  CHECK(c.isnr_targets_db == d.isnr_targets_db);
  CHECK(c.trials_per_point == d.trials_per_point);
  CHECK(c.methods == d.methods);
  CHECK(c.master_seed == d.master_seed);
  CHECK_FALSE(c.quantizer.has_value());
  CHECK(c.distribution == d.distribution);
  CHECK(c.orthogonalize == d.orthogonalize);
  CHECK(c.cosamp.max_iter == 50);
  CHECK(c.cosamp.tol == 1e-6);
  CHECK(c.kappa0 == 0.5);
  CHECK(c.kappa1 == 2.0);
}

TEST_CASE("config errors carry distinct codes") {
  auto code_of = [](const char* text) {
    try {
      parse_sweep_config(json::parse(text));
    } catch (const ConfigError& e) {
      return e.code();
    }
    return 0;
  };
  CHECK(code_of(R"({"B": 8192, "W": 4, "rho_list": [3]})") == exit_code::divisibility);
  CHECK(code_of(R"({"B": 8192, "W": 4, "rho_list": [2], "colour": 1})") == exit_code::schema);
  CHECK(code_of(R"({"B": 8192, "W": 4})") == exit_code::schema);
  CHECK(code_of(R"({"B": "big", "W": 4, "rho_list": [2]})") == exit_code::schema);
  CHECK(code_of(R"({"B": 64, "W": 4, "rho_list": [2], "ensemble": {"kind": "x"}})") == exit_code::schema);
  CHECK(code_of(R"({"B": 64, "W": 4, "rho_list": [2], "methods": ["omp"]})") == exit_code::schema);
  CHECK(code_of(R"({"B": 64, "W": 4, "rho_list": [2], "trials": 0})") == exit_code::schema);

  TempDir dir;
  try {
    load_json(dir.path / "nope.json");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(e.code() == exit_code::missing_file);
  }
  try {
    load_json(dir.file("bad.json", "{ not json"));
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(e.code() == exit_code::schema);
  }
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto good = dir.file("good.json", kSmallSweep);
  const auto rho3 = dir.file("rho3.json", R"({"B": 8192, "W": 4, "rho_list": [3]})");
  const auto extra = dir.file("extra.json", R"({"B": 64, "W": 2, "rho_list": [2], "foo": true})");

  CHECK(run_cli({"noise-folding", "--config", rho3.string(), "--out", (dir.path / "o").string()}).code ==
        exit_code::divisibility);
  CHECK(run_cli({"noise-folding", "--config", extra.string()}).code == exit_code::schema);
  CHECK(run_cli({"noise-folding", "--config", (dir.path / "missing.json").string()}).code ==
        exit_code::missing_file);
  const Outcome unknown = run_cli({"frobnicate"});
  CHECK(unknown.code == exit_code::usage);
  CHECK(unknown.err.find("noise-folding") != std::string::npos);  // usage text
  CHECK(run_cli({}).code == exit_code::usage);
  CHECK(run_cli({"noise-folding"}).code == exit_code::usage);
  CHECK(run_cli({"noise-folding", "--config", good.string(), "--format", "xml"}).code == exit_code::usage);
  CHECK(run_cli({"--help"}).code == exit_code::ok);

  // An output path below a regular file cannot be created.
  const auto blocker = dir.file("blocker", "x");
  CHECK(run_cli({"noise-folding", "--config", good.string(), "--out", (blocker / "sub").string()}).code ==
        exit_code::unwritable);

  // A quantizer section belongs to quantizer-sweep only.
  const auto quant = dir.file("q.json", R"({"B": 64, "W": 2, "rho_list": [1, 2], "trials": 2,
      "methods": ["oracle"], "quantizer": {"base_bits": 6}})");
  CHECK(run_cli({"noise-folding", "--config", quant.string()}).code == exit_code::schema);
  CHECK(run_cli({"quantizer-sweep", "--config", good.string()}).code == exit_code::schema);
  CHECK(run_cli({"quantizer-sweep", "--config", quant.string(), "--out", (dir.path / "q").string()}).code ==
        exit_code::ok);
}

TEST_CASE("seeded runs are byte-identical") {
  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  TempDir dir;
  const auto cfg = dir.file("c.json", kSmallSweep);
  const auto a = dir.path / "a";
  const auto b = dir.path / "b";
  const auto c = dir.path / "c";
  REQUIRE(run_cli({"noise-folding", "--config", cfg.string(), "--seed", "42", "--out", a.string()}).code == 0);
  REQUIRE(run_cli({"noise-folding", "--config", cfg.string(), "--seed", "42", "--out", b.string()}).code == 0);
  REQUIRE(run_cli({"noise-folding", "--config", cfg.string(), "--seed", "43", "--out", c.string()}).code == 0);
  for (const char* name : {"results.csv", "summary.json", "plot.csv", "manifest.json"}) {
    CHECK(slurp(a / name) == slurp(b / name));
  }
  CHECK(slurp(a / "results.csv") != slurp(c / "results.csv"));

  const json manifest = json::parse(slurp(a / "manifest.json"));
  CHECK(manifest["master_seed"] == 42);
  CHECK(manifest["tool_version"] == kToolVersion);
  CHECK(manifest["timestamp"] == "2023-11-14T22:13:20Z");
  CHECK(manifest["config_hash"] == config_hash(json::parse(kSmallSweep)));
  ::unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("--trials overrides and results read back") {
  TempDir dir;
  const auto cfg = dir.file("c.json", kSmallSweep);
  REQUIRE(run_cli({"noise-folding", "--config", cfg.string(), "--trials", "5", "--out", dir.path.string()}).code ==
          0);
  const std::string csv = slurp(dir.path / "results.csv");
  CHECK(csv.substr(0, csv.find('\n')) == kResultsHeader);
  const ExperimentResult res = read_results_csv(dir.path / "results.csv");
  CHECK(res.rows.size() == 3 * 2 * 5);
  CHECK(results_to_csv(res) == csv);

  // summary.json equals a recomputation from the persisted rows.
  CHECK(json::parse(slurp(dir.path / "summary.json")) == summary_to_json(summarize(res)));
  const std::string plot = slurp(dir.path / "plot.csv");
  CHECK(plot.rfind("series,log2_rho,mean_rsnr_db\n", 0) == 0);
  CHECK(plot.find("\noracle_isnr30,1.00000,") != std::string::npos);
}

TEST_CASE("--format json") {
  TempDir dir;
  const auto cfg = dir.file("c.json", kSmallSweep);
  REQUIRE(run_cli({"noise-folding", "--config", cfg.string(), "--format", "json", "--out", dir.path.string()})
              .code == 0);
  CHECK_FALSE(fs::exists(dir.path / "results.csv"));
  const json j = json::parse(slurp(dir.path / "results.json"));
  CHECK(j["rows"].size() == 3 * 2 * 3);
  CHECK(j["rows"][0]["method"] == "oracle");
}

TEST_CASE("csv format") {
  CHECK(results_to_csv(ExperimentResult{}) == std::string(kResultsHeader) + "\n");
  CHECK(results_from_csv(std::string(kResultsHeader) + "\n").rows.empty());

  ResultRow r;
  r.rho = 8;
  r.isnr_target_db = 60.0;
  r.method = Method::cosamp;
  r.trial = 3;
  r.seed = 18446744073709551615ULL;
  r.isnr_db = 60.1234;
  r.msnr_db = 0.0123457;
  r.rsnr_db = NAN;
  r.support_exact = false;
  ExperimentResult res{{r}};
  const std::string csv = results_to_csv(res);
  CHECK(csv == std::string(kResultsHeader) +
                   "\n8,60.0000,cosamp,3,18446744073709551615,60.1234,0.0123457,nan,0,\n");
  const auto back = results_from_csv(csv);
  REQUIRE(back.rows.size() == 1);
  CHECK(back.rows[0].seed == r.seed);
  CHECK(std::isnan(*back.rows[0].rsnr_db));
  CHECK(*back.rows[0].isnr_db == 60.1234);
  CHECK_FALSE(back.rows[0].bits.has_value());

  r.rsnr_db = 12.5;
  r.isnr_target_db.reset();
  r.isnr_db = INFINITY;
  r.bits = 9;
  const ExperimentResult res2{{r}};
  CHECK(results_from_csv(results_to_csv(res2)).rows == res2.rows);
  CHECK_THROWS(results_from_csv("rho,wrong\n"));
}

TEST_CASE("number formatting") {
  CHECK(format_sig6(60.0) == "60.0000");
  CHECK(format_sig6(0.00123456789) == "0.00123457");
  CHECK(format_sig6(123456.7) == "123457");
  CHECK(format_sig6(-2.5) == "-2.50000");
  CHECK(format_sig6(-0.0) == "0");
  CHECK(format_sig6(INFINITY) == "inf");
  CHECK(format_sig6(-INFINITY) == "-inf");
  CHECK(format_sig6(NAN) == "nan");
  for (double v : {1.0, 3.14159265, 9.999996, 1e-7, 2.5e8}) CHECK(parse_number(format_sig6(v)) == round_sig6(v));
  CHECK(round_sig6(9.9999996) == 10.0);
}

TEST_CASE("config hash ignores key order") {
  const json a = json::parse(R"({"B": 64, "W": 2, "rho_list": [1, 2], "cosamp": {"tol": 1e-6, "max_iter": 9}})");
  const json b = json::parse(R"({"cosamp": {"max_iter": 9, "tol": 1e-6}, "rho_list": [1, 2], "W": 2, "B": 64})");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 64);
  CHECK(config_hash(a) != config_hash(json::parse(R"({"B": 64, "W": 2, "rho_list": [2, 1]})")));
}

TEST_CASE("fig2a config matches the documented effective config") {
  const fs::path root = CSLAB_SOURCE_DIR;
  const SweepConfig c = parse_config(root / "configs" / "fig2a.json");
  const json golden = json::parse(slurp(root / "tests" / "golden" / "fig2a_effective.json"));
  CHECK(to_json(c) == golden);
  // The effective config parses back to itself.
  CHECK(to_json(parse_sweep_config(golden)) == golden);
}

TEST_CASE("shipped configs parse") {
  const fs::path root = CSLAB_SOURCE_DIR;
  for (const char* name : {"fig2a.json", "fig2b_4bit.json", "fig2b_8bit.json"}) {
    INFO(name);
    CHECK_NOTHROW(parse_config(root / "configs" / name));
  }
  CHECK_NOTHROW(parse_dynamic_range_config(load_json(root / "configs" / "dynamic_range.json")));
  CHECK_NOTHROW(parse_rip_config(load_json(root / "configs" / "rip_small.json")));
  const auto d = parse_design_rule_config(load_json(root / "configs" / "table1.json"));
  CHECK(d.ambient_dim == 1e9);
  CHECK(d.band_width == 4e5);
}

TEST_CASE("design-rules subcommand") {
  const fs::path root = CSLAB_SOURCE_DIR;
  const Outcome o = run_cli({"design-rules", "--config", (root / "configs" / "table1.json").string()});
  CHECK(o.code == 0);
  CHECK(o.out.find("rho_cs           = 159.76") != std::string::npos);
  CHECK(o.out.find("22.0") != std::string::npos);

  TempDir dir;
  REQUIRE(run_cli({"design-rules", "--config", (root / "configs" / "table1.json").string(), "--out",
                   dir.path.string()})
              .code == 0);
  const json j = json::parse(slurp(dir.path / "design_rules.json"));
  CHECK(j.contains("rho_cs"));
}

TEST_CASE("rip-estimate and dynamic-range subcommands") {
  TempDir dir;
  const auto rip = dir.file("rip.json", R"({"B": 16, "M": 12, "W": 2, "trials": 2, "master_seed": 3})");
  REQUIRE(run_cli({"rip-estimate", "--config", rip.string(), "--out", dir.path.string()}).code == 0);
  const std::string csv = slurp(dir.path / "rip.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const auto dr = dir.file("dr.json", R"({"B": 256, "W": 4, "rho": 4, "bits_list": [8], "trials": 2})");
  REQUIRE(run_cli({"dynamic-range", "--config", dr.string(), "--out", dir.path.string()}).code == 0);
  const std::string drcsv = slurp(dir.path / "dynamic_range.csv");
  CHECK(drcsv.rfind("bits,trial,seed,par,closed_form_db,conventional_db,compressive_db\n", 0) == 0);
  CHECK(std::count(drcsv.begin(), drcsv.end(), '\n') == 3);
  CHECK(fs::exists(dir.path / "manifest.json"));
}

}
