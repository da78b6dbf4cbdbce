// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cslab/config.hpp"
#include "cslab/experiments.hpp"
#include "cslab/metrics.hpp"
#include "cslab/parallel.hpp"
#include "cslab/quantization.hpp"
#include "cslab/recovery.hpp"
#include "cslab/results_io.hpp"
#include "cslab/seeding.hpp"
#include "cslab/theory.hpp"
#include "oracles.hpp"

using namespace cslab;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SweepConfig slope_sweep() {
  SweepConfig c;
  c.ambient_dim = 8192;
  c.band_width = 4;
  c.rho_list = {2, 4, 8, 16, 32};
  c.isnr_targets_db = {60.0};
  c.trials_per_point = 200;
  c.methods = {Method::oracle};
  c.master_seed = 20111;
  return c;
}

void noise_folding_slope() {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepConfig cfg = slope_sweep();
  const auto summary = summarize(run_noise_folding_sweep(cfg, default_worker_count()));
  const double elapsed = seconds_since(t0);
  std::vector<double> octaves, loss;
  for (const auto& s : summary) {
    octaves.push_back(std::log2(static_cast<double>(s.rho)));
    loss.push_back(*s.mean_isnr_db - *s.mean_rsnr_db);
  }
  const double slope = oracle::slope(octaves, loss);
  report(1, std::abs(slope - 3.01) <= 0.5 && elapsed < 300.0,
         fmt("ISNR-RSNR slope %.3f dB/octave (target 3.01 +- 0.5), runtime %.1f s (< 300 s)", slope, elapsed));
}

void bound_containment() {
  BoundContainmentConfig cfg;
  cfg.master_seed = 2;
  const auto rep = run_bound_containment(cfg, default_worker_count());
  const BracketCheck& c = rep.checks.at(0);
  std::string extra;
  for (std::size_t i = 1; i < rep.checks.size(); ++i) {
    const auto& k = rep.checks[i];
    extra += "; " + k.name + fmt(" %.4g in [%.4g, %.4g] ", k.estimate, k.bracket.low, k.bracket.high) +
             (k.inside ? "inside" : (k.inside_3se ? "inside at 3 SE" : "outside"));
  }
  report(2, c.name == "error_energy" && c.inside,
         fmt("delta_hat %.4f, E||a_hat - a||^2 = %.4f in [%.4f, %.4f]", rep.rip.delta, c.estimate,
             c.bracket.low, c.bracket.high) +
             extra);
}

void whiteness() {
  const double rho = 4.0, var = 1.0;
  const auto r = orthogonalize_rows(generate_ensemble(16, 64, Distribution::gaussian, 3));
  const auto w = measure_noise_whiteness(r, var, 10000, 31);
  report(3, w.max_relative_variance_error <= 0.10 && w.max_relative_offdiagonal < 0.05,
         fmt("rho var_n = %.2f, max variance error %.3f (<= 0.10), max off-diagonal %.3f (< 0.05)",
             rho * var, w.max_relative_variance_error, w.max_relative_offdiagonal));
}

double cosamp_exact_rate(std::size_t dim, std::size_t w, std::size_t rows, std::size_t trials,
                         std::uint64_t point) {
  std::vector<char> exact(trials, 0);
  parallel_for(trials, default_worker_count(), [&](std::size_t t) {
    const std::uint64_t seed = derive_trial_seed(404, point, t);
    const auto sig = generate_bandlimited(dim, w, std::nullopt, derive_stream_seed(seed, 1));
    const auto r = generate_ensemble(rows, dim, Distribution::gaussian, derive_stream_seed(seed, 3));
    exact[t] = cosamp(r, r.apply(sig.coeffs()), w).support_hat == sig.support();
  });
  double n = 0;
  for (char e : exact) n += e;
  return n / static_cast<double>(trials);
}

void cosamp_recovery() {
  const std::size_t dim = 2048, w = 4;
  const double limit = theory::rho_cs(static_cast<double>(dim / w), 0.5);
  bool ok = true;
  std::string detail = fmt("rho_cs %.2f; exact rate", limit);
  std::uint64_t point = 0;
  for (std::size_t rho = 2; static_cast<double>(rho) <= limit; rho *= 2, ++point) {
    const double rate = cosamp_exact_rate(dim, w, dim / rho, 100, point);
    ok = ok && rate >= 0.99;
    detail += fmt(" rho=%.0f: %.2f", static_cast<double>(rho), rate);
  }
  const auto rows = static_cast<std::size_t>(std::floor(static_cast<double>(dim) / (2.0 * limit)));
  const double fail = 1.0 - cosamp_exact_rate(dim, w, rows, 100, 99);
  ok = ok && fail > 0.5;
  detail += fmt("; at 2 rho_cs (M=%.0f) failure rate %.2f (> 0.5)", static_cast<double>(rows), fail);
  report(4, ok, detail);
}

void quantizer_laws() {
  std::mt19937_64 rng(55);
  int law_fail = 0;
  for (int b : {2, 4, 8, 12}) {
    const QuantizerSpec q(b, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const Eigen::VectorXd v = oracle::gaussian_vector(8 + i % 500, rng);
      const double beta = 1.0 / v.cwiseAbs().maxCoeff();
      const double s_db = to_db(sqnr(q, Eigen::VectorXd(beta * v)));
      law_fail += !(s_db > 6.02 * b - 20.0 * std::log10(par(v)));
    }
  }
  int dr_fail = 0;
  double min_margin = INFINITY;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd x = oracle::gaussian_vector(64, rng);
    const int b = 4 + i % 9;
    const QuantizerSpec q(b, 1.0);
    const double cmax = max_admissible_target(q, x);
    if (!(cmax > 1.0)) {
      ++dr_fail;
      continue;
    }
    const double c = std::pow(cmax, 0.02 + 0.96 * u01(rng));
    const auto closed = dynamic_range_closed_form(q, x, c);
    const auto emp = dynamic_range_empirical(q, x, c, [&](double beta) { return sqnr(q, Eigen::VectorXd(beta * x)); });
    dr_fail += !(emp.dr_linear >= closed.dr_linear);
    min_margin = std::min(min_margin, emp.dr_db - closed.dr_db);
  }
  report(5, law_fail == 0 && dr_fail == 0,
         fmt("SQNR law violations %.0f of 4000; dynamic-range violations %.0f of 100 (min margin %.2f dB)",
             law_fail, dr_fail, min_margin));
}

void quantization_trend() {
  const std::filesystem::path root = CSLAB_SOURCE_DIR;
  bool ok = true;
  std::string detail;
  for (const auto& [name, expect] : std::vector<std::pair<std::string, double>>{{"fig2b_4bit.json", 20.0},
                                                                               {"fig2b_8bit.json", 17.0}}) {
    const SweepConfig cfg = parse_config(root / "configs" / name);
    const auto summary = summarize(run_quantization_sweep(cfg, default_worker_count()));
    std::map<std::size_t, double> orc, cs;
    for (const auto& s : summary) (s.method == Method::oracle ? orc : cs)[s.rho] = *s.mean_rsnr_db;
    const double gain = orc.at(16) - orc.at(1);
    bool rising = true;
    for (auto it = std::next(orc.begin()); it != orc.end(); ++it) rising = rising && it->second > std::prev(it)->second;
    double cs_peak = -INFINITY;
    for (const auto& [rho, v] : cs) cs_peak = std::max(cs_peak, v);
    const double cs_last = cs.rbegin()->second;
    const double orc_last = orc.rbegin()->second;
    const bool collapse = cs_last <= cs_peak - 10.0 && cs_last < orc_last;
    ok = ok && std::abs(gain - expect) <= 3.0 && rising && collapse;
    detail += name + fmt(": gain %.2f dB (target %.0f +- 3), ", gain, expect) +
              (rising ? "oracle rising" : "oracle NOT rising") +
              fmt(", cosamp last %.1f dB vs peak %.1f, oracle last %.1f; ", cs_last, cs_peak, orc_last);
  }
  report(6, ok, detail);
}

void design_rule_claims() {
  const auto r = theory::design_rules(1e9, 4e5, 0.5, 8.0);
  const bool ok = r.rho_cs >= 155 && r.rho_cs <= 165 && r.noise_figure_db >= 21.8 && r.noise_figure_db <= 22.2 &&
                  r.bit_gain >= 9 && r.bit_gain <= 10 && std::abs(r.sampling_rate - 6.25e6) <= 0.1e6;
  report(7, ok,
         fmt("rho_cs %.2f, NF %.2f dB, bit gain %.2f, rate %.3f MHz", r.rho_cs, r.noise_figure_db, r.bit_gain,
             r.sampling_rate / 1e6));
}

void appendix_properties() {
  std::mt19937_64 rng(77);
  int eig_fail = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 6 + rep % 10, m = 1 + rep % n;
    const Eigen::MatrixXd g = oracle::gaussian_matrix(n, n, rng);
    const Eigen::MatrixXd a = g * g.transpose() + 0.05 * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd b = oracle::gaussian_matrix(n, m, rng);
    using Solver = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>;
    const Eigen::VectorXd la = Solver(a, Eigen::EigenvaluesOnly).eigenvalues();
    const Eigen::VectorXd lb = Solver(b.transpose() * b, Eigen::EigenvaluesOnly).eigenvalues();
    const Eigen::VectorXd lab = Solver(b.transpose() * a * b, Eigen::EigenvaluesOnly).eigenvalues();
    const double tol = 1e-10 * la.maxCoeff() * lb.maxCoeff();
    eig_fail += !(lab.maxCoeff() <= la.maxCoeff() * lb.maxCoeff() + tol &&
                  lab.minCoeff() >= la.minCoeff() * lb.minCoeff() - tol);
  }

  const auto r = orthogonalize_rows(generate_ensemble(12, 16, Distribution::gaussian, 8));
  const double delta = estimate_rip_constant(r, 2, RipMode::exhaustive(), 0).delta;
  int pinv_fail = 0, supports = 0;
  oracle::for_each_support(16, 2, [&](const std::vector<std::size_t>& s) {
    const Eigen::MatrixXd p =
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(oracle::select_columns(r.matrix(), s)).pseudoInverse();
    const Eigen::VectorXd sv = oracle::singular_values(p);
    pinv_fail += !(sv.minCoeff() >= (1 - 1e-10) / std::sqrt(1 + delta) &&
                   sv.maxCoeff() <= (1 + 1e-10) / std::sqrt(1 - delta));
    ++supports;
  });

  const auto raw = generate_ensemble(24, 96, Distribution::gaussian, 9);
  const auto orth = orthogonalize_rows(raw);
  const double gram_err =
      (orth.matrix() * orth.matrix().transpose() - 4.0 * Eigen::MatrixXd::Identity(24, 24)).cwiseAbs().maxCoeff();
  auto projector = [](const Eigen::MatrixXd& m) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
    return Eigen::MatrixXd(svd.matrixV() * svd.matrixV().transpose());
  };
  const double span_err = (projector(raw.matrix()) - projector(orth.matrix())).cwiseAbs().maxCoeff();

  report(8, eig_fail == 0 && pinv_fail == 0 && supports == 120 && delta < 1 && gram_err < 1e-8 && span_err < 1e-8,
         fmt("eigenvalue bracket failures %.0f of 100; pseudoinverse bracket failures %.0f of %.0f supports; "
             "|R R^T - rho I| %.1e",
             eig_fail, pinv_fail, supports, gram_err) +
             fmt(", row-space change %.1e", span_err));
}

void determinism() {
  const SweepConfig cfg = slope_sweep();
  std::string reference;
  bool ok = true;
  for (unsigned workers : {1u, 4u, 8u}) {
    for (int rep = 0; rep < 2; ++rep) {
      const std::string csv = results_to_csv(run_noise_folding_sweep(cfg, workers));
      if (reference.empty()) reference = csv;
      ok = ok && csv == reference;
    }
  }
  report(9, ok, fmt("6 runs under 1, 4 and 8 workers, %.0f CSV bytes each, identical", reference.size()));
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void()>>> criteria{
      {1, noise_folding_slope}, {2, bound_containment}, {3, whiteness},
      {4, cosamp_recovery},     {5, quantizer_laws},    {6, quantization_trend},
      {7, design_rule_claims},  {8, appendix_properties}, {9, determinism}};
  for (const auto& [id, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
