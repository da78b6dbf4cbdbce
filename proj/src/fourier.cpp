#include "cslab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace cslab::fourier {
namespace {

// FFTW planning is not thread safe; execution on fresh arrays is. Plans are
// created once per size under a lock and reused through the new-array API.
struct PlanCache {
  std::mutex mutex;
  std::map<std::size_t, fftw_plan> forward;
  std::map<std::size_t, fftw_plan> backward;

  ~PlanCache() {
    for (auto& [n, p] : forward) fftw_destroy_plan(p);
    for (auto& [n, p] : backward) fftw_destroy_plan(p);
  }

  fftw_plan get(std::size_t n, bool is_forward) {
    std::lock_guard lock(mutex);
    auto& table = is_forward ? forward : backward;
    if (auto it = table.find(n); it != table.end()) return it->second;
    std::vector<double> real(n);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    const int size = static_cast<int>(n);
    fftw_plan plan = is_forward
        ? fftw_plan_dft_r2c_1d(size, real.data(), c, FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_c2r_1d(size, c, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw planning failed");
    table.emplace(n, plan);
    return plan;
  }
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

}  // namespace

BinInfo bin_info(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("bin_info: index outside basis");
  if (index == 0) return {BinKind::dc, 0};
  if (dim % 2 == 0 && index == dim - 1) return {BinKind::nyquist, dim / 2};
  const std::size_t freq = (index + 1) / 2;
  return {index % 2 == 1 ? BinKind::cosine : BinKind::sine, freq};
}

std::size_t bin_index(std::size_t dim, BinKind kind, std::size_t frequency) {
  switch (kind) {
    case BinKind::dc:
      if (frequency != 0) break;
      return 0;
    case BinKind::nyquist:
      if (dim % 2 != 0 || frequency != dim / 2) break;
      return dim - 1;
    case BinKind::cosine:
    case BinKind::sine:
      if (frequency == 0 || 2 * frequency >= dim) break;
      return kind == BinKind::cosine ? 2 * frequency - 1 : 2 * frequency;
  }
  throw std::invalid_argument("bin_index: no such bin at this dimension");
}

Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs) {
  const auto n = static_cast<std::size_t>(coeffs.size());
  if (n == 0) return {};
  const double root_n = std::sqrt(static_cast<double>(n));
  const double pair_scale = std::sqrt(static_cast<double>(n) / 2.0);

  std::vector<std::complex<double>> spec(n / 2 + 1, {0.0, 0.0});
  spec[0] = root_n * coeffs[0];
  for (std::size_t j = 1; 2 * j < n; ++j) {
    spec[j] = pair_scale * std::complex<double>(coeffs[static_cast<Eigen::Index>(2 * j - 1)],
                                                -coeffs[static_cast<Eigen::Index>(2 * j)]);
  }
  if (n % 2 == 0) spec[n / 2] = root_n * coeffs[static_cast<Eigen::Index>(n - 1)];

  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  fftw_execute_dft_c2r(plans().get(n, false), reinterpret_cast<fftw_complex*>(spec.data()),
                       out.data());
  out /= static_cast<double>(n);
  return out;
}

Eigen::VectorXd analyze(const Eigen::VectorXd& samples) {
  const auto n = static_cast<std::size_t>(samples.size());
  if (n == 0) return {};
  const double root_n = std::sqrt(static_cast<double>(n));
  const double pair_scale = std::sqrt(static_cast<double>(n) / 2.0);

  Eigen::VectorXd in = samples;
  std::vector<std::complex<double>> spec(n / 2 + 1);
  fftw_execute_dft_r2c(plans().get(n, true), in.data(),
                       reinterpret_cast<fftw_complex*>(spec.data()));

  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  out[0] = spec[0].real() / root_n;
  for (std::size_t j = 1; 2 * j < n; ++j) {
    out[static_cast<Eigen::Index>(2 * j - 1)] = spec[j].real() / pair_scale;
    out[static_cast<Eigen::Index>(2 * j)] = -spec[j].imag() / pair_scale;
  }
  if (n % 2 == 0) out[static_cast<Eigen::Index>(n - 1)] = spec[n / 2].real() / root_n;
  return out;
}

}  // namespace cslab::fourier
