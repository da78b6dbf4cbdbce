#include "cslab/quantization.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cslab/signal_model.hpp"

namespace cslab {

QuantizerSpec::QuantizerSpec(int bits, double saturation) : bits_(bits), saturation_(saturation) {
  if (bits < 1) throw std::invalid_argument("QuantizerSpec: bits must be >= 1");
  if (!(saturation > 0.0) || !std::isfinite(saturation)) {
    throw std::invalid_argument("QuantizerSpec: saturation must be positive");
  }
  interval_ = std::ldexp(saturation, 1 - bits);
}

double quantize(const QuantizerSpec& q, double v) {
  const double delta = q.interval();
  const double top = q.saturation() - delta / 2.0;
  const double level = delta * (std::floor(v / delta) + 0.5);
  if (level > top) return top;
  if (level < -top) return -top;
  return level;
}

Eigen::VectorXd quantize(const QuantizerSpec& q, const Eigen::VectorXd& v) {
  return v.unaryExpr([&q](double e) { return quantize(q, e); });
}

double sqnr(const QuantizerSpec& q, const Eigen::VectorXd& v) {
  const double energy = v.squaredNorm();
  if (energy == 0.0) throw std::domain_error("sqnr: zero vector");
  const double err = (v - quantize(q, v)).squaredNorm();
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return energy / err;
}

std::string_view to_string(DynamicRangeMethod m) {
  return m == DynamicRangeMethod::closed_form ? "closed_form" : "empirical_search";
}

double max_admissible_target(const QuantizerSpec& q, const Eigen::VectorXd& x) {
  const double gamma = par(x);
  return q.levels() * q.levels() / (gamma * gamma);
}

DynamicRangeResult dynamic_range_closed_form(const QuantizerSpec& q, const Eigen::VectorXd& x,
                                             double target) {
  const double gamma = par(x);
  const double upper = q.levels() * q.levels() / (gamma * gamma);
  if (!(target > 1.0) || target > upper) {
    throw std::domain_error("dynamic_range_closed_form: target outside (1, (2G/Delta)^2/gamma^2]; "
                            "dynamic range is ill-defined");
  }
  const double b = static_cast<double>(x.size());
  const double energy = x.squaredNorm();
  const double half = q.interval() / 2.0;
  const double g = q.saturation();
  const double denom = target * gamma * gamma - 1.0;

  DynamicRangeResult r;
  r.method = DynamicRangeMethod::closed_form;
  r.beta_min = std::sqrt(target * b * half * half / energy);
  r.beta_max = std::sqrt((target * b / energy) * (g * g - half * half) / denom);
  r.dr_linear = (q.levels() * q.levels() - 1.0) / denom;
  r.dr_db = 10.0 * std::log10(r.dr_linear);
  return r;
}

DynamicRangeResult dynamic_range_empirical(const QuantizerSpec& q, const Eigen::VectorXd& x,
                                           double target,
                                           const std::function<double(double)>& snr_fn,
                                           const EmpiricalSearchOptions& options) {
  const double peak = x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) throw std::domain_error("dynamic_range_empirical: zero vector");
  if (!(options.grid_span > 1.0) || options.points_per_decade < 1 ||
      !(options.relative_resolution > 0.0)) {
    throw std::invalid_argument("dynamic_range_empirical: bad search options");
  }
  const double anchor = q.saturation() / peak;
  const auto passes = [&](double beta) { return snr_fn(beta) >= target; };
  if (!passes(anchor)) {
    throw std::domain_error("dynamic_range_empirical: target unachievable at full-scale anchor");
  }

  const int steps =
      static_cast<int>(std::lround(std::log10(options.grid_span) * options.points_per_decade));
  const double ratio = std::pow(10.0, 1.0 / options.points_per_decade);

  // Walks outward in direction dir (+1 up, -1 down); returns the outermost
  // certified scaling.
  const auto edge = [&](int dir) {
    double inside = anchor;
    for (int k = 1; k <= steps; ++k) {
      const double probe = anchor * std::pow(ratio, dir * k);
      if (passes(probe)) {
        inside = probe;
        continue;
      }
      double outside = probe;
      while (std::abs(outside / inside - 1.0) > options.relative_resolution) {
        const double mid = std::sqrt(inside * outside);
        if (passes(mid)) {
          inside = mid;
        } else {
          outside = mid;
        }
      }
      return inside;
    }
    return inside;
  };

  DynamicRangeResult r;
  r.method = DynamicRangeMethod::empirical_search;
  r.beta_min = edge(-1);
  r.beta_max = edge(+1);
  r.dr_linear = (r.beta_max / r.beta_min) * (r.beta_max / r.beta_min);
  r.dr_db = 10.0 * std::log10(r.dr_linear);
  return r;
}

}  // namespace cslab
