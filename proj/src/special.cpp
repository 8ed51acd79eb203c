#include "mixtest/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mixtest/errors.hpp"

namespace mixtest {

double log_sum_exp(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double log_sum_exp(std::span<const double> terms) {
  double m = kLogZero;
  for (double t : terms) m = std::max(m, t);
  if (m == kLogZero) return kLogZero;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

double log1m_exp(double a) {
  if (a >= 0.0) return kLogZero;
  if (a > -std::numbers::ln2) return std::log(-std::expm1(a));
  return std::log1p(-std::exp(a));
}

double norm_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double log_norm_cdf(double x) {
  if (x > -1.0) {
    return std::log1p(-0.5 * std::erfc(x / std::numbers::sqrt2));
  }
  if (x > -37.0) {
    return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  }
  // Deep lower tail: Phi(x) ~ phi(x)/|x| * (1 - 1/x^2 + 3/x^4 - 15/x^6).
  const double x2 = x * x;
  const double corr = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
  return -0.5 * x2 - 0.5 * kLogTwoPi - std::log(-x) + std::log(corr);
}

double norm_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw ParameterError("norm_quantile requires p in (0,1)");
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (norm_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double log_beta_function(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double log_beta_pdf(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("beta pdf requires a,b > 0");
  if (!(x > 0.0) || !(x < 1.0)) return kLogZero;
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta_function(a, b);
}

double log_dirichlet_pdf(std::span<const double> w, std::span<const double> concentration) {
  if (w.size() != concentration.size()) {
    throw ContractError("dirichlet pdf: dimension mismatch");
  }
  double lp = 0.0;
  double conc_sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(concentration[i] > 0.0)) throw ParameterError("dirichlet concentration must be > 0");
    if (!(w[i] > 0.0)) return kLogZero;
    lp += (concentration[i] - 1.0) * std::log(w[i]) - std::lgamma(concentration[i]);
    conc_sum += concentration[i];
  }
  return lp + std::lgamma(conc_sum);
}

double log_normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * kLogTwoPi;
}

double log_gamma_pdf(double x, double shape, double rate) {
  if (!(x > 0.0)) return kLogZero;
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double log_inverse_gamma_pdf(double x, double shape, double scale) {
  if (!(x > 0.0)) return kLogZero;
  return shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(x) - scale / x;
}

double quantile_type7_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw ContractError("quantile of empty sample");
  if (p <= 0.0) return sorted.front();
  if (p >= 1.0) return sorted.back();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile_type7(std::span<const double> sample, double p) {
  std::vector<double> copy(sample.begin(), sample.end());
  std::sort(copy.begin(), copy.end());
  return quantile_type7_sorted(copy, p);
}

double mean_of(std::span<const double> sample) {
  if (sample.empty()) throw ContractError("mean of empty sample");
  double acc = 0.0;
  for (double v : sample) acc += v;
  return acc / static_cast<double>(sample.size());
}

double ks_distance(std::vector<double> sample, double (*cdf)(double)) {
  if (sample.empty()) throw ContractError("ks distance of empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    dist = std::max(dist, std::fabs(f - static_cast<double>(i) / n));
    dist = std::max(dist, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return dist;
}

}  // namespace mixtest
