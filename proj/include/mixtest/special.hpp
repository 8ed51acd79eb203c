#ifndef MIXTEST_SPECIAL_HPP
#define MIXTEST_SPECIAL_HPP

#include <limits>
#include <span>
#include <vector>

namespace mixtest {

// Euler-Mascheroni constant to 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

inline constexpr double kLogTwoPi = 1.8378770664093454836;

double log_sum_exp(double a, double b);
double log_sum_exp(std::span<const double> terms);

// log(1 - exp(a)) for a < 0.
double log1m_exp(double a);

// Standard normal CDF and its logarithm; log_norm_cdf stays accurate far into
// the lower tail where Phi underflows.
double norm_cdf(double x);
double log_norm_cdf(double x);

// Standard normal quantile (bisection on norm_cdf; adequate for simulation).
double norm_quantile(double p);

double log_beta_function(double a, double b);

// Beta(a,b) log density at x in (0,1).
double log_beta_pdf(double x, double a, double b);

// Symmetric-argument Dirichlet log density at the simplex point w.
double log_dirichlet_pdf(std::span<const double> w, std::span<const double> concentration);

// log N(x | mean, sd^2).
double log_normal_pdf(double x, double mean, double sd);

// log Gamma(x | shape, rate).
double log_gamma_pdf(double x, double shape, double rate);

// log InverseGamma(x | shape, scale), density scale^shape/Gamma(shape) x^{-shape-1} e^{-scale/x}.
double log_inverse_gamma_pdf(double x, double shape, double scale);

// Type-7 quantile (linear interpolation between order statistics) of a sample.
// Sorts a copy; p in [0,1].
double quantile_type7(std::span<const double> sample, double p);
double quantile_type7_sorted(std::span<const double> sorted, double p);

double mean_of(std::span<const double> sample);

// Two-sided Kolmogorov-Smirnov distance between a sample and a CDF.
double ks_distance(std::vector<double> sample, double (*cdf)(double));

}  // namespace mixtest

#endif
