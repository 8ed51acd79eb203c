#ifndef MIXTEST_ORACLES_HPP
#define MIXTEST_ORACLES_HPP

#include <functional>
#include <span>
#include <vector>

namespace mixtest {

struct BayesFactorResult {
  double log_bf;             // log B12 = log m1(x) - log m2(x)
  double posterior_prob_m1;  // 1/(1+exp(-log_bf)), equal prior model weights

  static BayesFactorResult from_log_bf(double log_bf);
};

// Classical baselines for the model pairs with closed-form marginals.

// Poisson P(lambda) vs number-of-failures Geometric with p = 1/(1+lambda),
// both under the shared improper prior pi(lambda) = 1/lambda:
//   B12 = Gamma(n + sum x) / (Gamma(n) n^{sum x} prod x_i!)
// evaluated in log-gamma arithmetic (B12 = 1 at sum x = 0, the regularized limit).
BayesFactorResult bf_poisson_geometric(std::span<const double> counts);

// N(theta,1) vs N(theta,2) under a flat prior on the shared location:
//   B12 = 2^{(n-1)/2} / exp( sum (x_i - xbar)^2 / 4 )
BayesFactorResult bf_normal_var(std::span<const double> x);

// log of integral_R exp(-rate * sum |x_i - mu|) dmu in closed form: the sum of
// absolute deviations is piecewise linear between order statistics, so each
// segment integrates an exponential exactly. Evaluated in log space.
// Requires n >= 2 (the integral diverges for n < 2).
double log_laplace_location_integral(std::span<const double> x, double rate);

// The flat-prior location integral of exp(-sum |x_i - mu| / sqrt2), i.e. the
// order-statistics expansion at rate 1/sqrt2; include_prefactor adds the
// -n log(2 sqrt2) normalization of a scale-sqrt2 Laplace density.
double laplace_marginal_flat_prior(std::span<const double> x, bool include_prefactor = false);

// N(mu,1) vs the variance-matched Laplace (rate sqrt2, so variance 1) under a
// flat prior on the shared location.
BayesFactorResult bf_normal_laplace(std::span<const double> x);

// --- generic quadrature oracle -------------------------------------------

using LogIntegrand = std::function<double(double)>;

// Domain endpoints may be infinite (half-infinite and doubly infinite
// intervals are transformed onto finite ones internally).
struct Interval {
  double lo;
  double hi;
};

// Adaptive Gauss-Kronrod integration of exp(log_integrand) over the domain,
// accumulated in log scale so that integrands with very negative log values
// do not underflow. Returns log of the integral.
// Throws AccuracyError (carrying the achieved tolerance) on non-convergence.
double log_quadrature_marginal(const LogIntegrand& log_integrand, Interval domain,
                               double rel_tol = 1e-9);

// exp(log_quadrature_marginal).
double quadrature_marginal(const LogIntegrand& log_integrand, Interval domain,
                           double rel_tol = 1e-9);

}  // namespace mixtest

#endif
