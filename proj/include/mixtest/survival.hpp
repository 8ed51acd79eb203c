#ifndef MIXTEST_SURVIVAL_HPP
#define MIXTEST_SURVIVAL_HPP

#include "mixtest/mixture.hpp"
#include "mixtest/samplers.hpp"

namespace mixtest {

// Three-component location-scale mixture on the y = -log(time) scale:
// Normal / Gumbel / Logistic sharing (phi, sigma2) through moment matching,
// with prior pi(phi, sigma2) = 1/sigma2 and a Dirichlet(a0,a0,a0) weight prior.
MixtureSpec build_survival_spec(double a0);

struct SurvivalParams {
  std::vector<double> weights;  // (alpha1, alpha2, alpha3) on the simplex
  double phi = 0.0;
  double sigma2 = 1.0;
};

// Log of the censoring-aware three-term mixture density at y.
double survival_mixture_log_density(const SurvivalParams& params, double y, bool censored);

// Posterior propriety guard: requires at least two uncensored observations
// with at least two distinct values.
bool propriety_check(const Dataset& data);

struct SurvivalRun {
  Trace trace;  // weights (3 columns), globals (phi, sigma2)
  PosteriorSummary summary;
};

// Gibbs over (weights, allocations) with a Metropolis-within-Gibbs update of
// (phi, sigma2): normal-inverse-gamma independence proposal fitted to the
// currently Normal-allocated uncensored points, falling back to a random walk
// on (phi, log sigma) when fewer than two such points exist.
// Throws DegenerateError when propriety_check fails.
SurvivalRun run_survival_test(const Dataset& data, double a0, const ChainConfig& config);

// Simulated cohort on the y scale: n draws from the moment-matched family at
// (location, variance), administratively censored at the censor_rate quantile
// (censor_rate = 0 disables censoring).
Dataset simulate_survival_cohort(Family true_family, std::size_t n, double censor_rate,
                                 double location, double variance, std::uint64_t seed);

}  // namespace mixtest

#endif
