#ifndef MIXTEST_DISTRIBUTIONS_HPP
#define MIXTEST_DISTRIBUTIONS_HPP

#include <string>
#include <vector>

#include "mixtest/rng.hpp"

namespace mixtest {

// Parametric families used by the model pairs and the survival mixture.
enum class Family {
  Poisson,            // params: rate lambda > 0
  GeometricFailures,  // params: success probability p in (0,1); support {0,1,...}
  Normal,             // params: location, scale > 0
  Laplace,            // params: location, scale > 0
  Gumbel,             // params: location mu, scale beta > 0 (max-type)
  Logistic,           // params: location xi, scale zeta > 0
  BernoulliLogit,     // params: success probability in (0,1)
  BernoulliProbit,    // params: success probability in (0,1)
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct Params {
  std::vector<double> values;
};

// Throws ParameterError when params violate the family's domain.
void validate_params(Family family, const Params& params);

// Natural-log density/mass at x. Returns kLogZero outside the support.
double log_density(Family family, const Params& params, double x);

// i.i.d. draws.
std::vector<double> sample(Family family, const Params& params, std::size_t count,
                           RandomStream& rng);

// One draw.
double sample_one(Family family, const Params& params, RandomStream& rng);

// Censoring-aware evaluation on the negated-log-time scale, where a
// right-censored observation contributes the component CDF at y:
//   Normal:   log Phi((y - loc)/scale)
//   Gumbel:   -exp(-(y - mu)/beta)
//   Logistic: -log(1 + exp(-(y - xi)/zeta))
// censored=false is exactly log_density. Only the three location-scale
// families above support censored=true (UnsupportedError otherwise).
double censored_log_density(Family family, const Params& params, double x, bool censored);

// Quantile of the three censorable families (used for administrative
// censoring thresholds in simulation).
double quantile(Family family, const Params& params, double p);

struct MomentMatched {
  Params normal;    // (location, sqrt(variance))
  Params gumbel;    // (mu, beta) with mu = location - gamma*beta, beta = sqrt(6 variance)/pi
  Params logistic;  // (xi, zeta) with xi = location, zeta = sqrt(3 variance)/pi
};

// Parameterisations of Normal/Gumbel/Logistic sharing the given mean and variance.
MomentMatched moment_match(double location, double variance);

}  // namespace mixtest

#endif
