#include "mixtest/distributions.hpp"

#include <cmath>
#include <numbers>

#include "mixtest/errors.hpp"
#include "mixtest/special.hpp"

namespace mixtest {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_count(double x) {
  return x >= 0.0 && x == std::floor(x);
}

void require(bool ok, const char* msg) {
  if (!ok) throw ParameterError(msg);
}

void check_size(const Params& p, std::size_t n, const char* family) {
  if (p.values.size() != n) {
    throw ParameterError(std::string(family) + ": wrong number of parameters");
  }
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Poisson: return "poisson";
    case Family::GeometricFailures: return "geometric";
    case Family::Normal: return "normal";
    case Family::Laplace: return "laplace";
    case Family::Gumbel: return "gumbel";
    case Family::Logistic: return "logistic";
    case Family::BernoulliLogit: return "bernoulli-logit";
    case Family::BernoulliProbit: return "bernoulli-probit";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "poisson") return Family::Poisson;
  if (name == "geometric") return Family::GeometricFailures;
  if (name == "normal") return Family::Normal;
  if (name == "laplace") return Family::Laplace;
  if (name == "gumbel") return Family::Gumbel;
  if (name == "logistic") return Family::Logistic;
  if (name == "bernoulli-logit") return Family::BernoulliLogit;
  if (name == "bernoulli-probit") return Family::BernoulliProbit;
  throw ParameterError("unknown family name: " + name);
}

void validate_params(Family family, const Params& params) {
  switch (family) {
    case Family::Poisson:
      check_size(params, 1, "poisson");
      require(params.values[0] > 0.0 && std::isfinite(params.values[0]),
              "poisson: lambda must be in (0, inf)");
      break;
    case Family::GeometricFailures:
      check_size(params, 1, "geometric");
      require(params.values[0] > 0.0 && params.values[0] < 1.0,
              "geometric: p must be in (0,1)");
      break;
    case Family::Normal:
    case Family::Laplace:
    case Family::Gumbel:
    case Family::Logistic:
      check_size(params, 2, family_name(family));
      require(std::isfinite(params.values[0]), "location must be finite");
      require(params.values[1] > 0.0 && std::isfinite(params.values[1]),
              "scale must be in (0, inf)");
      break;
    case Family::BernoulliLogit:
    case Family::BernoulliProbit:
      check_size(params, 1, "bernoulli");
      require(params.values[0] > 0.0 && params.values[0] < 1.0,
              "bernoulli: success probability must be in (0,1)");
      break;
  }
}

double log_density(Family family, const Params& params, double x) {
  validate_params(family, params);
  switch (family) {
    case Family::Poisson: {
      if (!is_count(x)) return kLogZero;
      const double lambda = params.values[0];
      return x * std::log(lambda) - lambda - std::lgamma(x + 1.0);
    }
    case Family::GeometricFailures: {
      if (!is_count(x)) return kLogZero;
      const double p = params.values[0];
      return std::log(p) + x * std::log1p(-p);
    }
    case Family::Normal:
      return log_normal_pdf(x, params.values[0], params.values[1]);
    case Family::Laplace: {
      const double z = (x - params.values[0]) / params.values[1];
      return -std::fabs(z) - std::log(2.0 * params.values[1]);
    }
    case Family::Gumbel: {
      const double z = (x - params.values[0]) / params.values[1];
      return -z - std::exp(-z) - std::log(params.values[1]);
    }
    case Family::Logistic: {
      const double z = std::fabs((x - params.values[0]) / params.values[1]);
      return -z - 2.0 * std::log1p(std::exp(-z)) - std::log(params.values[1]);
    }
    case Family::BernoulliLogit:
    case Family::BernoulliProbit: {
      if (x != 0.0 && x != 1.0) return kLogZero;
      const double p = params.values[0];
      return x == 1.0 ? std::log(p) : std::log1p(-p);
    }
  }
  return kLogZero;
}

double sample_one(Family family, const Params& params, RandomStream& rng) {
  switch (family) {
    case Family::Poisson:
      return static_cast<double>(rng.poisson(params.values[0]));
    case Family::GeometricFailures:
      return static_cast<double>(rng.geometric_failures(params.values[0]));
    case Family::Normal:
      return rng.normal(params.values[0], params.values[1]);
    case Family::Laplace:
      return rng.laplace(params.values[0], params.values[1]);
    case Family::Gumbel:
      return rng.gumbel(params.values[0], params.values[1]);
    case Family::Logistic:
      return rng.logistic(params.values[0], params.values[1]);
    case Family::BernoulliLogit:
    case Family::BernoulliProbit:
      return rng.bernoulli(params.values[0]) ? 1.0 : 0.0;
  }
  throw ParameterError("unknown family");
}

std::vector<double> sample(Family family, const Params& params, std::size_t count,
                           RandomStream& rng) {
  validate_params(family, params);
  if (count < 1) throw ParameterError("sample: count must be >= 1");
  std::vector<double> out(count);
  for (double& v : out) v = sample_one(family, params, rng);
  return out;
}

double censored_log_density(Family family, const Params& params, double x, bool censored) {
  if (!censored) return log_density(family, params, x);
  validate_params(family, params);
  switch (family) {
    case Family::Normal:
      return log_norm_cdf((x - params.values[0]) / params.values[1]);
    case Family::Gumbel:
      return -std::exp(-(x - params.values[0]) / params.values[1]);
    case Family::Logistic:
      return -std::log1p(std::exp(-(x - params.values[0]) / params.values[1]));
    default:
      throw UnsupportedError(std::string("censored evaluation not defined for family ") +
                             family_name(family));
  }
}

double quantile(Family family, const Params& params, double p) {
  validate_params(family, params);
  if (!(p > 0.0) || !(p < 1.0)) throw ParameterError("quantile requires p in (0,1)");
  switch (family) {
    case Family::Normal:
      return params.values[0] + params.values[1] * norm_quantile(p);
    case Family::Gumbel:
      return params.values[0] - params.values[1] * std::log(-std::log(p));
    case Family::Logistic:
      return params.values[0] + params.values[1] * std::log(p / (1.0 - p));
    default:
      throw UnsupportedError(std::string("quantile not implemented for family ") +
                             family_name(family));
  }
}

MomentMatched moment_match(double location, double variance) {
  if (!(variance > 0.0)) throw ParameterError("moment_match: variance must be > 0");
  const double sd = std::sqrt(variance);
  const double beta = std::sqrt(6.0 * variance) / kPi;
  const double zeta = std::sqrt(3.0 * variance) / kPi;
  MomentMatched m;
  m.normal = Params{{location, sd}};
  m.gumbel = Params{{location - kEulerGamma * beta, beta}};
  m.logistic = Params{{location, zeta}};
  return m;
}

}  // namespace mixtest
