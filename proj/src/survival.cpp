#include "mixtest/survival.hpp"

#include <cmath>
#include <numbers>

#include "mixtest/errors.hpp"
#include "mixtest/special.hpp"

namespace mixtest {

namespace {

constexpr double kPi = std::numbers::pi;

struct NormalAllocStats {
  long m = 0;
  double mean = 0.0;
  double ss = 0.0;  // sum of squared deviations
};

NormalAllocStats normal_allocated_stats(const Dataset& data, const Allocation& alloc) {
  NormalAllocStats st;
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (alloc.labels[i] == 0 && !data.is_censored(i)) {
      st.m += 1;
      sum += data.y[i];
    }
  }
  if (st.m == 0) return st;
  st.mean = sum / static_cast<double>(st.m);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (alloc.labels[i] == 0 && !data.is_censored(i)) {
      const double d = data.y[i] - st.mean;
      st.ss += d * d;
    }
  }
  return st;
}

}  // namespace

MixtureSpec build_survival_spec(double a0) {
  if (!(a0 > 0.0)) throw ParameterError("a0 must be > 0");
  MixtureSpec spec;
  spec.weight_prior = WeightPrior::symmetric(3, a0);
  spec.slot_priors = {{SlotPrior::Kind::Flat}, {SlotPrior::Kind::Reciprocal}};
  spec.slot_names = {"phi", "sigma2"};
  spec.components = {
      {Family::Normal, {ParamRule::slot_ref(0), ParamRule::scaled_sqrt(1, 1.0)}},
      {Family::Gumbel,
       {ParamRule::gumbel_location(0, 1), ParamRule::scaled_sqrt(1, std::sqrt(6.0) / kPi)}},
      {Family::Logistic, {ParamRule::slot_ref(0), ParamRule::scaled_sqrt(1, std::sqrt(3.0) / kPi)}},
  };
  spec.validate();
  return spec;
}

double survival_mixture_log_density(const SurvivalParams& params, double y, bool censored) {
  if (!(params.sigma2 > 0.0)) throw ParameterError("sigma2 must be > 0");
  check_simplex(params.weights, 3);
  static const MixtureSpec spec = build_survival_spec(1.0);
  const double globals[2] = {params.phi, params.sigma2};
  double terms[3];
  for (int j = 0; j < 3; ++j) {
    terms[j] = params.weights[j] > 0.0
                   ? std::log(params.weights[j]) +
                         component_log_density(spec.components[j], globals, y, censored)
                   : kLogZero;
  }
  return log_sum_exp(std::span<const double>(terms, 3));
}

bool propriety_check(const Dataset& data) {
  double first = 0.0;
  bool seen = false;
  long uncensored = 0;
  bool distinct = false;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.is_censored(i)) continue;
    ++uncensored;
    if (!seen) {
      first = data.y[i];
      seen = true;
    } else if (data.y[i] != first) {
      distinct = true;
    }
  }
  return uncensored >= 2 && distinct;
}

SurvivalRun run_survival_test(const Dataset& data, double a0, const ChainConfig& config) {
  config.validate();
  data.validate();
  if (!propriety_check(data)) {
    throw DegenerateError(
        "survival posterior is improper: need at least two distinct uncensored observations");
  }
  const MixtureSpec spec = build_survival_spec(a0);
  RandomStream rng(config.seed);

  // moment start from the uncensored points
  std::vector<double> uncens;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data.is_censored(i)) uncens.push_back(data.y[i]);
  }
  double phi = mean_of(uncens);
  double var = 0.0;
  for (double v : uncens) var += (v - phi) * (v - phi);
  double sigma2 = std::max(var / static_cast<double>(uncens.size()), 1e-8);

  std::vector<double> weights = rng.dirichlet(spec.weight_prior.concentration);

  auto completed_target = [&](double f, double s2, const Allocation& alloc) {
    if (!(s2 > 0.0)) return kLogZero;
    const double globals[2] = {f, s2};
    double lp = -std::log(s2);  // prior 1/sigma2
    for (std::size_t i = 0; i < data.size(); ++i) {
      lp += component_log_density(spec.components[alloc.labels[i]], globals, data.y[i],
                                  data.is_censored(i));
    }
    return lp;
  };

  Trace trace;
  trace.num_components = 3;
  trace.num_slots = 2;
  const std::size_t kept = static_cast<std::size_t>(config.iterations - config.burn_in);
  trace.weights.reserve(kept * 3);
  trace.globals.reserve(kept * 2);
  trace.accepted.reserve(kept);

  constexpr double kWalkStep = 0.25;
  for (long t = 0; t < config.iterations; ++t) {
    const double globals[2] = {phi, sigma2};
    const Allocation alloc = sample_allocations(spec, globals, weights, data, rng);
    const AllocationStats stats = allocation_stats(alloc, data, 3);
    weights = sample_weights_conditional(stats.counts, spec.weight_prior, rng);

    bool accepted = false;
    const NormalAllocStats na = normal_allocated_stats(data, alloc);
    if (na.m >= 2 && na.ss > 0.0) {
      // conjugate fit to the Normal-allocated points as independence proposal
      const double shape = 0.5 * static_cast<double>(na.m - 1);
      const double scale = 0.5 * na.ss;
      const double prop_s2 = scale / rng.gamma(shape, 1.0);
      const double prop_phi = rng.normal(na.mean, std::sqrt(prop_s2 / static_cast<double>(na.m)));
      auto log_q = [&](double f, double s2) {
        return log_inverse_gamma_pdf(s2, shape, scale) +
               log_normal_pdf(f, na.mean, std::sqrt(s2 / static_cast<double>(na.m)));
      };
      const double log_ratio = completed_target(prop_phi, prop_s2, alloc) -
                               completed_target(phi, sigma2, alloc) + log_q(phi, sigma2) -
                               log_q(prop_phi, prop_s2);
      if (std::log(rng.uniform()) < log_ratio) {
        phi = prop_phi;
        sigma2 = prop_s2;
        accepted = true;
      }
    } else {
      // random walk on (phi, log sigma); the sigma2 Jacobian keeps the target invariant
      const double prop_phi = phi + kWalkStep * std::sqrt(sigma2) * rng.normal();
      const double prop_s2 = sigma2 * std::exp(2.0 * kWalkStep * rng.normal());
      const double log_ratio = completed_target(prop_phi, prop_s2, alloc) -
                               completed_target(phi, sigma2, alloc) + std::log(prop_s2) -
                               std::log(sigma2);
      if (std::log(rng.uniform()) < log_ratio) {
        phi = prop_phi;
        sigma2 = prop_s2;
        accepted = true;
      }
    }

    if (t >= config.burn_in) {
      trace.weights.insert(trace.weights.end(), weights.begin(), weights.end());
      trace.globals.push_back(phi);
      trace.globals.push_back(sigma2);
      trace.accepted.push_back(accepted ? 1 : 0);
    }
  }

  SurvivalRun run;
  run.summary = summarize(trace);
  run.trace = std::move(trace);
  return run;
}

Dataset simulate_survival_cohort(Family true_family, std::size_t n, double censor_rate,
                                 double location, double variance, std::uint64_t seed) {
  if (true_family != Family::Normal && true_family != Family::Gumbel &&
      true_family != Family::Logistic) {
    throw UnsupportedError("survival cohorts use the Normal, Gumbel or Logistic family");
  }
  if (censor_rate < 0.0 || censor_rate >= 1.0) {
    throw ParameterError("censor rate must lie in [0,1)");
  }
  const MomentMatched mm = moment_match(location, variance);
  const Params& params = true_family == Family::Normal
                             ? mm.normal
                             : (true_family == Family::Gumbel ? mm.gumbel : mm.logistic);
  RandomStream rng(seed);
  Dataset data;
  data.y = sample(true_family, params, n, rng);
  if (censor_rate > 0.0) {
    // administrative censoring: a fixed study cutoff on the time scale is a
    // fixed lower threshold on y = -log(time)
    const double threshold = quantile(true_family, params, censor_rate);
    data.censored.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (data.y[i] < threshold) {
        data.y[i] = threshold;
        data.censored[i] = 1;
      }
    }
  }
  return data;
}

}  // namespace mixtest
