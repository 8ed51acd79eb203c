#include "mixtest/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mixtest/errors.hpp"
#include "mixtest/special.hpp"

namespace mixtest {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double data_mean(const Dataset& data) {
  return data.size() ? mean_of(data.y) : 0.0;
}

double data_median(const Dataset& data) {
  return data.size() ? quantile_type7(data.y, 0.5) : 0.0;
}

double data_sum(const Dataset& data) {
  double s = 0.0;
  for (double v : data.y) s += v;
  return s;
}

ComponentProposal normal_proposal(double mean, double var) {
  const double sd = std::sqrt(var);
  return {[mean, sd](RandomStream& rng) { return rng.normal(mean, sd); },
          [mean, sd](double x) { return log_normal_pdf(x, mean, sd); }};
}

}  // namespace

const char* pair_name(PairKind kind) {
  switch (kind) {
    case PairKind::PoissonVsGeometric: return "poisson-geometric";
    case PairKind::NormalVar1VsVar2: return "normal-variance";
    case PairKind::PointNullMean: return "point-null-mean";
    case PairKind::NormalVsLaplace: return "normal-laplace";
  }
  return "?";
}

PairKind pair_from_name(const std::string& name) {
  if (name == "poisson-geometric") return PairKind::PoissonVsGeometric;
  if (name == "normal-variance") return PairKind::NormalVar1VsVar2;
  if (name == "point-null-mean") return PairKind::PointNullMean;
  if (name == "normal-laplace") return PairKind::NormalVsLaplace;
  throw ParameterError("unknown pair name: " + name);
}

MixtureSpec build_pair(PairKind kind, double a0) {
  if (!(a0 > 0.0)) throw ParameterError("build_pair: a0 must be > 0");
  MixtureSpec spec;
  spec.weight_prior = WeightPrior::symmetric(2, a0);
  switch (kind) {
    case PairKind::PoissonVsGeometric:
      spec.slot_priors = {{SlotPrior::Kind::Reciprocal}};
      spec.slot_names = {"lambda"};
      spec.components = {
          {Family::Poisson, {ParamRule::slot_ref(0)}},
          {Family::GeometricFailures, {ParamRule::inverse_one_plus(0)}},
      };
      break;
    case PairKind::NormalVar1VsVar2:
      spec.slot_priors = {{SlotPrior::Kind::Flat}};
      spec.slot_names = {"theta"};
      spec.components = {
          {Family::Normal, {ParamRule::slot_ref(0), ParamRule::fixed(1.0)}},
          {Family::Normal, {ParamRule::slot_ref(0), ParamRule::fixed(kSqrt2)}},
      };
      break;
    case PairKind::PointNullMean:
      spec.slot_priors = {{SlotPrior::Kind::Normal, 0.0, 1.0}};
      spec.slot_names = {"mu"};
      spec.components = {
          {Family::Normal, {ParamRule::fixed(0.0), ParamRule::fixed(1.0)}},
          {Family::Normal, {ParamRule::slot_ref(0), ParamRule::fixed(1.0)}},
      };
      break;
    case PairKind::NormalVsLaplace:
      spec.slot_priors = {{SlotPrior::Kind::Flat}};
      spec.slot_names = {"mu"};
      spec.components = {
          {Family::Normal, {ParamRule::slot_ref(0), ParamRule::fixed(1.0)}},
          {Family::Laplace, {ParamRule::slot_ref(0), ParamRule::fixed(1.0 / kSqrt2)}},
      };
      break;
  }
  spec.validate();
  return spec;
}

double lambda_conditional_log_kernel(double lambda, const AllocationStats& stats,
                                     double n_xbar) {
  if (!(lambda > 0.0)) throw ParameterError("lambda must be > 0");
  const double n1 = static_cast<double>(stats.counts[0]);
  const double n2 = static_cast<double>(stats.counts[1]);
  const double s2 = stats.sums[1];
  return -n1 * lambda + (n_xbar - 1.0) * std::log(lambda) - (n2 + s2) * std::log1p(lambda);
}

bool lambda_kernel_integrable(double n_xbar) { return n_xbar > 0.0; }

MwgResult lambda_mwg_step(double current, const AllocationStats& stats, std::size_t n,
                          double n_xbar, RandomStream& rng) {
  if (!(current > 0.0)) throw ParameterError("lambda must be > 0");
  if (!lambda_kernel_integrable(n_xbar)) {
    throw DegenerateError(
        "lambda conditional is non-integrable: all observations are zero (n xbar = 0)");
  }
  const double rate = static_cast<double>(n);
  const double proposal = rng.gamma(n_xbar, rate);
  const double log_q_prop = log_gamma_pdf(proposal, n_xbar, rate);
  const double log_q_cur = log_gamma_pdf(current, n_xbar, rate);
  const double log_ratio = lambda_conditional_log_kernel(proposal, stats, n_xbar) -
                           lambda_conditional_log_kernel(current, stats, n_xbar) +
                           log_q_cur - log_q_prop;
  if (std::log(rng.uniform()) < log_ratio) return {proposal, true};
  return {current, false};
}

NormalVarConditional theta_conditional_normalvar_params(const AllocationStats& stats) {
  const double n1 = static_cast<double>(stats.counts[0]);
  const double n2 = static_cast<double>(stats.counts[1]);
  if (stats.counts[0] == 0 && stats.counts[1] == 0) {
    throw ContractError("theta conditional requires at least one allocated observation");
  }
  const double precision = n1 + 0.5 * n2;
  // n_i xbar_i = 0 when n_i = 0 holds automatically through the sums
  const double mean = (stats.sums[0] + 0.5 * stats.sums[1]) / precision;
  return {mean, 1.0 / precision};
}

double theta_conditional_normalvar(const AllocationStats& stats, RandomStream& rng) {
  const NormalVarConditional c = theta_conditional_normalvar_params(stats);
  return rng.normal(c.mean, std::sqrt(c.var));
}

GibbsConditionals make_gibbs_conditionals(PairKind kind) {
  GibbsConditionals cond;
  switch (kind) {
    case PairKind::PoissonVsGeometric:
      cond.slots.push_back([](double current, std::span<const double>, const Dataset& data,
                              const Allocation& alloc, RandomStream& rng) {
        const AllocationStats stats = allocation_stats(alloc, data, 2);
        return lambda_mwg_step(current, stats, data.size(), data_sum(data), rng).value;
      });
      break;
    case PairKind::NormalVar1VsVar2:
      cond.slots.push_back([](double, std::span<const double>, const Dataset& data,
                              const Allocation& alloc, RandomStream& rng) {
        return theta_conditional_normalvar(allocation_stats(alloc, data, 2), rng);
      });
      break;
    case PairKind::PointNullMean:
      // Only the N(mu,1) component (index 1) informs mu; prior N(0,1).
      cond.slots.push_back([](double, std::span<const double>, const Dataset& data,
                              const Allocation& alloc, RandomStream& rng) {
        const AllocationStats stats = allocation_stats(alloc, data, 2);
        const double m = static_cast<double>(stats.counts[1]);
        const double mean = stats.sums[1] / (m + 1.0);
        return rng.normal(mean, std::sqrt(1.0 / (m + 1.0)));
      });
      break;
    case PairKind::NormalVsLaplace:
      // Non-conjugate conditional; independence MwG with a whole-sample proposal.
      cond.slots.push_back([](double current, std::span<const double>, const Dataset& data,
                              const Allocation& alloc, RandomStream& rng) {
        const double n = static_cast<double>(data.size());
        const double center = mean_of(data.y);
        const double sd = std::sqrt(2.0 / n);
        auto target = [&](double mu) {
          double lp = 0.0;
          for (std::size_t i = 0; i < data.size(); ++i) {
            if (alloc.labels[i] == 0) {
              lp += -0.5 * (data.y[i] - mu) * (data.y[i] - mu);
            } else {
              lp += -kSqrt2 * std::fabs(data.y[i] - mu);
            }
          }
          return lp;
        };
        const double prop = rng.normal(center, sd);
        const double log_ratio = target(prop) - target(current) +
                                 log_normal_pdf(current, center, sd) -
                                 log_normal_pdf(prop, center, sd);
        return std::log(rng.uniform()) < log_ratio ? prop : current;
      });
      break;
  }
  return cond;
}

MhProposals make_mh_proposals(PairKind kind, const Dataset& data) {
  const double n = static_cast<double>(data.size());
  if (data.size() == 0) throw ConfigError("model-posterior proposals need data");
  MhProposals proposals(1);
  switch (kind) {
    case PairKind::PoissonVsGeometric: {
      const double s = data_sum(data);
      if (!(s > 0.0)) {
        throw DegenerateError("all-zero counts: lambda posterior is non-integrable");
      }
      // Poisson-side posterior under 1/lambda: Gamma(sum x, n).
      proposals[0].options.push_back(
          {[s, n](RandomStream& rng) { return rng.gamma(s, n); },
           [s, n](double lam) { return log_gamma_pdf(lam, s, n); }});
      // Geometric-side posterior: p ~ Beta(n, sum x) mapped through lambda = (1-p)/p.
      proposals[0].options.push_back(
          {[s, n](RandomStream& rng) {
             const double p = rng.beta(n, s);
             return (1.0 - p) / p;
           },
           [s, n](double lam) {
             if (!(lam > 0.0)) return kLogZero;
             const double p = 1.0 / (1.0 + lam);
             return log_beta_pdf(p, n, s) - 2.0 * std::log1p(lam);
           }});
      break;
    }
    case PairKind::NormalVar1VsVar2: {
      const double xbar = data_mean(data);
      proposals[0].options.push_back(normal_proposal(xbar, 1.0 / n));
      proposals[0].options.push_back(normal_proposal(xbar, 2.0 / n));
      break;
    }
    case PairKind::PointNullMean: {
      // Conjugate posterior of the free component under the N(0,1) prior.
      const double xbar = data_mean(data);
      proposals[0].options.push_back(normal_proposal(n * xbar / (n + 1.0), 1.0 / (n + 1.0)));
      break;
    }
    case PairKind::NormalVsLaplace: {
      proposals[0].options.push_back(normal_proposal(data_mean(data), 1.0 / n));
      // Laplace-model posterior approximated at the sample median (variance
      // slightly above the 1/(2n) asymptotic value, to keep the proposal wide)
      proposals[0].options.push_back(normal_proposal(data_median(data), 1.0 / n));
      break;
    }
  }
  return proposals;
}

std::vector<double> make_initial_globals(PairKind kind, const Dataset& data) {
  switch (kind) {
    case PairKind::PoissonVsGeometric:
      return {std::max(data_mean(data), 0.5)};
    case PairKind::NormalVar1VsVar2:
      return {data_mean(data)};
    case PairKind::PointNullMean: {
      const double n = static_cast<double>(data.size());
      return {n * data_mean(data) / (n + 1.0)};
    }
    case PairKind::NormalVsLaplace:
      return {data_mean(data)};
  }
  return {0.0};
}

Trace run_pair_mh(PairKind kind, const Dataset& data, double a0, const ChainConfig& config) {
  const MixtureSpec spec = build_pair(kind, a0);
  return run_mh(spec, data, config, make_mh_proposals(kind, data),
                make_initial_globals(kind, data));
}

Trace run_pair_gibbs(PairKind kind, const Dataset& data, double a0, const ChainConfig& config) {
  const MixtureSpec spec = build_pair(kind, a0);
  return run_gibbs(spec, data, config, make_gibbs_conditionals(kind),
                   make_initial_globals(kind, data));
}

}  // namespace mixtest
