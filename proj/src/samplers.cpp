#include "mixtest/samplers.hpp"

#include <cmath>
#include <ostream>

#include "mixtest/errors.hpp"
#include "mixtest/special.hpp"

namespace mixtest {

void ChainConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (burn_in < 0 || burn_in >= iterations) {
    throw ConfigError("burn_in must satisfy 0 <= burn_in < iterations");
  }
  if (alpha_proposal.kind == AlphaProposal::Kind::LogitRandomWalk &&
      !(alpha_proposal.step > 0.0)) {
    throw ConfigError("logit random walk step must be > 0");
  }
}

std::vector<double> Trace::weight_column(std::size_t j) const {
  std::vector<double> col(num_draws());
  for (std::size_t t = 0; t < col.size(); ++t) col[t] = weight(t, j);
  return col;
}

std::vector<double> Trace::global_column(std::size_t s) const {
  std::vector<double> col(num_draws());
  for (std::size_t t = 0; t < col.size(); ++t) col[t] = global(t, s);
  return col;
}

void Trace::to_csv(std::ostream& out, std::span<const std::string> slot_names) const {
  out << "draw";
  for (std::size_t j = 0; j < num_components; ++j) out << ",w" << (j + 1);
  for (std::size_t s = 0; s < num_slots; ++s) {
    if (s < slot_names.size()) {
      out << "," << slot_names[s];
    } else {
      out << ",g" << (s + 1);
    }
  }
  out << ",accepted\n";
  const std::size_t draws = num_draws();
  char buf[32];
  for (std::size_t t = 0; t < draws; ++t) {
    out << t;
    for (std::size_t j = 0; j < num_components; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", weight(t, j));
      out << ',' << buf;
    }
    for (std::size_t s = 0; s < num_slots; ++s) {
      std::snprintf(buf, sizeof buf, "%.17g", global(t, s));
      out << ',' << buf;
    }
    out << ',' << (accepted.empty() ? 1 : static_cast<int>(accepted[t])) << '\n';
  }
}

QuantitySummary summarize_quantity(std::span<const double> draws) {
  if (draws.empty()) throw ContractError("summary of an empty chain");
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  QuantitySummary s;
  s.mean = mean_of(draws);
  s.median = quantile_type7_sorted(sorted, 0.5);
  s.q025 = quantile_type7_sorted(sorted, 0.025);
  s.q25 = quantile_type7_sorted(sorted, 0.25);
  s.q75 = quantile_type7_sorted(sorted, 0.75);
  s.q975 = quantile_type7_sorted(sorted, 0.975);
  return s;
}

long count_crossings(std::span<const double> chain, double level) {
  long crossings = 0;
  for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
    if ((chain[t] - level) * (chain[t + 1] - level) < 0.0) ++crossings;
  }
  return crossings;
}

PosteriorSummary summarize(const Trace& trace) {
  if (trace.num_draws() == 0) throw ContractError("summarize: empty trace");
  PosteriorSummary s;
  for (std::size_t j = 0; j < trace.num_components; ++j) {
    s.weights.push_back(summarize_quantity(trace.weight_column(j)));
  }
  for (std::size_t g = 0; g < trace.num_slots; ++g) {
    s.globals.push_back(summarize_quantity(trace.global_column(g)));
  }
  const std::vector<double> alpha = trace.weight_column(0);
  s.crossing_count = count_crossings(alpha);
  if (!trace.accepted.empty()) {
    double acc = 0.0;
    for (std::uint8_t a : trace.accepted) acc += a;
    s.acceptance_rate = acc / static_cast<double>(trace.accepted.size());
  }
  return s;
}

namespace {

void reserve_trace(Trace& trace, const MixtureSpec& spec, const ChainConfig& config) {
  trace.num_components = spec.num_components();
  trace.num_slots = spec.num_slots();
  const std::size_t draws = static_cast<std::size_t>(config.iterations - config.burn_in);
  trace.weights.reserve(draws * trace.num_components);
  trace.globals.reserve(draws * trace.num_slots);
  trace.accepted.reserve(draws);
}

void record_state(Trace& trace, std::span<const double> weights,
                  std::span<const double> globals, bool accepted,
                  const AllocationStats* stats) {
  trace.weights.insert(trace.weights.end(), weights.begin(), weights.end());
  trace.globals.insert(trace.globals.end(), globals.begin(), globals.end());
  trace.accepted.push_back(accepted ? 1 : 0);
  if (stats != nullptr) {
    trace.allocation_counts.insert(trace.allocation_counts.end(), stats->counts.begin(),
                                   stats->counts.end());
  }
}

double logit(double p) { return std::log(p) - std::log1p(-p); }
double expit(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double global_prior_log_density(const MixtureSpec& spec, std::span<const double> globals) {
  double lp = 0.0;
  for (std::size_t s = 0; s < spec.num_slots(); ++s) {
    lp += spec.slot_priors[s].log_density(globals[s]);
  }
  return lp;
}

}  // namespace

Trace run_gibbs(const MixtureSpec& spec, const Dataset& data, const ChainConfig& config,
                const GibbsConditionals& conditionals,
                std::span<const double> initial_globals) {
  spec.validate();
  data.validate();
  config.validate();
  if (initial_globals.size() != spec.num_slots()) {
    throw ConfigError("initial globals length must equal the number of slots");
  }
  if (data.size() > 0) {
    if (conditionals.slots.size() != spec.num_slots()) {
      throw ConfigError("a full-conditional sampler must be registered for every slot");
    }
    for (std::size_t s = 0; s < conditionals.slots.size(); ++s) {
      if (!conditionals.slots[s]) {
        throw ConfigError("missing full-conditional sampler for slot " + std::to_string(s));
      }
    }
  }

  RandomStream rng(config.seed);
  std::vector<double> globals(initial_globals.begin(), initial_globals.end());
  std::vector<double> weights = rng.dirichlet(spec.weight_prior.concentration);

  Trace trace;
  reserve_trace(trace, spec, config);
  Allocation alloc;
  for (long t = 0; t < config.iterations; ++t) {
    AllocationStats stats;
    if (data.size() > 0) {
      alloc = sample_allocations(spec, globals, weights, data, rng);
      stats = allocation_stats(alloc, data, spec.num_components());
    } else {
      stats.counts.assign(spec.num_components(), 0);
      stats.sums.assign(spec.num_components(), 0.0);
    }
    weights = sample_weights_conditional(stats.counts, spec.weight_prior, rng);
    if (data.size() > 0) {
      for (std::size_t s = 0; s < spec.num_slots(); ++s) {
        globals[s] = conditionals.slots[s](globals[s], globals, data, alloc, rng);
      }
    }
    if (t >= config.burn_in) {
      record_state(trace, weights, globals, true,
                   config.record_allocation_counts ? &stats : nullptr);
    }
  }
  return trace;
}

Trace run_mh(const MixtureSpec& spec, const Dataset& data, const ChainConfig& config,
             const MhProposals& proposals, std::span<const double> initial_globals) {
  spec.validate();
  data.validate();
  config.validate();
  if (config.theta_proposal != ThetaProposal::ModelPosteriorIndependence) {
    throw ConfigError("run_mh implements the model-posterior independence proposal only");
  }
  const std::size_t k = spec.num_components();
  const std::size_t n_slots = spec.num_slots();
  if (initial_globals.size() != n_slots) {
    throw ConfigError("initial globals length must equal the number of slots");
  }
  if (proposals.size() != n_slots) {
    throw ConfigError("an independence proposal set is required for every slot");
  }
  for (const SlotProposals& sp : proposals) {
    if (sp.options.empty()) throw ConfigError("a slot has no registered proposals");
    for (const ComponentProposal& p : sp.options) {
      if (!p.draw || !p.log_pdf) throw ConfigError("incomplete proposal registration");
    }
  }
  if (config.alpha_proposal.kind == AlphaProposal::Kind::LogitRandomWalk && k != 2) {
    throw ConfigError("the logit random walk weight proposal requires K = 2");
  }

  RandomStream rng(config.seed);
  std::vector<double> weights = rng.dirichlet(spec.weight_prior.concentration);
  std::vector<double> globals(initial_globals.begin(), initial_globals.end());
  for (std::size_t s = 0; s < n_slots; ++s) {
    if (!spec.slot_priors[s].in_support(globals[s])) {
      throw ConfigError("initial global outside the prior support");
    }
  }

  double cur_lik = mixture_log_likelihood(spec, globals, weights, data);
  double cur_gprior = global_prior_log_density(spec, globals);

  Trace trace;
  reserve_trace(trace, spec, config);
  std::vector<double> prop_weights(k);
  for (long t = 0; t < config.iterations; ++t) {
    // weight block
    bool accepted = false;
    if (config.alpha_proposal.kind == AlphaProposal::Kind::FromPrior) {
      prop_weights = rng.dirichlet(spec.weight_prior.concentration);
      const double prop_lik = mixture_log_likelihood(spec, globals, prop_weights, data);
      // proposal density equals the prior, so both cancel in the ratio
      if (std::log(rng.uniform()) < prop_lik - cur_lik) {
        weights = prop_weights;
        cur_lik = prop_lik;
        accepted = true;
      }
    } else {
      const double alpha = weights[0];
      const double prop_alpha = expit(logit(alpha) + config.alpha_proposal.step * rng.normal());
      prop_weights[0] = prop_alpha;
      prop_weights[1] = 1.0 - prop_alpha;
      const double prop_lik = mixture_log_likelihood(spec, globals, prop_weights, data);
      const auto& conc = spec.weight_prior.concentration;
      double log_ratio = prop_lik - cur_lik;
      log_ratio += log_beta_pdf(prop_alpha, conc[0], conc[1]) -
                   log_beta_pdf(alpha, conc[0], conc[1]);
      // Jacobian of the logit map
      log_ratio += std::log(prop_alpha) + std::log1p(-prop_alpha) - std::log(alpha) -
                   std::log1p(-alpha);
      if (std::log(rng.uniform()) < log_ratio) {
        weights = prop_weights;
        cur_lik = prop_lik;
        accepted = true;
      }
    }

    // one block per global slot, proposing component chosen uniformly
    for (std::size_t s = 0; s < n_slots; ++s) {
      const SlotProposals& sp = proposals[s];
      const std::size_t pick =
          sp.options.size() == 1
              ? 0
              : static_cast<std::size_t>(rng.uniform() * static_cast<double>(sp.options.size()));
      const ComponentProposal& q = sp.options[std::min(pick, sp.options.size() - 1)];
      const double cur = globals[s];
      const double q_cur = q.log_pdf(cur);
      if (q_cur == kLogZero) {
        throw NumericError("independence proposal has zero density at the current point");
      }
      const double prop = q.draw(rng);
      if (!spec.slot_priors[s].in_support(prop)) continue;
      const double q_prop = q.log_pdf(prop);
      std::vector<double> prop_globals(globals.begin(), globals.end());
      prop_globals[s] = prop;
      const double prop_lik = mixture_log_likelihood(spec, prop_globals, weights, data);
      const double prop_gprior = global_prior_log_density(spec, prop_globals);
      const double log_ratio = (prop_gprior + prop_lik) - (cur_gprior + cur_lik) + q_cur - q_prop;
      if (std::log(rng.uniform()) < log_ratio) {
        globals[s] = prop;
        cur_lik = prop_lik;
        cur_gprior = prop_gprior;
      }
    }

    if (t >= config.burn_in) {
      record_state(trace, weights, globals, accepted, nullptr);
    }
  }
  return trace;
}

std::vector<PosteriorSummary> calibrate_bootstrap(
    const MixtureSpec& spec, std::span<const double> fitted_globals, std::size_t component,
    std::size_t replicas, std::size_t n, const ChainConfig& config,
    const ProposalFactory& proposal_factory) {
  spec.validate();
  if (component >= spec.num_components()) {
    throw ContractError("calibrate_bootstrap: component index out of range");
  }
  std::vector<PosteriorSummary> out;
  out.reserve(replicas);
  const ComponentBinding& comp = spec.components[component];
  const Params params = comp.bind(fitted_globals);
  for (std::size_t r = 0; r < replicas; ++r) {
    RandomStream sim_rng(RandomStream::mix({config.seed, 0xb007ULL, r}));
    Dataset data;
    data.y = sample(comp.family, params, n, sim_rng);
    ChainConfig chain = config;
    chain.seed = RandomStream::mix({config.seed, 0xc41ULL, r});
    const Trace trace = run_mh(spec, data, chain, proposal_factory(data), fitted_globals);
    out.push_back(summarize(trace));
  }
  return out;
}

}  // namespace mixtest
