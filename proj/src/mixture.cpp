#include "mixtest/mixture.hpp"

#include <cmath>
#include <numbers>

#include "mixtest/errors.hpp"
#include "mixtest/special.hpp"

namespace mixtest {

double ParamRule::eval(std::span<const double> globals) const {
  switch (kind) {
    case Kind::Slot:
      return globals[slot];
    case Kind::Fixed:
      return value;
    case Kind::Scaled:
      return value * globals[slot];
    case Kind::ScaledSqrt:
      return value * std::sqrt(globals[slot]);
    case Kind::GumbelLocation:
      return globals[slot] -
             kEulerGamma * std::sqrt(6.0 * globals[slot2]) / std::numbers::pi;
    case Kind::InverseOnePlus:
      return 1.0 / (1.0 + globals[slot]);
  }
  throw ContractError("unknown param rule kind");
}

Params ComponentBinding::bind(std::span<const double> globals) const {
  Params p;
  p.values.reserve(rules.size());
  for (const ParamRule& r : rules) p.values.push_back(r.eval(globals));
  return p;
}

WeightPrior WeightPrior::symmetric(std::size_t k, double a0) {
  if (!(a0 > 0.0)) throw ParameterError("weight prior concentration must be > 0");
  return WeightPrior{std::vector<double>(k, a0)};
}

void WeightPrior::validate() const {
  if (concentration.empty()) throw ParameterError("weight prior must have K >= 1 entries");
  for (double c : concentration) {
    if (!(c > 0.0)) throw ParameterError("weight prior concentration must be > 0");
  }
}

double SlotPrior::log_density(double g) const {
  switch (kind) {
    case Kind::Flat:
      return 0.0;
    case Kind::FlatPositive:
      return g > 0.0 ? 0.0 : kLogZero;
    case Kind::Reciprocal:
      return g > 0.0 ? -std::log(g) : kLogZero;
    case Kind::Normal:
      return log_normal_pdf(g, mean, std::sqrt(var));
  }
  throw ContractError("unknown slot prior kind");
}

bool SlotPrior::in_support(double g) const {
  switch (kind) {
    case Kind::Flat:
    case Kind::Normal:
      return std::isfinite(g);
    case Kind::FlatPositive:
    case Kind::Reciprocal:
      return g > 0.0;
  }
  return false;
}

void MixtureSpec::validate() const {
  if (components.empty()) throw ParameterError("mixture needs at least one component");
  weight_prior.validate();
  if (weight_prior.concentration.size() != components.size()) {
    throw ParameterError("weight prior length must equal the number of components");
  }
  if (!slot_names.empty() && slot_names.size() != slot_priors.size()) {
    throw ParameterError("slot_names length must match slot_priors");
  }
  const int s = static_cast<int>(num_slots());
  for (const ComponentBinding& c : components) {
    for (const ParamRule& r : c.rules) {
      const bool uses_slot = r.kind != ParamRule::Kind::Fixed;
      if (uses_slot && (r.slot < 0 || r.slot >= s)) {
        throw ParameterError("param rule references an unknown global slot");
      }
      if (r.kind == ParamRule::Kind::GumbelLocation && (r.slot2 < 0 || r.slot2 >= s)) {
        throw ParameterError("param rule references an unknown global slot");
      }
    }
  }
}

void Dataset::validate() const {
  if (has_censoring() && censored.size() != y.size()) {
    throw ParameterError("censoring indicator length must match y");
  }
  if (has_design() && static_cast<std::size_t>(design.rows()) != y.size()) {
    throw ParameterError("design matrix row count must match y");
  }
  if (has_design()) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(design);
    if (lu.rank() < design.cols()) {
      throw ParameterError("design matrix must have full column rank");
    }
  }
}

void check_simplex(std::span<const double> weights, std::size_t k) {
  if (weights.size() != k) throw ContractError("weight vector length must equal K");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ContractError("weights must be nonnegative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw ContractError("weights are off the simplex by more than 1e-12");
  }
}

double component_log_density(const ComponentBinding& component,
                             std::span<const double> globals, double y, bool censored) {
  return censored_log_density(component.family, component.bind(globals), y, censored);
}

double mixture_log_likelihood(const MixtureSpec& spec, std::span<const double> globals,
                              std::span<const double> weights, const Dataset& data) {
  const std::size_t k = spec.num_components();
  check_simplex(weights, k);

  std::vector<double> log_w(k);
  for (std::size_t j = 0; j < k; ++j) {
    log_w[j] = weights[j] > 0.0 ? std::log(weights[j]) : kLogZero;
  }
  std::vector<Params> bound(k);
  for (std::size_t j = 0; j < k; ++j) bound[j] = spec.components[j].bind(globals);

  double total = 0.0;
  std::vector<double> terms(k);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool cens = data.is_censored(i);
    for (std::size_t j = 0; j < k; ++j) {
      terms[j] = log_w[j] == kLogZero
                     ? kLogZero
                     : log_w[j] + censored_log_density(spec.components[j].family, bound[j],
                                                       data.y[i], cens);
    }
    total += log_sum_exp(terms);
  }
  return total;
}

double completed_log_likelihood(const MixtureSpec& spec, std::span<const double> globals,
                                std::span<const double> weights, const Dataset& data,
                                const Allocation& alloc) {
  const std::size_t k = spec.num_components();
  check_simplex(weights, k);
  if (alloc.size() != data.size()) throw ContractError("allocation length must match data");

  std::vector<Params> bound(k);
  for (std::size_t j = 0; j < k; ++j) bound[j] = spec.components[j].bind(globals);

  const AllocationStats stats = allocation_stats(alloc, data, k);
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (stats.counts[j] == 0) continue;
    if (!(weights[j] > 0.0)) return kLogZero;
    total += static_cast<double>(stats.counts[j]) * std::log(weights[j]);
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int j = alloc.labels[i];
    total += censored_log_density(spec.components[j].family, bound[j], data.y[i],
                                  data.is_censored(i));
  }
  return total;
}

AllocationStats allocation_stats(const Allocation& alloc, const Dataset& data, std::size_t k) {
  if (alloc.size() != data.size()) throw ContractError("allocation length must match data");
  AllocationStats stats;
  stats.counts.assign(k, 0);
  stats.sums.assign(k, 0.0);
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    const int j = alloc.labels[i];
    if (j < 0 || static_cast<std::size_t>(j) >= k) {
      throw ContractError("allocation label out of range");
    }
    stats.counts[j] += 1;
    stats.sums[j] += data.y[i];
  }
  return stats;
}

Allocation sample_allocations(const MixtureSpec& spec, std::span<const double> globals,
                              std::span<const double> weights, const Dataset& data,
                              RandomStream& rng) {
  const std::size_t k = spec.num_components();
  check_simplex(weights, k);

  std::vector<double> log_w(k);
  for (std::size_t j = 0; j < k; ++j) {
    log_w[j] = weights[j] > 0.0 ? std::log(weights[j]) : kLogZero;
  }
  std::vector<Params> bound(k);
  for (std::size_t j = 0; j < k; ++j) bound[j] = spec.components[j].bind(globals);

  Allocation alloc;
  alloc.labels.resize(data.size());
  std::vector<double> logp(k), prob(k);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool cens = data.is_censored(i);
    double best = kLogZero;
    for (std::size_t j = 0; j < k; ++j) {
      logp[j] = log_w[j] == kLogZero
                    ? kLogZero
                    : log_w[j] + censored_log_density(spec.components[j].family, bound[j],
                                                      data.y[i], cens);
      best = std::max(best, logp[j]);
    }
    if (best == kLogZero) {
      throw DegenerateError("observation " + std::to_string(i) +
                            " has zero density under every component");
    }
    for (std::size_t j = 0; j < k; ++j) {
      prob[j] = logp[j] == kLogZero ? 0.0 : std::exp(logp[j] - best);
    }
    alloc.labels[i] = static_cast<int>(rng.categorical(prob));
  }
  return alloc;
}

std::vector<double> sample_weights_conditional(std::span<const long> counts,
                                               const WeightPrior& prior, RandomStream& rng) {
  prior.validate();
  if (counts.size() != prior.concentration.size()) {
    throw ContractError("counts length must equal the weight prior length");
  }
  std::vector<double> conc(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] < 0) throw ContractError("allocation counts must be nonnegative");
    conc[j] = prior.concentration[j] + static_cast<double>(counts[j]);
  }
  return rng.dirichlet(conc);
}

}  // namespace mixtest
