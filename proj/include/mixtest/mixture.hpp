#ifndef MIXTEST_MIXTURE_HPP
#define MIXTEST_MIXTURE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mixtest/distributions.hpp"
#include "mixtest/rng.hpp"

namespace mixtest {

// How one component parameter is derived from the mixture's global slots.
// A deliberately closed algebra: it covers every binding the model pairs,
// the GLM rescaling and the moment-matched survival mixture need.
struct ParamRule {
  enum class Kind {
    Slot,            // globals[slot]
    Fixed,           // value
    Scaled,          // value * globals[slot]
    ScaledSqrt,      // value * sqrt(globals[slot])
    GumbelLocation,  // globals[slot] - gamma * sqrt(6 * globals[slot2]) / pi
    InverseOnePlus,  // 1 / (1 + globals[slot])
  };

  Kind kind = Kind::Fixed;
  int slot = -1;
  int slot2 = -1;
  double value = 0.0;

  double eval(std::span<const double> globals) const;

  static ParamRule slot_ref(int s) { return {Kind::Slot, s, -1, 0.0}; }
  static ParamRule fixed(double v) { return {Kind::Fixed, -1, -1, v}; }
  static ParamRule scaled(int s, double factor) { return {Kind::Scaled, s, -1, factor}; }
  static ParamRule scaled_sqrt(int s, double factor) { return {Kind::ScaledSqrt, s, -1, factor}; }
  static ParamRule gumbel_location(int loc_slot, int var_slot) {
    return {Kind::GumbelLocation, loc_slot, var_slot, 0.0};
  }
  static ParamRule inverse_one_plus(int s) { return {Kind::InverseOnePlus, s, -1, 0.0}; }
};

struct ComponentBinding {
  Family family;
  std::vector<ParamRule> rules;

  Params bind(std::span<const double> globals) const;
};

// Dirichlet concentration over the K component weights; the Beta(a0,a0) prior
// of the two-model case is the K=2 entry (a0, a0).
struct WeightPrior {
  std::vector<double> concentration;

  static WeightPrior symmetric(std::size_t k, double a0);
  void validate() const;
};

// Prior on one global slot. Improper kinds evaluate up to a constant.
struct SlotPrior {
  enum class Kind {
    Flat,          // pi(g) = 1 on R
    FlatPositive,  // pi(g) = 1 on (0, inf)
    Reciprocal,    // pi(g) = 1/g on (0, inf)  (Jeffreys 1/lambda, 1/sigma^2)
    Normal,        // proper N(mean, var)
  };
  Kind kind = Kind::Flat;
  double mean = 0.0;
  double var = 1.0;

  double log_density(double g) const;
  bool in_support(double g) const;
};

struct MixtureSpec {
  std::vector<ComponentBinding> components;
  WeightPrior weight_prior;
  std::vector<SlotPrior> slot_priors;
  std::vector<std::string> slot_names;

  std::size_t num_components() const { return components.size(); }
  std::size_t num_slots() const { return slot_priors.size(); }
  void validate() const;
};

struct Dataset {
  std::vector<double> y;
  std::vector<std::uint8_t> censored;  // empty = no censoring recorded
  Eigen::MatrixXd design;              // 0x0 = no design matrix

  std::size_t size() const { return y.size(); }
  bool has_censoring() const { return !censored.empty(); }
  bool has_design() const { return design.size() > 0; }
  bool is_censored(std::size_t i) const { return has_censoring() && censored[i] != 0; }
  void validate() const;
};

// Latent component labels, one per observation, 0-based.
struct Allocation {
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
};

struct AllocationStats {
  std::vector<long> counts;  // observations per component
  std::vector<double> sums;  // observation sums per component
};

// Component log density at one observation with all bindings applied.
double component_log_density(const ComponentBinding& component,
                             std::span<const double> globals, double y, bool censored);

// sum_i log sum_j w_j f_j(y_i | bound params), log-sum-exp per observation.
// Throws ContractError when the weights are off the simplex by more than 1e-12.
double mixture_log_likelihood(const MixtureSpec& spec, std::span<const double> globals,
                              std::span<const double> weights, const Dataset& data);

// sum_j n_j log w_j + sum_i log f_{zeta_i}(y_i).
double completed_log_likelihood(const MixtureSpec& spec, std::span<const double> globals,
                                std::span<const double> weights, const Dataset& data,
                                const Allocation& alloc);

AllocationStats allocation_stats(const Allocation& alloc, const Dataset& data, std::size_t k);

// Draw each label independently with P(zeta_i = j) proportional to w_j f_j(y_i),
// normalized per observation in log space. Throws DegenerateError naming the
// observation when every component has zero density there.
Allocation sample_allocations(const MixtureSpec& spec, std::span<const double> globals,
                              std::span<const double> weights, const Dataset& data,
                              RandomStream& rng);

// One Dirichlet(counts + concentration) draw (Beta when K = 2).
std::vector<double> sample_weights_conditional(std::span<const long> counts,
                                               const WeightPrior& prior, RandomStream& rng);

void check_simplex(std::span<const double> weights, std::size_t k);

}  // namespace mixtest

#endif
