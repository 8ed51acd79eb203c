#ifndef MIXTEST_SAMPLERS_HPP
#define MIXTEST_SAMPLERS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "mixtest/mixture.hpp"
#include "mixtest/rng.hpp"

namespace mixtest {

struct AlphaProposal {
  enum class Kind {
    FromPrior,        // independent draw from the Dirichlet/Beta weight prior
    LogitRandomWalk,  // Gaussian step on logit(alpha) with Jacobian correction (K=2)
  };
  Kind kind = Kind::FromPrior;
  double step = 0.5;
};

enum class ThetaProposal {
  ModelPosteriorIndependence,  // full-data per-model posteriors as independence proposals
  ComponentConditional,        // allocation-conditional draws (the Gibbs route)
};

struct ChainConfig {
  long iterations = 10000;
  long burn_in = 1000;
  std::uint64_t seed = 0;
  AlphaProposal alpha_proposal;
  ThetaProposal theta_proposal = ThetaProposal::ModelPosteriorIndependence;
  bool record_allocation_counts = false;

  void validate() const;
};

// Recorded chain. Row-major draws x K weights and draws x S globals.
struct Trace {
  std::size_t num_components = 0;
  std::size_t num_slots = 0;
  std::vector<double> weights;
  std::vector<double> globals;
  std::vector<std::uint8_t> accepted;
  std::vector<long> allocation_counts;  // draws x K when recorded

  std::size_t num_draws() const { return num_components ? weights.size() / num_components : 0; }
  double weight(std::size_t draw, std::size_t j) const {
    return weights[draw * num_components + j];
  }
  double global(std::size_t draw, std::size_t s) const { return globals[draw * num_slots + s]; }
  std::vector<double> weight_column(std::size_t j) const;
  std::vector<double> global_column(std::size_t s) const;

  // CSV columns: draw, w1..wK, named globals, accepted.
  void to_csv(std::ostream& out, std::span<const std::string> slot_names = {}) const;
};

struct QuantitySummary {
  double mean = 0.0;
  double median = 0.0;
  double q025 = 0.0, q25 = 0.0, q75 = 0.0, q975 = 0.0;
};

QuantitySummary summarize_quantity(std::span<const double> draws);

struct PosteriorSummary {
  std::vector<QuantitySummary> weights;
  std::vector<QuantitySummary> globals;
  long crossing_count = 0;  // sign changes of (first weight - 1/2) along the chain
  double acceptance_rate = 1.0;
};

// Throws ContractError on an empty trace.
PosteriorSummary summarize(const Trace& trace);

long count_crossings(std::span<const double> chain, double level = 0.5);

// Full-conditional sampler for one global slot given the allocation.
// Returns the new slot value.
using SlotConditional = std::function<double(
    double current, std::span<const double> globals, const Dataset& data,
    const Allocation& alloc, RandomStream& rng)>;

struct GibbsConditionals {
  std::vector<SlotConditional> slots;  // one per global slot; empty entry = missing
};

// Data-based independence proposal for one slot, built from one component's
// full-data posterior; log_pdf must be evaluable for the Hastings ratio.
struct ComponentProposal {
  std::function<double(RandomStream&)> draw;
  std::function<double(double)> log_pdf;
};

struct SlotProposals {
  std::vector<ComponentProposal> options;  // the proposing component is picked uniformly
};

using MhProposals = std::vector<SlotProposals>;  // one entry per global slot

// Gibbs sweep: allocations -> weights | counts -> per-slot conditionals.
// Throws ConfigError before iteration 1 when a slot lacks a conditional.
Trace run_gibbs(const MixtureSpec& spec, const Dataset& data, const ChainConfig& config,
                const GibbsConditionals& conditionals,
                std::span<const double> initial_globals);

// Marginal-likelihood-free Metropolis-Hastings on (weights, globals) targeting
// prior x mixture likelihood, with block updates: a weight block per the
// configured alpha proposal, then one block per slot with a uniformly chosen
// component posterior as independence proposal.
Trace run_mh(const MixtureSpec& spec, const Dataset& data, const ChainConfig& config,
             const MhProposals& proposals, std::span<const double> initial_globals);

using ProposalFactory = std::function<MhProposals(const Dataset&)>;

// Parametric bootstrap calibration: simulate `replicas` datasets of size n
// from the named component at fitted_globals, run the MH sampler on each, and
// return the posterior summaries (the reference distribution of the weight
// estimator under that component's model).
std::vector<PosteriorSummary> calibrate_bootstrap(
    const MixtureSpec& spec, std::span<const double> fitted_globals, std::size_t component,
    std::size_t replicas, std::size_t n, const ChainConfig& config,
    const ProposalFactory& proposal_factory);

}  // namespace mixtest

#endif
