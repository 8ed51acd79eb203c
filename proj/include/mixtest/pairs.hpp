#ifndef MIXTEST_PAIRS_HPP
#define MIXTEST_PAIRS_HPP

#include <string>

#include "mixtest/mixture.hpp"
#include "mixtest/samplers.hpp"

namespace mixtest {

// The ready-made two-model i.i.d. test pairs.
enum class PairKind {
  PoissonVsGeometric,  // P(lambda) vs Geo(1/(1+lambda)), prior 1/lambda
  NormalVar1VsVar2,    // N(theta,1) vs N(theta,2), flat prior on theta
  PointNullMean,       // N(0,1) vs N(mu,1), mu ~ N(0,1)
  NormalVsLaplace,     // N(mu,1) vs Laplace(mu, sqrt2), flat prior on mu
};

const char* pair_name(PairKind kind);
PairKind pair_from_name(const std::string& name);

// Assembles the encompassing mixture for the pair with a Beta(a0,a0) weight prior.
MixtureSpec build_pair(PairKind kind, double a0);

// --- Poisson/Geometric machinery ------------------------------------------

// Log of the full conditional kernel of lambda given the allocation:
//   -n1 lambda + (n xbar - 1) log lambda - (n2 + s2) log(1 + lambda)
// under the shared prior pi(lambda) = 1/lambda. stats holds per-component
// counts and sums with the Poisson component first.
double lambda_conditional_log_kernel(double lambda, const AllocationStats& stats,
                                     double n_xbar);

// True when the conditional kernel is integrable near zero. The kernel behaves
// like lambda^{n xbar - 1} at the origin, so all-zero data (n xbar = 0) is
// non-integrable under the 1/lambda prior.
bool lambda_kernel_integrable(double n_xbar);

struct MwgResult {
  double value;
  bool accepted;
};

// Independence Metropolis-within-Gibbs step: proposes from the full-data
// Poisson posterior Gamma(n xbar, n) and accepts against the conditional kernel.
MwgResult lambda_mwg_step(double current, const AllocationStats& stats, std::size_t n,
                          double n_xbar, RandomStream& rng);

// --- Normal-variance machinery --------------------------------------------

struct NormalVarConditional {
  double mean;
  double var;
};

// theta | x, zeta ~ N((n1 xbar1 + .5 n2 xbar2)/(n1 + .5 n2), 1/(n1 + .5 n2)),
// with the convention n_i xbar_i = 0 when n_i = 0. Throws ContractError when
// both components are empty.
NormalVarConditional theta_conditional_normalvar_params(const AllocationStats& stats);
double theta_conditional_normalvar(const AllocationStats& stats, RandomStream& rng);

// --- sampler wiring ---------------------------------------------------------

// Full-conditional samplers for the pair's global slot, for run_gibbs.
GibbsConditionals make_gibbs_conditionals(PairKind kind);

// Full-data model-posterior independence proposals for run_mh.
MhProposals make_mh_proposals(PairKind kind, const Dataset& data);

// A reasonable chain starting point derived from the data.
std::vector<double> make_initial_globals(PairKind kind, const Dataset& data);

// Convenience wrappers binding the pieces together.
Trace run_pair_mh(PairKind kind, const Dataset& data, double a0, const ChainConfig& config);
Trace run_pair_gibbs(PairKind kind, const Dataset& data, double a0, const ChainConfig& config);

}  // namespace mixtest

#endif
