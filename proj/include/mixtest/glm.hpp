#ifndef MIXTEST_GLM_HPP
#define MIXTEST_GLM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mixtest/mixture.hpp"
#include "mixtest/samplers.hpp"

namespace mixtest {

enum class Link { Logit, Probit };

struct GlmFit {
  Eigen::VectorXd coefficients;
  bool converged = false;
  int iterations = 0;
  // Fisher information X^T W X at the optimum; inverse is the asymptotic
  // covariance used to build independence proposals.
  Eigen::MatrixXd information;
};

// Bernoulli-response maximum likelihood under the given link, by iteratively
// reweighted least squares. Convergence: score max-norm < 1e-8 within 100
// iterations; separation/divergence is flagged through converged=false with
// the last iterate still returned.
GlmFit fit_glm_mle(const Dataset& data, Link link);

// Elementwise ratios of logit to probit MLEs, the rescaling that makes the
// probit component share the logit parameter vector: q_i = Phi(x_i (theta/k)).
Eigen::VectorXd rescale_ratio(const GlmFit& fit_logit, const GlmFit& fit_probit);

// Log posterior of the logit/probit encompassing mixture with allocations
// integrated out: Beta(a0,a0) on alpha, g-prior N(0, n (X^T X)^{-1}) on the
// shared theta, and per-observation two-term mixture likelihood.
double logit_probit_mixture_log_posterior(const Eigen::VectorXd& theta, double alpha,
                                          const Dataset& data, const Eigen::VectorXd& k,
                                          double a0);

struct LogitProbitRun {
  Trace trace;  // weights (alpha, 1-alpha); globals = shared theta coordinates
  GlmFit fit_logit;
  GlmFit fit_probit;
  Eigen::VectorXd rescale;
};

// Marginal Metropolis-Hastings over (theta, alpha); theta proposals are the
// two model-posterior normal approximations (MLE, inverse information), the
// probit one mapped onto the shared scale.
LogitProbitRun run_logit_probit_mh(const Dataset& data, double a0, const ChainConfig& config);

// --- variable-selection mixture over all covariate subsets -----------------

// Model j in 1..2^(k+1)-1 selects the design columns flagged by the binary
// digits of j, least significant bit = intercept column.
struct ModelIndex {
  int j = 0;
  std::vector<std::uint8_t> mask;

  static ModelIndex from_index(int j, int num_columns);
  int num_coefficients() const;
};

enum class RegressionCase {
  SharedBeta,    // all components parameterised by one full-model beta
  SeparateBeta,  // independent beta per model
};

struct RegressionMixture {
  // design with non-intercept columns centered: covariate subsets are then
  // compared against a meaningful intercept instead of high-mean covariates
  // acting as intercept surrogates
  Eigen::MatrixXd X;
  double a0 = 0.5;
  double c = 0.0;  // g-prior scale (build defaults it to n)
  Eigen::VectorXd prior_mean;
  RegressionCase parameterisation = RegressionCase::SharedBeta;
  std::vector<ModelIndex> models;

  std::size_t num_components() const { return models.size(); }
  std::size_t num_columns() const { return static_cast<std::size_t>(X.cols()); }
};

// g = 0 picks the unit-information default c = n. Requires full-rank design
// and k+1 <= 12 columns (the component count is 2^(k+1)-1).
RegressionMixture build_regression_mixture(const Dataset& data, double a0, RegressionCase kase,
                                           double g = 0.0,
                                           const Eigen::VectorXd& prior_mean = Eigen::VectorXd());

struct RegressionState {
  std::vector<double> weights;
  Eigen::VectorXd beta;                // SharedBeta
  std::vector<Eigen::VectorXd> betas;  // SeparateBeta, one per model
  double sigma2 = 1.0;
  Allocation alloc;
};

RegressionState init_regression_state(const RegressionMixture& mix, const Dataset& data,
                                      RandomStream& rng);

// One Gibbs sweep: weights | zeta -> beta | y,zeta,sigma -> sigma^2 | y,beta -> zeta.
void regression_gibbs_step_case1(RegressionState& state, const RegressionMixture& mix,
                                 const Dataset& data, RandomStream& rng);
void regression_gibbs_step_case2(RegressionState& state, const RegressionMixture& mix,
                                 const Dataset& data, RandomStream& rng);

// Runs the case-appropriate sweep; trace globals are (beta..., sigma2) for
// Case 1 and (sigma2) for Case 2.
Trace run_regression_gibbs(const RegressionMixture& mix, const Dataset& data,
                           const ChainConfig& config);

// Centers every non-intercept column (used by both the mixture build and the
// classical baseline so they rank the same candidate models).
Eigen::MatrixXd centered_design(const Eigen::MatrixXd& X);

// Classical baseline: closed-form g-prior marginal likelihood per candidate
// model, normalized under equal prior model weights, on the centered design.
std::vector<double> gprior_model_posterior(const Dataset& data,
                                           const std::vector<ModelIndex>& models, double c,
                                           const Eigen::VectorXd& prior_mean = Eigen::VectorXd());

// Index (0-based position in the enumeration) of the model with the given
// included-column set.
std::size_t model_position(const std::vector<ModelIndex>& models,
                           const std::vector<std::uint8_t>& mask);

}  // namespace mixtest

#endif
