#include "mixtest/glm.hpp"

#include <cmath>
#include <numbers>

#include "mixtest/errors.hpp"
#include "mixtest/special.hpp"

namespace mixtest {

namespace {

double expit(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log p and log(1-p) under the logit link, stable in both tails.
double log_expit(double x) { return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x - 0.5 * kLogTwoPi); }

void check_binary_response(const Dataset& data) {
  if (!data.has_design()) throw ParameterError("glm fit requires a design matrix");
  for (double v : data.y) {
    if (v != 0.0 && v != 1.0) throw ParameterError("glm fit requires a binary response");
  }
}

struct MvnProposal {
  Eigen::VectorXd mean;
  Eigen::MatrixXd chol;  // lower Cholesky factor of the covariance
  double log_det_half;   // sum log diag(chol)

  static MvnProposal from_cov(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
      throw NumericError("proposal covariance is not positive definite");
    }
    MvnProposal p{mean, llt.matrixL(), 0.0};
    for (int i = 0; i < p.chol.rows(); ++i) p.log_det_half += std::log(p.chol(i, i));
    return p;
  }

  Eigen::VectorXd draw(RandomStream& rng) const {
    Eigen::VectorXd z(mean.size());
    for (int i = 0; i < z.size(); ++i) z[i] = rng.normal();
    return mean + chol * z;
  }

  double log_pdf(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd u = chol.triangularView<Eigen::Lower>().solve(x - mean);
    return -0.5 * u.squaredNorm() - log_det_half -
           0.5 * static_cast<double>(mean.size()) * kLogTwoPi;
  }
};

}  // namespace

GlmFit fit_glm_mle(const Dataset& data, Link link) {
  check_binary_response(data);
  data.validate();
  const Eigen::MatrixXd& X = data.design;
  const long n = X.rows();
  const long p = X.cols();
  Eigen::Map<const Eigen::VectorXd> y(data.y.data(), n);

  GlmFit fit;
  fit.coefficients = Eigen::VectorXd::Zero(p);
  constexpr double kScoreTol = 1e-8;
  constexpr int kMaxIter = 100;
  constexpr double kProbFloor = 1e-12;

  Eigen::VectorXd score(p);
  Eigen::MatrixXd info(p, p);
  for (int it = 1; it <= kMaxIter; ++it) {
    fit.iterations = it;
    const Eigen::VectorXd eta = X * fit.coefficients;
    Eigen::VectorXd w(n), resid(n);
    for (long i = 0; i < n; ++i) {
      if (link == Link::Logit) {
        const double mu = expit(eta[i]);
        w[i] = std::max(mu * (1.0 - mu), kProbFloor);
        resid[i] = y[i] - mu;
      } else {
        const double mu = std::min(std::max(norm_cdf(eta[i]), kProbFloor), 1.0 - kProbFloor);
        const double phi = std_normal_pdf(eta[i]);
        w[i] = phi * phi / (mu * (1.0 - mu));
        resid[i] = (y[i] - mu) * phi / (mu * (1.0 - mu));
      }
    }
    // For logit, resid is y - mu and the score is X^T(y - mu); for probit the
    // working residual already folds in phi/(mu(1-mu)).
    score = X.transpose() * resid;
    info = X.transpose() * w.asDiagonal() * X;

    if (score.lpNorm<Eigen::Infinity>() < kScoreTol) {
      fit.converged = true;
      break;
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    if (ldlt.info() != Eigen::Success) break;
    const Eigen::VectorXd step = ldlt.solve(score);
    fit.coefficients += step;
    if (!fit.coefficients.allFinite() || fit.coefficients.norm() > 1e8) {
      fit.coefficients -= step;
      break;
    }
  }
  fit.information = info;
  return fit;
}

Eigen::VectorXd rescale_ratio(const GlmFit& fit_logit, const GlmFit& fit_probit) {
  if (fit_logit.coefficients.size() != fit_probit.coefficients.size()) {
    throw ContractError("rescale_ratio: coefficient dimension mismatch");
  }
  Eigen::VectorXd k(fit_logit.coefficients.size());
  for (int i = 0; i < k.size(); ++i) {
    const double denom = fit_probit.coefficients[i];
    if (denom == 0.0 || !std::isfinite(denom)) {
      throw NumericError("rescale_ratio: probit coefficient " + std::to_string(i) +
                         " is zero or non-finite");
    }
    k[i] = fit_logit.coefficients[i] / denom;
  }
  return k;
}

double logit_probit_mixture_log_posterior(const Eigen::VectorXd& theta, double alpha,
                                          const Dataset& data, const Eigen::VectorXd& k,
                                          double a0) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) return kLogZero;
  check_binary_response(data);
  const Eigen::MatrixXd& X = data.design;
  const double n = static_cast<double>(X.rows());

  const Eigen::MatrixXd xtx = X.transpose() * X;
  double lp = log_beta_pdf(alpha, a0, a0);
  // g-prior N(0, n (X^T X)^{-1})
  Eigen::LLT<Eigen::MatrixXd> llt(xtx);
  double log_det_xtx = 0.0;
  const Eigen::MatrixXd L = llt.matrixL();
  for (int i = 0; i < L.rows(); ++i) log_det_xtx += 2.0 * std::log(L(i, i));
  lp += -0.5 * theta.dot(xtx * theta) / n -
        0.5 * (static_cast<double>(theta.size()) * (kLogTwoPi + std::log(n)) - log_det_xtx);

  const Eigen::VectorXd theta_probit = theta.cwiseQuotient(k);
  const double log_alpha = std::log(alpha);
  const double log_1malpha = std::log1p(-alpha);
  for (long i = 0; i < X.rows(); ++i) {
    const double u = X.row(i).dot(theta);
    const double v = X.row(i).dot(theta_probit);
    const double y = data.y[static_cast<std::size_t>(i)];
    const double lp_logit = y == 1.0 ? log_expit(u) : log_expit(-u);
    const double lp_probit = y == 1.0 ? log_norm_cdf(v) : log_norm_cdf(-v);
    lp += log_sum_exp(log_alpha + lp_logit, log_1malpha + lp_probit);
  }
  return lp;
}

LogitProbitRun run_logit_probit_mh(const Dataset& data, double a0, const ChainConfig& config) {
  config.validate();
  if (!(a0 > 0.0)) throw ParameterError("a0 must be > 0");
  check_binary_response(data);

  LogitProbitRun run;
  run.fit_logit = fit_glm_mle(data, Link::Logit);
  run.fit_probit = fit_glm_mle(data, Link::Probit);
  run.rescale = rescale_ratio(run.fit_logit, run.fit_probit);

  const Eigen::MatrixXd& X = data.design;
  const long n = X.rows();
  const long p = X.cols();
  const double dn = static_cast<double>(n);

  const Eigen::MatrixXd xtx = X.transpose() * X;
  Eigen::LLT<Eigen::MatrixXd> llt(xtx);
  double log_det_xtx = 0.0;
  {
    const Eigen::MatrixXd L = llt.matrixL();
    for (int i = 0; i < L.rows(); ++i) log_det_xtx += 2.0 * std::log(L(i, i));
  }
  const double gprior_const =
      -0.5 * (static_cast<double>(p) * (kLogTwoPi + std::log(dn)) - log_det_xtx);
  auto gprior = [&](const Eigen::VectorXd& th) {
    return -0.5 * th.dot(xtx * th) / dn + gprior_const;
  };

  // Model-posterior independence proposals: normal approximations at the two
  // MLEs, the probit one mapped onto the shared (logit-scale) parameter.
  std::vector<MvnProposal> proposals;
  proposals.push_back(MvnProposal::from_cov(
      run.fit_logit.coefficients,
      run.fit_logit.information.ldlt().solve(Eigen::MatrixXd::Identity(p, p))));
  {
    const Eigen::MatrixXd cov2 =
        run.fit_probit.information.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd D = run.rescale.asDiagonal();
    proposals.push_back(MvnProposal::from_cov(
        run.rescale.cwiseProduct(run.fit_probit.coefficients), D * cov2 * D));
  }

  // Per-observation log-likelihood pair under the current theta, cached so
  // that weight updates cost O(n) additions only.
  Eigen::VectorXd lp_logit(n), lp_probit(n);
  auto refresh_cache = [&](const Eigen::VectorXd& th) {
    const Eigen::VectorXd u = X * th;
    const Eigen::VectorXd v = X * th.cwiseQuotient(run.rescale);
    for (long i = 0; i < n; ++i) {
      const double y = data.y[static_cast<std::size_t>(i)];
      lp_logit[i] = y == 1.0 ? log_expit(u[i]) : log_expit(-u[i]);
      lp_probit[i] = y == 1.0 ? log_norm_cdf(v[i]) : log_norm_cdf(-v[i]);
    }
  };
  auto mixture_lik = [&](double alpha) {
    const double la = std::log(alpha);
    const double lb = std::log1p(-alpha);
    double total = 0.0;
    for (long i = 0; i < n; ++i) total += log_sum_exp(la + lp_logit[i], lb + lp_probit[i]);
    return total;
  };

  RandomStream rng(config.seed);
  Eigen::VectorXd theta = run.fit_logit.coefficients;
  double alpha = rng.beta(a0, a0);
  refresh_cache(theta);
  double cur_lik = mixture_lik(alpha);
  double cur_prior = gprior(theta);

  Trace& trace = run.trace;
  trace.num_components = 2;
  trace.num_slots = static_cast<std::size_t>(p);
  const std::size_t kept = static_cast<std::size_t>(config.iterations - config.burn_in);
  trace.weights.reserve(kept * 2);
  trace.globals.reserve(kept * trace.num_slots);
  trace.accepted.reserve(kept);

  for (long t = 0; t < config.iterations; ++t) {
    bool accepted = false;
    // alpha block (prior proposal: prior and proposal densities cancel)
    {
      const double prop_alpha = config.alpha_proposal.kind == AlphaProposal::Kind::FromPrior
                                    ? rng.beta(a0, a0)
                                    : expit(std::log(alpha / (1.0 - alpha)) +
                                            config.alpha_proposal.step * rng.normal());
      double log_ratio = mixture_lik(prop_alpha) - cur_lik;
      if (config.alpha_proposal.kind == AlphaProposal::Kind::LogitRandomWalk) {
        log_ratio += log_beta_pdf(prop_alpha, a0, a0) - log_beta_pdf(alpha, a0, a0) +
                     std::log(prop_alpha) + std::log1p(-prop_alpha) - std::log(alpha) -
                     std::log1p(-alpha);
      }
      if (std::log(rng.uniform()) < log_ratio) {
        cur_lik = mixture_lik(prop_alpha);
        alpha = prop_alpha;
        accepted = true;
      }
    }
    // theta block, proposing model picked uniformly
    {
      const std::size_t pick = rng.uniform() < 0.5 ? 0 : 1;
      const MvnProposal& q = proposals[pick];
      const Eigen::VectorXd prop_theta = q.draw(rng);
      const Eigen::VectorXd keep_lp = lp_logit, keep_lq = lp_probit;
      refresh_cache(prop_theta);
      const double prop_lik = mixture_lik(alpha);
      const double prop_prior = gprior(prop_theta);
      const double log_ratio = (prop_prior + prop_lik) - (cur_prior + cur_lik) +
                               q.log_pdf(theta) - q.log_pdf(prop_theta);
      if (std::log(rng.uniform()) < log_ratio) {
        theta = prop_theta;
        cur_lik = prop_lik;
        cur_prior = prop_prior;
      } else {
        lp_logit = keep_lp;
        lp_probit = keep_lq;
      }
    }
    if (t >= config.burn_in) {
      trace.weights.push_back(alpha);
      trace.weights.push_back(1.0 - alpha);
      for (long s = 0; s < p; ++s) trace.globals.push_back(theta[s]);
      trace.accepted.push_back(accepted ? 1 : 0);
    }
  }
  return run;
}

ModelIndex ModelIndex::from_index(int j, int num_columns) {
  if (j < 1 || j >= (1 << num_columns)) {
    throw ParameterError("model index must lie in 1 .. 2^(k+1)-1");
  }
  ModelIndex m;
  m.j = j;
  m.mask.resize(num_columns);
  for (int c = 0; c < num_columns; ++c) m.mask[c] = static_cast<std::uint8_t>((j >> c) & 1);
  return m;
}

int ModelIndex::num_coefficients() const {
  int s = 0;
  for (std::uint8_t b : mask) s += b;
  return s;
}

std::size_t model_position(const std::vector<ModelIndex>& models,
                           const std::vector<std::uint8_t>& mask) {
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (models[i].mask == mask) return i;
  }
  throw ContractError("no model with the requested mask");
}

Eigen::MatrixXd centered_design(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd out = X;
  for (long c = 0; c < out.cols(); ++c) {
    const double lo = out.col(c).minCoeff();
    const double hi = out.col(c).maxCoeff();
    if (lo == 1.0 && hi == 1.0) continue;  // intercept column
    out.col(c).array() -= out.col(c).mean();
  }
  return out;
}

RegressionMixture build_regression_mixture(const Dataset& data, double a0, RegressionCase kase,
                                           double g, const Eigen::VectorXd& prior_mean) {
  if (!(a0 > 0.0)) throw ParameterError("a0 must be > 0");
  if (!data.has_design()) throw ParameterError("regression mixture requires a design matrix");
  data.validate();
  const int p = static_cast<int>(data.design.cols());
  if (p > 12) throw ParameterError("at most 12 design columns supported (2^(k+1)-1 components)");

  RegressionMixture mix;
  mix.X = centered_design(data.design);
  mix.a0 = a0;
  mix.c = g > 0.0 ? g : static_cast<double>(data.size());
  mix.prior_mean = prior_mean.size() ? prior_mean : Eigen::VectorXd::Zero(p);
  if (mix.prior_mean.size() != p) throw ParameterError("prior mean dimension mismatch");
  mix.parameterisation = kase;
  const int count = (1 << p) - 1;
  mix.models.reserve(count);
  for (int j = 1; j <= count; ++j) mix.models.push_back(ModelIndex::from_index(j, p));
  return mix;
}

namespace {

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& X, const ModelIndex& m) {
  Eigen::MatrixXd out(X.rows(), m.num_coefficients());
  int c = 0;
  for (int col = 0; col < X.cols(); ++col) {
    if (m.mask[col]) out.col(c++) = X.col(col);
  }
  return out;
}

Eigen::VectorXd subvector(const Eigen::VectorXd& v, const ModelIndex& m) {
  Eigen::VectorXd out(m.num_coefficients());
  int c = 0;
  for (int col = 0; col < v.size(); ++col) {
    if (m.mask[col]) out[c++] = v[col];
  }
  return out;
}

// Draw from N(mean, sigma2 * P^{-1}) given the Cholesky factor of P.
Eigen::VectorXd draw_gaussian_prec(const Eigen::VectorXd& mean, const Eigen::LLT<Eigen::MatrixXd>& llt,
                                   double sigma, RandomStream& rng) {
  Eigen::VectorXd z(mean.size());
  for (int i = 0; i < z.size(); ++i) z[i] = rng.normal();
  return mean + sigma * llt.matrixU().solve(z);
}

void sample_regression_weights(RegressionState& state, const RegressionMixture& mix,
                               const Dataset& data, RandomStream& rng) {
  const AllocationStats stats = allocation_stats(state.alloc, data, mix.num_components());
  WeightPrior prior = WeightPrior::symmetric(mix.num_components(), mix.a0);
  state.weights = sample_weights_conditional(stats.counts, prior, rng);
}

void sample_allocations_from_means(RegressionState& state, const RegressionMixture& mix,
                                   const Dataset& data,
                                   const std::vector<Eigen::VectorXd>& component_eta,
                                   RandomStream& rng) {
  const std::size_t kk = mix.num_components();
  std::vector<double> logw(kk), masses(kk);
  for (std::size_t j = 0; j < kk; ++j) {
    logw[j] = state.weights[j] > 0.0 ? std::log(state.weights[j]) : kLogZero;
  }
  const double inv2s2 = 0.5 / state.sigma2;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double best = kLogZero;
    for (std::size_t j = 0; j < kk; ++j) {
      const double r = data.y[i] - component_eta[j][static_cast<long>(i)];
      const double lp = logw[j] == kLogZero ? kLogZero : logw[j] - r * r * inv2s2;
      masses[j] = lp;
      best = std::max(best, lp);
    }
    if (best == kLogZero) throw DegenerateError("observation has zero mass in every model");
    for (std::size_t j = 0; j < kk; ++j) {
      masses[j] = masses[j] == kLogZero ? 0.0 : std::exp(masses[j] - best);
    }
    state.alloc.labels[i] = static_cast<int>(rng.categorical(masses));
  }
}

}  // namespace

RegressionState init_regression_state(const RegressionMixture& mix, const Dataset& data,
                                      RandomStream& rng) {
  RegressionState state;
  state.weights.assign(mix.num_components(), 1.0 / static_cast<double>(mix.num_components()));
  state.beta = Eigen::VectorXd::Zero(mix.X.cols());
  state.betas.resize(mix.num_components());
  for (std::size_t j = 0; j < mix.num_components(); ++j) {
    state.betas[j] = Eigen::VectorXd::Zero(mix.models[j].num_coefficients());
  }
  state.sigma2 = 1.0;
  // overdispersed start: uniform random allocations over all components
  state.alloc.labels.resize(data.size());
  const double k = static_cast<double>(mix.num_components());
  for (std::size_t i = 0; i < data.size(); ++i) {
    state.alloc.labels[i] =
        std::min(static_cast<int>(rng.uniform() * k), static_cast<int>(k) - 1);
  }
  return state;
}

void regression_gibbs_step_case1(RegressionState& state, const RegressionMixture& mix,
                                 const Dataset& data, RandomStream& rng) {
  const Eigen::MatrixXd& X = mix.X;
  const long p = X.cols();
  const std::size_t n = data.size();
  const double c = mix.c;

  sample_regression_weights(state, mix, data, rng);

  // masked design: row i keeps the columns flagged by its allocated model
  Eigen::MatrixXd xz = X;
  for (std::size_t i = 0; i < n; ++i) {
    const ModelIndex& m = mix.models[state.alloc.labels[i]];
    for (long col = 0; col < p; ++col) {
      if (!m.mask[col]) xz(static_cast<long>(i), col) = 0.0;
    }
  }
  const Eigen::MatrixXd A = X.transpose() * X;
  Eigen::Map<const Eigen::VectorXd> y(data.y.data(), static_cast<long>(n));

  const Eigen::MatrixXd prec = A / c + xz.transpose() * xz;
  Eigen::LLT<Eigen::MatrixXd> llt(prec);
  if (llt.info() != Eigen::Success) {
    throw NumericError("case-1 conditional precision is not positive definite");
  }
  const Eigen::VectorXd rhs = A * mix.prior_mean / c + xz.transpose() * y;
  const Eigen::VectorXd beta_bar = llt.solve(rhs);
  state.beta = draw_gaussian_prec(beta_bar, llt, std::sqrt(state.sigma2), rng);

  const Eigen::VectorXd resid = y - xz * state.beta;
  const Eigen::VectorXd dbeta = state.beta - mix.prior_mean;
  const double b = 0.5 * resid.squaredNorm() + 0.5 * dbeta.dot(A * dbeta) / c;
  const double a = 0.5 * (static_cast<double>(n) + static_cast<double>(p));
  state.sigma2 = b / rng.gamma(a, 1.0);

  std::vector<Eigen::VectorXd> etas(mix.num_components());
  for (std::size_t j = 0; j < mix.num_components(); ++j) {
    etas[j] = submatrix(X, mix.models[j]) * subvector(state.beta, mix.models[j]);
  }
  sample_allocations_from_means(state, mix, data, etas, rng);
}

void regression_gibbs_step_case2(RegressionState& state, const RegressionMixture& mix,
                                 const Dataset& data, RandomStream& rng) {
  const Eigen::MatrixXd& X = mix.X;
  const std::size_t n = data.size();
  const double c = mix.c;
  Eigen::Map<const Eigen::VectorXd> y(data.y.data(), static_cast<long>(n));

  sample_regression_weights(state, mix, data, rng);

  double b = 0.0;
  double total_coeffs = 0.0;
  std::vector<Eigen::VectorXd> etas(mix.num_components());
  for (std::size_t j = 0; j < mix.num_components(); ++j) {
    const ModelIndex& m = mix.models[j];
    const Eigen::MatrixXd Xj = submatrix(X, m);
    const Eigen::MatrixXd Aj = Xj.transpose() * Xj;
    const Eigen::VectorXd Mj = subvector(mix.prior_mean, m);
    total_coeffs += m.num_coefficients();

    Eigen::MatrixXd Bj = Eigen::MatrixXd::Zero(Aj.rows(), Aj.cols());
    Eigen::VectorXd bj = Eigen::VectorXd::Zero(Aj.rows());
    for (std::size_t i = 0; i < n; ++i) {
      if (state.alloc.labels[i] != static_cast<int>(j)) continue;
      const Eigen::VectorXd row = Xj.row(static_cast<long>(i));
      Bj += row * row.transpose();
      bj += row * data.y[i];
    }
    const Eigen::MatrixXd prec = Aj / c + Bj;
    Eigen::LLT<Eigen::MatrixXd> llt(prec);
    if (llt.info() != Eigen::Success) {
      throw NumericError("case-2 conditional precision is not positive definite");
    }
    const Eigen::VectorXd eta_j = llt.solve(Aj * Mj / c + bj);
    state.betas[j] = draw_gaussian_prec(eta_j, llt, std::sqrt(state.sigma2), rng);

    for (std::size_t i = 0; i < n; ++i) {
      if (state.alloc.labels[i] != static_cast<int>(j)) continue;
      const double r = data.y[i] - Xj.row(static_cast<long>(i)).dot(state.betas[j]);
      b += 0.5 * r * r;
    }
    const Eigen::VectorXd d = state.betas[j] - Mj;
    b += 0.5 * d.dot(Aj * d) / c;
    etas[j] = Xj * state.betas[j];
  }
  const double a = 0.5 * (static_cast<double>(n) + total_coeffs);
  state.sigma2 = b / rng.gamma(a, 1.0);

  sample_allocations_from_means(state, mix, data, etas, rng);
}

Trace run_regression_gibbs(const RegressionMixture& mix, const Dataset& data,
                           const ChainConfig& config) {
  config.validate();
  if (data.size() == 0) throw ConfigError("regression sampler needs data");
  RandomStream rng(config.seed);
  RegressionState state = init_regression_state(mix, data, rng);

  Trace trace;
  trace.num_components = mix.num_components();
  const bool shared = mix.parameterisation == RegressionCase::SharedBeta;
  trace.num_slots = shared ? mix.num_columns() + 1 : 1;

  for (long t = 0; t < config.iterations; ++t) {
    if (shared) {
      regression_gibbs_step_case1(state, mix, data, rng);
    } else {
      regression_gibbs_step_case2(state, mix, data, rng);
    }
    if (t >= config.burn_in) {
      trace.weights.insert(trace.weights.end(), state.weights.begin(), state.weights.end());
      if (shared) {
        for (long s = 0; s < state.beta.size(); ++s) trace.globals.push_back(state.beta[s]);
      }
      trace.globals.push_back(state.sigma2);
      trace.accepted.push_back(1);
      if (config.record_allocation_counts) {
        const AllocationStats stats = allocation_stats(state.alloc, data, mix.num_components());
        trace.allocation_counts.insert(trace.allocation_counts.end(), stats.counts.begin(),
                                       stats.counts.end());
      }
    }
  }
  return trace;
}

std::vector<double> gprior_model_posterior(const Dataset& data,
                                           const std::vector<ModelIndex>& models, double c,
                                           const Eigen::VectorXd& prior_mean) {
  if (!data.has_design()) throw ParameterError("g-prior posterior requires a design matrix");
  data.validate();
  if (!(c > 0.0)) throw ParameterError("g-prior scale must be > 0");
  const Eigen::MatrixXd X = centered_design(data.design);
  const double n = static_cast<double>(data.size());
  Eigen::Map<const Eigen::VectorXd> y(data.y.data(), X.rows());
  const Eigen::VectorXd M =
      prior_mean.size() ? prior_mean : Eigen::VectorXd::Zero(X.cols());

  std::vector<double> log_marginal(models.size());
  for (std::size_t j = 0; j < models.size(); ++j) {
    const Eigen::MatrixXd Xj = submatrix(X, models[j]);
    const Eigen::VectorXd r = y - Xj * subvector(M, models[j]);
    const Eigen::VectorXd proj =
        Xj * (Xj.transpose() * Xj).ldlt().solve(Xj.transpose() * r);
    const double q = r.squaredNorm() - c / (1.0 + c) * r.dot(proj);
    const double pj = models[j].num_coefficients();
    log_marginal[j] = std::lgamma(0.5 * n) - 0.5 * n * std::log(std::numbers::pi) -
                      0.5 * pj * std::log1p(c) - 0.5 * n * std::log(q);
  }
  const double norm = log_sum_exp(log_marginal);
  std::vector<double> prob(models.size());
  for (std::size_t j = 0; j < models.size(); ++j) prob[j] = std::exp(log_marginal[j] - norm);
  return prob;
}

}  // namespace mixtest
