// End-to-end benchmark suite: one pass/fail line per numbered check, nonzero
// exit if any check fails. Check 7 reproduces a set of reference posterior
// means whose values exceed what the stated model can produce (see the
// measured-vs-reference printout); it is reported honestly rather than
// loosened, and the same machinery is cross-validated against a collapsed
// Rao-Blackwellized oracle in the line printed next to it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "mixtest/distributions.hpp"
#include "mixtest/experiments.hpp"
#include "mixtest/glm.hpp"
#include "mixtest/oracles.hpp"
#include "mixtest/pairs.hpp"
#include "mixtest/samplers.hpp"
#include "mixtest/special.hpp"
#include "mixtest/survival.hpp"

#include "../support/collapsed_regression_oracle.hpp"
#include "../support/grid_oracle.hpp"

using namespace mixtest;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
std::string g_data_dir = "data";
constexpr std::uint64_t kBaseSeed = 20260809;

struct CheckContext {
  std::string detail;
  bool ok = true;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::uint64_t seed_for(int criterion, std::uint64_t a, std::uint64_t b = 0) {
  return RandomStream::mix({kBaseSeed, static_cast<std::uint64_t>(criterion), a, b});
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. closed-form bayes factors and marginals agree with adaptive quadrature

void check_oracle_equivalence(CheckContext& ctx) {
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    RandomStream rng(seed_for(1, rep));
    // Poisson/Geometric
    {
      const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform(0.0, 27.0));
      const double lambda = rng.uniform(1.0, 6.0);
      const auto x = sample(Family::Poisson, Params{{lambda}}, n, rng);
      const double closed = bf_poisson_geometric(x).log_bf;
      const auto poisson_marginal = [&](double lam) {
        double lp = -std::log(lam);
        for (double xi : x) lp += log_density(Family::Poisson, Params{{lam}}, xi);
        return lp;
      };
      const auto geometric_marginal = [&](double lam) {
        double lp = -std::log(lam);
        const Params p{{1.0 / (1.0 + lam)}};
        for (double xi : x) lp += log_density(Family::GeometricFailures, p, xi);
        return lp;
      };
      const double quad = log_quadrature_marginal(poisson_marginal, {0.0, kInf}) -
                          log_quadrature_marginal(geometric_marginal, {0.0, kInf});
      worst = std::max(worst, std::fabs(closed - quad));
    }
    // Normal variance pair
    {
      const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 38.0));
      const auto x = sample(Family::Normal, Params{{rng.uniform(-1.0, 1.0),
                                                    rng.uniform(0.5, 2.0)}}, n, rng);
      const double closed = bf_normal_var(x).log_bf;
      const auto marginal = [&](double scale) {
        return log_quadrature_marginal(
            [&](double th) {
              double lp = 0;
              for (double xi : x) lp += log_normal_pdf(xi, th, scale);
              return lp;
            },
            {-kInf, kInf});
      };
      const double quad = marginal(1.0) - marginal(std::numbers::sqrt2);
      worst = std::max(worst, std::fabs(closed - quad));
    }
    // order-statistics location integral, both rates (display and matched)
    {
      const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 23.0));
      const auto x = sample(Family::Normal, Params{{rng.uniform(-2.0, 2.0),
                                                    rng.uniform(0.4, 2.0)}}, n, rng);
      for (double rate : {1.0 / std::numbers::sqrt2, std::numbers::sqrt2}) {
        const double closed = log_laplace_location_integral(x, rate);
        const double quad = log_quadrature_marginal(
            [&](double mu) {
              double g = 0;
              for (double xi : x) g += std::fabs(xi - mu);
              return -rate * g;
            },
            {-kInf, kInf});
        worst = std::max(worst, std::fabs(closed - quad));
      }
    }
    // Normal vs variance-matched Laplace
    {
      const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform(0.0, 25.0));
      const auto x = sample(Family::Normal, Params{{0.0, 1.0}}, n, rng);
      const double closed = bf_normal_laplace(x).log_bf;
      const double m1 = log_quadrature_marginal(
          [&](double mu) {
            double lp = 0;
            for (double xi : x) lp += log_normal_pdf(xi, mu, 1.0);
            return lp;
          },
          {-kInf, kInf});
      const double m2 = log_quadrature_marginal(
          [&](double mu) {
            double lp = 0;
            const Params p{{mu, 1.0 / std::numbers::sqrt2}};
            for (double xi : x) lp += log_density(Family::Laplace, p, xi);
            return lp;
          },
          {-kInf, kInf});
      worst = std::max(worst, std::fabs(closed - (m1 - m2)));
    }
  }
  ctx.note("max |log closed - log quadrature| = " + fmt(worst));
  ctx.require(worst < 1e-6, "disagreement above 1e-6");
}

// ---------------------------------------------------------------------------
// 2. both samplers match the exhaustive-allocation posterior for small n

void check_grid_oracle(CheckContext& ctx) {
  struct Case {
    PairKind kind;
    Dataset data;
  };
  std::vector<Case> cases;
  {
    RandomStream rng(seed_for(2, 1));
    Dataset d;
    d.y = sample(Family::Normal, Params{{0.0, 1.3}}, 7, rng);
    cases.push_back({PairKind::NormalVar1VsVar2, d});
  }
  {
    RandomStream rng(seed_for(2, 2));
    Dataset d;
    d.y = sample(Family::Poisson, Params{{3.0}}, 6, rng);
    cases.push_back({PairKind::PoissonVsGeometric, d});
  }
  double worst = 0.0;
  for (const Case& c : cases) {
    const MixtureSpec spec = build_pair(c.kind, 0.5);
    const auto grid = testing::grid_alpha_posterior(spec, c.data, 2000);
    ChainConfig cfg;
    cfg.iterations = 300000;
    cfg.burn_in = 30000;
    cfg.seed = seed_for(2, 3);
    const Trace mh = run_pair_mh(c.kind, c.data, 0.5, cfg);
    const Trace gibbs = run_pair_gibbs(c.kind, c.data, 0.5, cfg);
    const double tv_mh = testing::tv_against_grid(mh.weight_column(0), grid, 40);
    const double tv_gibbs = testing::tv_against_grid(gibbs.weight_column(0), grid, 40);
    worst = std::max({worst, tv_mh, tv_gibbs});
  }
  ctx.note("max total variation = " + fmt(worst));
  ctx.require(worst < 0.05, "total variation above 0.05");
}

// ---------------------------------------------------------------------------
// 3. weight consistency on the count pair in both directions

void check_count_pair_convergence(CheckContext& ctx) {
  ChainConfig cfg;
  cfg.iterations = 10000;
  cfg.burn_in = 1000;
  int high = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const Dataset data =
        simulate_dataset({Family::Poisson, Params{{4.0}}, 1000}, seed_for(3, 10, rep));
    cfg.seed = seed_for(3, 11, rep);
    const PosteriorSummary s =
        summarize(run_pair_mh(PairKind::PoissonVsGeometric, data, 0.5, cfg));
    high += s.weights[0].median > 0.9;
  }
  int low = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const Dataset data = simulate_dataset({Family::GeometricFailures, Params{{0.1}}, 500},
                                          seed_for(3, 20, rep));
    cfg.seed = seed_for(3, 21, rep);
    const PosteriorSummary s =
        summarize(run_pair_mh(PairKind::PoissonVsGeometric, data, 0.5, cfg));
    low += s.weights[0].median < 0.1;
  }
  ctx.note("poisson-true medians > 0.9 in " + std::to_string(high) +
           "/20, geometric-true medians < 0.1 in " + std::to_string(low) + "/20");
  ctx.require(high >= 18, "fewer than 18/20 high medians");
  ctx.require(low >= 18, "fewer than 18/20 low medians");
}

// ---------------------------------------------------------------------------
// 4. misspecified data keeps the normal/laplace weight off the boundaries

void check_non_concentration(CheckContext& ctx) {
  ChainConfig cfg;
  cfg.iterations = 10000;
  cfg.burn_in = 1000;
  double lo = 1.0, hi = 0.0;
  int inside = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const Dataset data =
        simulate_dataset({Family::Normal, Params{{0.0, 0.7}}, 1000}, seed_for(4, 10, rep));
    cfg.seed = seed_for(4, 11, rep);
    const PosteriorSummary s =
        summarize(run_pair_mh(PairKind::NormalVsLaplace, data, 1.0, cfg));
    const double med = s.weights[0].median;
    inside += med > 0.05 && med < 0.7;
    lo = std::min(lo, med);
    hi = std::max(hi, med);
  }
  ctx.note("medians in [" + fmt(lo) + ", " + fmt(hi) + "], " + std::to_string(inside) +
           "/20 inside (0.05, 0.7)");
  ctx.require(inside == 20, "a median left the interval");
}

// ---------------------------------------------------------------------------
// 5. bundled diabetes benchmark: fits, rescaling and posterior medians

void check_pima(CheckContext& ctx) {
  const Dataset data = ingest_csv(g_data_dir + "/pima.csv", DataSchema::BinaryRegression);
  const GlmFit lf = fit_glm_mle(data, Link::Logit);
  const GlmFit pf = fit_glm_mle(data, Link::Probit);
  const Eigen::VectorXd k = rescale_ratio(lf, pf);
  ctx.note("logit (" + fmt(lf.coefficients[0]) + ", " + fmt(lf.coefficients[1]) +
           "), probit (" + fmt(pf.coefficients[0]) + ", " + fmt(pf.coefficients[1]) +
           "), k (" + fmt(k[0]) + ", " + fmt(k[1]) + ")");
  ctx.require(std::fabs(lf.coefficients[0] + 4.11) <= 0.01, "logit intercept off");
  ctx.require(std::fabs(lf.coefficients[1] - 0.10) <= 0.01, "logit slope off");
  ctx.require(std::fabs(pf.coefficients[0] + 2.54) <= 0.005, "probit intercept off");
  ctx.require(std::fabs(pf.coefficients[1] - 0.065) <= 0.005, "probit slope off");
  ctx.require(std::fabs(k[0] - 1.616) <= 0.01, "k0 off");
  ctx.require(std::fabs(k[1] - 1.617) <= 0.01, "k1 off");

  ChainConfig cfg;
  cfg.iterations = 30000;
  cfg.burn_in = 3000;
  const double alpha_targets[2] = {0.352, 0.449};
  const double theta0_targets[2] = {-4.06, -4.05};
  const double theta1_targets[2] = {0.103, 0.103};
  const double a0s[2] = {0.1, 0.5};
  for (int i = 0; i < 2; ++i) {
    cfg.seed = seed_for(5, 30 + i);
    const LogitProbitRun run = run_logit_probit_mh(data, a0s[i], cfg);
    const PosteriorSummary s = summarize(run.trace);
    ctx.note("a0=" + fmt(a0s[i]) + ": alpha median " + fmt(s.weights[0].median) +
             ", theta (" + fmt(s.globals[0].median) + ", " + fmt(s.globals[1].median) + ")");
    ctx.require(std::fabs(s.weights[0].median - alpha_targets[i]) <= 0.07,
                "alpha median outside band at a0=" + fmt(a0s[i]));
    ctx.require(std::fabs(s.globals[0].median - theta0_targets[i]) <= 0.15,
                "theta0 median outside band");
    ctx.require(std::fabs(s.globals[1].median - theta1_targets[i]) <= 0.15,
                "theta1 median outside band");
  }
}

// ---------------------------------------------------------------------------
// 6. large simulated binary designs select the right link

void check_simulated_glm_consistency(CheckContext& ctx) {
  ChainConfig cfg;
  cfg.iterations = 10000;
  cfg.burn_in = 1000;
  {
    Eigen::VectorXd beta(2);
    beta << 5.0, 1.5;
    const Dataset data = simulate_binary_dataset(Link::Logit, 10000, beta, seed_for(6, 1));
    cfg.seed = seed_for(6, 2);
    const LogitProbitRun run = run_logit_probit_mh(data, 0.1, cfg);
    const PosteriorSummary s = summarize(run.trace);
    ctx.note("logit data: alpha median " + fmt(s.weights[0].median) + ", theta0 " +
             fmt(s.globals[0].median));
    ctx.require(s.weights[0].median >= 0.99, "logit-data alpha median below 0.99");
  }
  {
    Eigen::VectorXd beta(2);
    beta << 3.5, 0.8;
    const Dataset data = simulate_binary_dataset(Link::Probit, 10000, beta, seed_for(6, 3));
    cfg.seed = seed_for(6, 4);
    const LogitProbitRun run = run_logit_probit_mh(data, 0.1, cfg);
    const PosteriorSummary s = summarize(run.trace);
    ctx.note("probit data: alpha median " + fmt(s.weights[0].median));
    ctx.require(s.weights[0].median <= 0.05, "probit-data alpha median above 0.05");
  }
}

// ---------------------------------------------------------------------------
// 7. three-covariate benchmark posterior means (reference values unattainable;
//    measured and oracle values printed for the record)

void check_regression_table(CheckContext& ctx) {
  Eigen::VectorXd beta(4);
  beta << 2, -3, 0, 0;
  ChainConfig cfg;
  cfg.iterations = 10000;
  cfg.burn_in = 1000;
  const double targets_case1[2] = {0.9836, 0.5190};
  const double targets_case2[2] = {0.9611, 0.3905};
  const double tol_case1[2] = {0.05, 0.15};
  const double tol_case2[2] = {0.05, 0.20};
  const double a0s[2] = {0.1, 0.5};

  for (int ai = 0; ai < 2; ++ai) {
    double mean_case1 = 0.0, mean_case2 = 0.0, mean_gold = 0.0;
    for (int seedi = 0; seedi < 10; ++seedi) {
      const Dataset data =
          simulate_regression_dataset(30, beta, 1.0, seed_for(7, 10 + ai, seedi));
      cfg.seed = seed_for(7, 20 + ai, seedi);
      const RegressionMixture mix1 =
          build_regression_mixture(data, a0s[ai], RegressionCase::SharedBeta);
      const std::size_t pos = model_position(mix1.models, {1, 1, 0, 0});
      mean_case1 += summarize(run_regression_gibbs(mix1, data, cfg)).weights[pos].mean;
      const RegressionMixture mix2 =
          build_regression_mixture(data, a0s[ai], RegressionCase::SeparateBeta);
      mean_case2 += summarize(run_regression_gibbs(mix2, data, cfg)).weights[pos].mean;
      mean_gold +=
          testing::collapsed_case1_posterior(mix1, data, 2000, 300, seed_for(7, 30, seedi))
              .weight_means[pos];
    }
    mean_case1 /= 10;
    mean_case2 /= 10;
    mean_gold /= 10;
    ctx.note("a0=" + fmt(a0s[ai]) + ": case1 " + fmt(mean_case1) + " (ref " +
             fmt(targets_case1[ai]) + "), case2 " + fmt(mean_case2) + " (ref " +
             fmt(targets_case2[ai]) + "), collapsed-oracle " + fmt(mean_gold));
    ctx.require(std::fabs(mean_case1 - targets_case1[ai]) <= tol_case1[ai],
                "case1 mean outside band at a0=" + fmt(a0s[ai]));
    ctx.require(std::fabs(mean_case2 - targets_case2[ai]) <= tol_case2[ai],
                "case2 mean outside band at a0=" + fmt(a0s[ai]));
  }
}

// ---------------------------------------------------------------------------
// 8. survival mixture selects the generating component

void check_survival_selection(CheckContext& ctx) {
  const Family fams[3] = {Family::Normal, Family::Gumbel, Family::Logistic};
  const char* names[3] = {"normal", "gumbel", "logistic"};
  ChainConfig cfg;
  cfg.iterations = 10000;
  cfg.burn_in = 1000;
  for (int truth = 0; truth < 3; ++truth) {
    const Dataset data =
        simulate_survival_cohort(fams[truth], 1000, 0.0, 0.0, 1.0, seed_for(8, 10, truth));
    cfg.seed = seed_for(8, 11, truth);
    const SurvivalRun run = run_survival_test(data, 1.0, cfg);
    int argmax = 0;
    for (int j = 1; j < 3; ++j) {
      if (run.summary.weights[j].median > run.summary.weights[argmax].median) argmax = j;
    }
    ctx.note(std::string(names[truth]) + " n=1e3 winner " + names[argmax] + " (" +
             fmt(run.summary.weights[argmax].median) + ")");
    ctx.require(argmax == truth, std::string("wrong winner for ") + names[truth]);
  }
  for (int truth = 0; truth < 3; ++truth) {
    const Dataset data =
        simulate_survival_cohort(fams[truth], 10000, 0.0, 0.0, 1.0, seed_for(8, 20, truth));
    cfg.seed = seed_for(8, 21, truth);
    const SurvivalRun run = run_survival_test(data, 1.0, cfg);
    const double med = run.summary.weights[truth].median;
    ctx.note(std::string(names[truth]) + " n=1e4 true-weight median " + fmt(med));
    ctx.require(med > 0.90, std::string("n=1e4 median not above 0.90 for ") + names[truth]);
  }
}

// ---------------------------------------------------------------------------
// 9. metropolis-hastings mixes at least as well as gibbs

void check_mixing(CheckContext& ctx) {
  ChainConfig cfg;
  cfg.iterations = 10000;
  cfg.burn_in = 1000;
  for (std::size_t n : {100ull, 500ull, 1000ull}) {
    int wins = 0;
    for (int seedi = 0; seedi < 10; ++seedi) {
      const Dataset data = simulate_dataset({Family::Normal, Params{{0.0, 1.0}}, n},
                                            seed_for(9, n, seedi));
      cfg.seed = seed_for(9, n + 1, seedi);
      const Trace gibbs = run_pair_gibbs(PairKind::NormalVar1VsVar2, data, 0.5, cfg);
      const Trace mh = run_pair_mh(PairKind::NormalVar1VsVar2, data, 0.5, cfg);
      wins += count_crossings(mh.weight_column(0)) >= count_crossings(gibbs.weight_column(0));
    }
    ctx.note("n=" + std::to_string(n) + ": mh >= gibbs crossings in " + std::to_string(wins) +
             "/10");
    ctx.require(wins >= 9, "mh lost the crossing comparison at n=" + std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// 10. property suite: prior recovery, invariants, determinism, guards

double uniform_cdf(double x) { return std::min(std::max(x, 0.0), 1.0); }
double arcsine_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 2.0 / std::numbers::pi * std::asin(std::sqrt(x));
}

void check_properties(CheckContext& ctx) {
  // prior recovery at n = 0 for both samplers
  {
    MixtureSpec spec;
    spec.components = {
        {Family::Normal, {ParamRule::fixed(0.0), ParamRule::fixed(1.0)}},
        {Family::Normal, {ParamRule::fixed(0.0), ParamRule::fixed(1.0)}},
    };
    const Dataset empty;
    ChainConfig cfg;
    cfg.iterations = 100000;
    cfg.burn_in = 0;
    cfg.seed = seed_for(10, 1);
    double worst = 0.0;
    for (double a0 : {1.0, 0.5}) {
      spec.weight_prior = WeightPrior::symmetric(2, a0);
      const auto cdf = a0 == 1.0 ? uniform_cdf : arcsine_cdf;
      const Trace g = run_gibbs(spec, empty, cfg, GibbsConditionals{}, {});
      const Trace m = run_mh(spec, empty, cfg, MhProposals{}, {});
      worst = std::max({worst, ks_distance(g.weight_column(0), cdf),
                        ks_distance(m.weight_column(0), cdf)});
    }
    ctx.note("prior-recovery KS max " + fmt(worst));
    ctx.require(worst < 0.02, "prior recovery KS above 0.02");
  }
  // quantile and simplex invariants plus interior acceptance on a real run
  {
    const Dataset data =
        simulate_dataset({Family::Poisson, Params{{4.0}}, 200}, seed_for(10, 2));
    ChainConfig cfg;
    cfg.iterations = 5000;
    cfg.burn_in = 500;
    cfg.seed = seed_for(10, 3);
    const Trace t = run_pair_mh(PairKind::PoissonVsGeometric, data, 0.5, cfg);
    const PosteriorSummary s = summarize(t);
    bool monotone = true;
    for (const QuantitySummary& q : {s.weights[0], s.globals[0]}) {
      monotone = monotone && q.q025 <= q.q25 && q.q25 <= q.median && q.median <= q.q75 &&
                 q.q75 <= q.q975;
    }
    ctx.require(monotone, "quantiles not monotone");
    ctx.require(s.acceptance_rate > 0.0 && s.acceptance_rate < 1.0,
                "acceptance rate not interior");
    double worst_sum = 0.0;
    for (std::size_t d = 0; d < t.num_draws(); ++d) {
      worst_sum = std::max(worst_sum, std::fabs(t.weight(d, 0) + t.weight(d, 1) - 1.0));
    }
    ctx.require(worst_sum < 1e-12, "weights off the simplex");
  }
  // determinism checksums
  {
    const Dataset data =
        simulate_dataset({Family::Normal, Params{{0.0, 1.0}}, 100}, seed_for(10, 4));
    ChainConfig cfg;
    cfg.iterations = 2000;
    cfg.burn_in = 200;
    cfg.seed = seed_for(10, 5);
    const Trace a = run_pair_mh(PairKind::NormalVar1VsVar2, data, 0.5, cfg);
    const Trace b = run_pair_mh(PairKind::NormalVar1VsVar2, data, 0.5, cfg);
    ctx.require(a.weights == b.weights && a.globals == b.globals,
                "identical seeds produced different traces");
    const Dataset d1 = simulate_dataset({Family::Poisson, Params{{4.0}}, 50}, 77);
    const Dataset d2 = simulate_dataset({Family::Poisson, Params{{4.0}}, 50}, 77);
    ctx.require(d1.y == d2.y, "dataset simulation not deterministic");
  }
  // propriety guard
  {
    Dataset degenerate;
    degenerate.y = {2.0, 2.0, 2.0, 2.0};
    ChainConfig cfg;
    cfg.iterations = 100;
    cfg.burn_in = 10;
    bool blocked = false;
    try {
      run_survival_test(degenerate, 1.0, cfg);
    } catch (const DegenerateError&) {
      blocked = true;
    }
    ctx.require(blocked, "propriety guard did not block all-equal data");
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(CheckContext&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strncmp(argv[i], "--data-dir=", 11) == 0) g_data_dir = argv[i] + 11;
  }
  const std::vector<Criterion> criteria = {
      {1, "oracle-equivalence", check_oracle_equivalence},
      {2, "exhaustive-allocation-oracle", check_grid_oracle},
      {3, "count-pair-convergence", check_count_pair_convergence},
      {4, "misfit-non-concentration", check_non_concentration},
      {5, "diabetes-benchmark", check_pima},
      {6, "simulated-link-selection", check_simulated_glm_consistency},
      {7, "regression-table-means", check_regression_table},
      {8, "survival-selection", check_survival_selection},
      {9, "mixing-comparison", check_mixing},
      {10, "property-suite", check_properties},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    CheckContext ctx;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(ctx);
    } catch (const std::exception& e) {
      ctx.ok = false;
      ctx.note(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %-28s (%.1fs) %s\n", ctx.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                ctx.detail.c_str());
    std::fflush(stdout);
    failures += !ctx.ok;
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
