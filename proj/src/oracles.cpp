#include "mixtest/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "mixtest/errors.hpp"
#include "mixtest/special.hpp"

namespace mixtest {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// 15-point Kronrod nodes (symmetric) with Kronrod and embedded Gauss-7 weights.
constexpr int kGkPoints = 15;
constexpr double kGkNode[kGkPoints] = {
    -0.991455371120812639207, -0.949107912342758524526, -0.864864423359769072789,
    -0.741531185599394439864, -0.586087235467691130295, -0.405845151377397166907,
    -0.207784955007898467601, 0.0,
    0.207784955007898467601,  0.405845151377397166907,  0.586087235467691130295,
    0.741531185599394439864,  0.864864423359769072789,  0.949107912342758524526,
    0.991455371120812639207};
constexpr double kGkWeight[kGkPoints] = {
    0.022935322010529224964, 0.063092092629978553291, 0.104790010322250183840,
    0.140653259715525918745, 0.169004726639267902827, 0.190350578064785409913,
    0.204432940075298892414, 0.209482141084727828013,
    0.204432940075298892414, 0.190350578064785409913, 0.169004726639267902827,
    0.140653259715525918745, 0.104790010322250183840, 0.063092092629978553291,
    0.022935322010529224964};
// Gauss-7 weights sit on the odd-indexed Kronrod nodes.
constexpr double kGaussWeight[7] = {
    0.129484966168869693271, 0.279705391489276667901, 0.381830050505118944950,
    0.417959183673469387755, 0.381830050505118944950, 0.279705391489276667901,
    0.129484966168869693271};

struct Transformed {
  // integrand already includes the log-Jacobian of the change of variables
  std::function<double(double)> log_f;
  double lo;
  double hi;
};

Transformed transform_domain(const LogIntegrand& f, Interval d) {
  const bool lo_inf = std::isinf(d.lo);
  const bool hi_inf = std::isinf(d.hi);
  if (!lo_inf && !hi_inf) {
    if (!(d.lo < d.hi)) throw ContractError("quadrature: empty interval");
    return {[&f](double t) { return f(t); }, d.lo, d.hi};
  }
  if (!lo_inf && hi_inf) {
    const double a = d.lo;
    return {[&f, a](double t) {
              const double onemt = 1.0 - t;
              return f(a + t / onemt) - 2.0 * std::log(onemt);
            },
            0.0, 1.0};
  }
  if (lo_inf && !hi_inf) {
    const double b = d.hi;
    return {[&f, b](double t) {
              const double onemt = 1.0 - t;
              return f(b - t / onemt) - 2.0 * std::log(onemt);
            },
            0.0, 1.0};
  }
  return {[&f](double t) {
            const double w = 1.0 - t * t;
            return f(t / w) + std::log((1.0 + t * t)) - 2.0 * std::log(w);
          },
          -1.0, 1.0};
}

struct Segment {
  double lo, hi;
  double integral;  // of exp(log_f - shift)
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

struct GkResult {
  double integral;
  double error;
  double max_log;
};

GkResult gk15(const std::function<double(double)>& log_f, double lo, double hi, double shift) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double kronrod = 0.0, gauss = 0.0, max_log = kLogZero;
  for (int i = 0; i < kGkPoints; ++i) {
    const double lf = log_f(mid + half * kGkNode[i]);
    if (lf > max_log) max_log = lf;
    const double v = std::isfinite(lf) ? std::exp(lf - shift) : 0.0;
    kronrod += kGkWeight[i] * v;
    if (i % 2 == 1) gauss += kGaussWeight[i / 2] * v;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::fabs(kronrod - gauss), max_log};
}

}  // namespace

double log_quadrature_marginal(const LogIntegrand& log_integrand, Interval domain,
                               double rel_tol) {
  const Transformed tr = transform_domain(log_integrand, domain);

  // Locate the rough maximum so everything can be evaluated relative to it.
  double shift = kLogZero;
  const int scan_points = 1024;
  for (int i = 1; i < scan_points; ++i) {
    const double t = tr.lo + (tr.hi - tr.lo) * static_cast<double>(i) / scan_points;
    shift = std::max(shift, tr.log_f(t));
  }
  if (shift == kLogZero) return kLogZero;

  constexpr int kMaxSegments = 4000;
  constexpr int kInitialSegments = 32;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::multiset<Segment> segments;
    double max_log_seen = kLogZero;
    for (int i = 0; i < kInitialSegments; ++i) {
      const double a = tr.lo + (tr.hi - tr.lo) * static_cast<double>(i) / kInitialSegments;
      const double b = tr.lo + (tr.hi - tr.lo) * static_cast<double>(i + 1) / kInitialSegments;
      const GkResult r = gk15(tr.log_f, a, b, shift);
      max_log_seen = std::max(max_log_seen, r.max_log);
      segments.insert({a, b, r.integral, r.error});
    }
    double achieved = std::numeric_limits<double>::infinity();
    while (static_cast<int>(segments.size()) < kMaxSegments) {
      double total = 0.0, total_err = 0.0;
      for (const Segment& s : segments) {
        total += s.integral;
        total_err += s.error;
      }
      if (total > 0.0) achieved = total_err / total;
      if (max_log_seen > shift + 15.0) break;  // shift too low, restart
      if (total > 0.0 && total_err <= 0.1 * rel_tol * total) {
        return std::log(total) + shift;
      }
      auto worst = std::prev(segments.end());
      const Segment s = *worst;
      segments.erase(worst);
      const double m = 0.5 * (s.lo + s.hi);
      const GkResult left = gk15(tr.log_f, s.lo, m, shift);
      const GkResult right = gk15(tr.log_f, m, s.hi, shift);
      max_log_seen = std::max({max_log_seen, left.max_log, right.max_log});
      segments.insert({s.lo, m, left.integral, left.error});
      segments.insert({m, s.hi, right.integral, right.error});
    }
    if (max_log_seen > shift + 15.0) {
      shift = max_log_seen;
      continue;
    }
    throw AccuracyError("quadrature did not reach the requested relative tolerance", achieved);
  }
  throw AccuracyError("quadrature integrand maximum kept escaping the shift", 1.0);
}

double quadrature_marginal(const LogIntegrand& log_integrand, Interval domain, double rel_tol) {
  return std::exp(log_quadrature_marginal(log_integrand, domain, rel_tol));
}

BayesFactorResult BayesFactorResult::from_log_bf(double log_bf) {
  double p;
  if (log_bf >= 0.0) {
    p = 1.0 / (1.0 + std::exp(-log_bf));
  } else {
    const double e = std::exp(log_bf);
    p = e / (1.0 + e);
  }
  return {log_bf, p};
}

BayesFactorResult bf_poisson_geometric(std::span<const double> counts) {
  const std::size_t n = counts.size();
  if (n < 1) throw ContractError("bf_poisson_geometric requires n >= 1");
  double s = 0.0, lgamma_fact = 0.0;
  for (double x : counts) {
    if (x < 0.0 || x != std::floor(x)) {
      throw ParameterError("bf_poisson_geometric: counts must be nonnegative integers");
    }
    s += x;
    lgamma_fact += std::lgamma(x + 1.0);
  }
  const double dn = static_cast<double>(n);
  const double log_bf =
      std::lgamma(dn + s) - std::lgamma(dn) - s * std::log(dn) - lgamma_fact;
  return BayesFactorResult::from_log_bf(log_bf);
}

BayesFactorResult bf_normal_var(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 1) throw ContractError("bf_normal_var requires n >= 1");
  const double xbar = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - xbar) * (v - xbar);
  const double log_bf = 0.5 * (static_cast<double>(n) - 1.0) * std::numbers::ln2 - 0.25 * ss;
  return BayesFactorResult::from_log_bf(log_bf);
}

double log_laplace_location_integral(std::span<const double> x, double rate) {
  const std::size_t n = x.size();
  if (n < 2) throw ParameterError("laplace location integral requires n >= 2");
  if (!(rate > 0.0)) throw ParameterError("rate must be > 0");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const double dn = static_cast<double>(n);

  // Sum of |x_i - mu| is piecewise linear with slope 2i - n on the segment
  // between the i-th and (i+1)-th order statistics; each segment integrates
  // the exponential of a linear function in closed form.
  double total_above = 0.0;  // sum of order statistics above the current cut
  for (double v : s) total_above += v;
  double total_below = 0.0;

  std::vector<double> log_terms;
  // Left tail: slope -n down to x_(1).
  log_terms.push_back(-std::log(rate * dn) - rate * (total_above - dn * s.front()));
  for (std::size_t i = 1; i < n; ++i) {
    total_below += s[i - 1];
    total_above -= s[i - 1];
    const double lo = s[i - 1];
    const double hi = s[i];
    if (!(hi > lo)) continue;  // ties: zero-width segment contributes nothing
    const double slope = 2.0 * static_cast<double>(i) - dn;
    const double t_const = total_above - total_below;
    if (slope == 0.0) {
      log_terms.push_back(std::log(hi - lo) - rate * t_const);
    } else {
      const double log_a = -rate * (slope * lo + t_const);
      const double log_b = -rate * (slope * hi + t_const);
      const double top = std::max(log_a, log_b);
      const double gap = std::fabs(log_a - log_b);
      log_terms.push_back(-std::log(rate * std::fabs(slope)) + top + log1m_exp(-gap));
    }
  }
  total_below += s.back();
  total_above -= s.back();
  // Right tail: slope +n from x_(n).
  log_terms.push_back(-std::log(rate * dn) - rate * (dn * s.back() - total_below));

  return log_sum_exp(log_terms);
}

double laplace_marginal_flat_prior(std::span<const double> x, bool include_prefactor) {
  double result = log_laplace_location_integral(x, 1.0 / kSqrt2);
  if (include_prefactor) result -= static_cast<double>(x.size()) * std::log(2.0 * kSqrt2);
  return result;
}

BayesFactorResult bf_normal_laplace(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw ParameterError("bf_normal_laplace requires n >= 2");
  const double dn = static_cast<double>(n);
  const double xbar = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - xbar) * (v - xbar);
  const double log_m1 = -0.5 * ss - 0.5 * (dn - 1.0) * kLogTwoPi - 0.5 * std::log(dn);
  // variance-matched Laplace: density exp(-sqrt2 |x - mu|) / sqrt2
  const double log_m2 =
      log_laplace_location_integral(x, kSqrt2) - 0.5 * dn * std::numbers::ln2;
  return BayesFactorResult::from_log_bf(log_m1 - log_m2);
}

}  // namespace mixtest
