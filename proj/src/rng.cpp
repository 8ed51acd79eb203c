#include "mixtest/rng.hpp"

#include <cmath>
#include <numbers>

#include "mixtest/errors.hpp"

namespace mixtest {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double RandomStream::uniform() {
  // 53-bit mantissa, shifted to the cell centre: values in (0,1) strictly.
  return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RandomStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::normal(double mean, double sd) {
  return mean + sd * normal();
}

double RandomStream::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw ParameterError("gamma draw requires shape > 0 and rate > 0");
  }
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

double RandomStream::beta(double a, double b) {
  const double ga = gamma(a, 1.0);
  const double gb = gamma(b, 1.0);
  return ga / (ga + gb);
}

std::vector<double> RandomStream::dirichlet(const std::vector<double>& concentration) {
  std::vector<double> out(concentration.size());
  double total = 0.0;
  for (std::size_t i = 0; i < concentration.size(); ++i) {
    out[i] = gamma(concentration[i], 1.0);
    total += out[i];
  }
  for (double& w : out) w /= total;
  return out;
}

double RandomStream::exponential(double rate) {
  if (!(rate > 0.0)) throw ParameterError("exponential draw requires rate > 0");
  return -std::log(uniform()) / rate;
}

long RandomStream::poisson(double lambda) {
  if (!(lambda > 0.0)) throw ParameterError("poisson draw requires lambda > 0");
  long count = 0;
  // Sum of independent Poissons: peel off chunks so the product never underflows.
  while (lambda > 30.0) {
    const double chunk = 30.0;
    double limit = std::exp(-chunk);
    double prod = uniform();
    while (prod > limit) {
      ++count;
      prod *= uniform();
    }
    lambda -= chunk;
  }
  const double limit = std::exp(-lambda);
  double prod = uniform();
  while (prod > limit) {
    ++count;
    prod *= uniform();
  }
  return count;
}

long RandomStream::geometric_failures(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw ParameterError("geometric draw requires p in (0,1)");
  }
  // Inverse CDF on the number-of-failures convention (support {0,1,2,...}).
  return static_cast<long>(std::floor(std::log(uniform()) / std::log1p(-p)));
}

double RandomStream::gumbel(double location, double scale) {
  return location - scale * std::log(-std::log(uniform()));
}

double RandomStream::logistic(double location, double scale) {
  const double u = uniform();
  return location + scale * std::log(u / (1.0 - u));
}

double RandomStream::laplace(double location, double scale) {
  const double u = uniform() - 0.5;
  const double sign = (u < 0.0) ? -1.0 : 1.0;
  return location - scale * sign * std::log1p(-2.0 * std::fabs(u));
}

std::size_t RandomStream::categorical(const std::vector<double>& unnormalized) {
  double total = 0.0;
  for (double m : unnormalized) total += m;
  if (!(total > 0.0)) throw DegenerateError("categorical draw: all masses zero");
  double target = uniform() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i < unnormalized.size(); ++i) {
    cum += unnormalized[i];
    if (target < cum) return i;
  }
  return unnormalized.size() - 1;
}

std::uint64_t RandomStream::mix(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

RandomStream RandomStream::spawn(std::uint64_t stream_id) {
  return RandomStream(mix({gen_(), stream_id}));
}

}  // namespace mixtest
