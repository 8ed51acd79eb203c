#ifndef MIXTEST_RNG_HPP
#define MIXTEST_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace mixtest {

// Seeded random stream. Every stochastic operation in the library takes one of
// these explicitly so that runs are reproducible bit-for-bit.
//
// The raw uniform stream is std::mt19937_64 (output sequence pinned by the
// standard); all distribution transforms are implemented here rather than via
// std::*_distribution, whose algorithms are implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on the open interval (0,1); never returns 0 or 1, so log(u) and
  // log1p(-u) are always finite.
  double uniform();

  // Uniform on (lo, hi).
  double uniform(double lo, double hi);

  // Standard normal (Box-Muller).
  double normal();
  double normal(double mean, double sd);

  // Gamma with given shape and rate (Marsaglia-Tsang).
  double gamma(double shape, double rate);

  double beta(double a, double b);

  // Dirichlet draw: normalized gammas, length = concentration.size().
  std::vector<double> dirichlet(const std::vector<double>& concentration);

  double exponential(double rate);

  // Poisson count (exact: chunked Knuth product method).
  long poisson(double lambda);

  // Number-of-failures geometric starting at zero, success probability p.
  long geometric_failures(double p);

  double gumbel(double location, double scale);
  double logistic(double location, double scale);
  double laplace(double location, double scale);

  bool bernoulli(double p) { return uniform() < p; }

  // Categorical index in [0, probs.size()) given unnormalized nonnegative masses.
  std::size_t categorical(const std::vector<double>& unnormalized);

  // Derive an independent stream for a child task. Mixes the parts through
  // splitmix64 so that (seed, a, b, ...) tuples map to well-separated states.
  static std::uint64_t mix(std::initializer_list<std::uint64_t> parts);
  RandomStream spawn(std::uint64_t stream_id);

 private:
  std::mt19937_64 gen_;
};

}  // namespace mixtest

#endif
