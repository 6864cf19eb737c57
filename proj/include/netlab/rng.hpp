#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace netlab {

using Seed = std::uint64_t;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a; names an independent stream per operation.
constexpr std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seed of replicate r in a Monte Carlo loop driven by `seed`.
constexpr std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t r) {
  return mix64(seed ^ mix64(r + 1));
}

// 53-bit mantissa draw in [0,1).
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-based uniform: a pure function of (seed, stream, a, b). Latent
// variables indexed by vertex or pair use this, so the value attached to
// {i,j} does not depend on how many other variables were drawn.
constexpr double keyed_uniform(Seed seed, std::uint64_t stream, std::uint64_t a,
                               std::uint64_t b = 0) {
  std::uint64_t h = mix64(seed ^ mix64(stream));
  h = mix64(h ^ a);
  h = mix64(h ^ (b * 0xd6e8feb86659fd93ULL));
  return to_unit(h);
}

// Sequential stream for mechanisms whose draws are inherently ordered.
class Rng {
 public:
  Rng(Seed seed, std::uint64_t stream) : engine_(mix64(seed ^ mix64(stream))) {}

  double uniform() { return to_unit(engine_()); }

  // Uniform integer in [0, n), n > 0. Rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  double gamma(double shape) {
    std::gamma_distribution<double> dist(shape, 1.0);
    return dist(engine_);
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace netlab
