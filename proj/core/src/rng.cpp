#include "crowdalloc/rng.hpp"

#include "crowdalloc/errors.hpp"

#include <cmath>
#include <numbers>

namespace crowdalloc {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng replication_rng(std::uint64_t master_seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(master_seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)};
  return Rng(seq);
}

std::uint64_t portable_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw ParameterError("portable_below: bound must be positive");
  // Largest multiple of bound representable; reject the biased tail.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t v = rng();
  while (v > limit) v = rng();
  return v % bound;
}

double portable_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sample_exponential(Rng& rng, double rate) {
  if (!(rate > 0.0)) throw ParameterError("sample_exponential: rate must be positive");
  return -std::log1p(-portable_unit(rng)) / rate;
}

double sample_standard_normal(Rng& rng) {
  // Box-Muller, discarding the second variate to keep the draw count fixed.
  const double u1 = 1.0 - portable_unit(rng);  // (0, 1]
  const double u2 = portable_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_gamma(Rng& rng, double shape) {
  if (!(shape > 0.0)) throw ParameterError("sample_gamma: shape must be positive");
  if (shape < 1.0) {
    const double u = 1.0 - portable_unit(rng);
    return sample_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = sample_standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = portable_unit(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_beta(Rng& rng, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("sample_beta: parameters must be positive");
  if (a == 1.0 && b == 1.0) return portable_unit(rng);
  const double x = sample_gamma(rng, a);
  const double y = sample_gamma(rng, b);
  return x / (x + y);
}

bool sample_bernoulli(Rng& rng, double p) { return portable_unit(rng) < p; }

}  // namespace crowdalloc
