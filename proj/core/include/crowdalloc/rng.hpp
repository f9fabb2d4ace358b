#pragma once

#include <cstdint>
#include <random>

namespace crowdalloc {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent, order-free streams.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stream for replication `index` of an experiment seeded with `master_seed`.
// Depends only on the pair, so replications can run in any order.
Rng replication_rng(std::uint64_t master_seed, std::uint64_t index);

// Uniform integer in [0, bound) from raw engine output by rejection.
// Unlike std::uniform_int_distribution the result is identical across
// standard library implementations.
std::uint64_t portable_below(Rng& rng, std::uint64_t bound);

// Uniform double in [0, 1) from the top 53 bits of one draw.
double portable_unit(Rng& rng);

// The samplers below are built only on portable_unit so that a seed gives the
// same trajectory on every toolchain.
double sample_exponential(Rng& rng, double rate);
double sample_standard_normal(Rng& rng);
double sample_gamma(Rng& rng, double shape);  // Marsaglia-Tsang, unit scale
double sample_beta(Rng& rng, double a, double b);
bool sample_bernoulli(Rng& rng, double p);

}  // namespace crowdalloc
