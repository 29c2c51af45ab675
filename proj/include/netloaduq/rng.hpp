#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace nluq {

/// Finalizer from splitmix64; bijective on u64.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Derives an independent stream seed from a root seed and up to two stream
/// indices. Scenario runs hand one stream per (seed, scenario, day) so results
/// do not depend on evaluation order or thread count.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    constexpr std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t h = mix64(seed + gamma);
    h = mix64(h ^ (mix64(a + 1) + gamma));
    h = mix64(h ^ (mix64(b + 1) + gamma));
    return h;
}

/// Small deterministic PRNG (splitmix64 core) with the handful of variate
/// samplers the EV model and Monte Carlo loops need. Not cryptographic.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard normal via Box-Muller; one value per call.
    double normal();

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// exp(N(mu, sigma)).
    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    /// Index drawn proportionally to non-negative weights (need not sum to 1).
    std::size_t discrete(std::span<const double> weights);

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n);

private:
    std::uint64_t state_;
};

} // namespace nluq
