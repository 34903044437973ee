#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace e2v {

/**
 * All pseudo-randomness in the project flows through Rng, so every run is
 * replayable from one 64-bit seed. The exact construction is pinned and
 * recorded in run metadata as `rng_algorithm_id`:
 *
 *   engine      std::mt19937_64
 *   uniform     (next() >> 11) * 2^-53                       -> [0, 1)
 *   normal      Box-Muller: mu + sigma * sqrt(-2 ln(1-a)) * cos(2 pi b),
 *               a and b fresh uniforms, no second-value caching
 *   bernoulli   uniform() < p
 *
 * Parallel streams (one per agent, per law, ...) derive their seeds with
 * splitmix64 from the master seed and a stream index, so work items can
 * run in any order or concurrently and still reproduce bit-identically.
 */
inline constexpr const char* rng_algorithm_id = "mt19937_64/u53/box-muller";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal(double mu, double sigma) {
        const double a = uniform();
        const double b = uniform();
        const double r = std::sqrt(-2.0 * std::log1p(-a));
        return mu + sigma * r * std::cos(kTwoPi * b);
    }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t next_raw() { return engine_(); }

private:
    static constexpr double kTwoPi = 6.2831853071795864769;
    std::mt19937_64 engine_;
};

} // namespace e2v
