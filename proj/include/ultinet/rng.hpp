#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ultinet {

// SplitMix64 finalizer. Used only for seed derivation, never as the run RNG.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic seed splitter: child seed for `index` under `base`.
// repetition seeds and per-run stream seeds both go through this, so the
// whole experiment reproduces bit-for-bit from the master seed alone.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return splitmix64(base ^ ((index + 1) * 0x9E3779B97F4A7C15ull));
}

// Named sub-streams of one simulation run. Toggling a mechanism must not
// perturb the draws of another, so each consumer gets its own stream.
enum class Stream : std::uint64_t {
    PopulationInit = 1,
    InteractionGraph = 2,
    ReputationGraph = 3,
    GameLoop = 4,
    Measurement = 5,
};

constexpr std::uint64_t stream_seed(std::uint64_t run_seed, Stream s) noexcept {
    return derive_seed(run_seed, static_cast<std::uint64_t>(s));
}

// mt19937_64 plus hand-rolled distributions. The standard distributions are
// implementation-defined, which would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // [0, 1) with 53 random bits
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // unbiased integer in [0, bound), Lemire's multiply-shift rejection
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t t = (0 - bound) % bound;
            while (lo < t) {
                m = static_cast<unsigned __int128>(engine_()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    bool bernoulli(double p) { return uniform01() < p; }

    // Marsaglia polar method; the spare deviate is cached.
    double normal(double mean, double sd) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + sd * spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return mean + sd * u * f;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ultinet
