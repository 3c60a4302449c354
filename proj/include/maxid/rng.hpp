#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace maxid {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic substream generator: the stream for (seed, stream_id) is the
// same regardless of how many other streams exist or which thread draws from
// it. All variate transforms are arithmetic-only, so sequences are identical
// across platforms for a given libstdc++-independent engine state.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream_id) : engine_(mix(seed, stream_id)) {}

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1); safe as a log argument
    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Marsaglia polar, one spare cached
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double c = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * c;
        has_spare_ = true;
        return u * c;
    }

    // Exp(1)
    double exponential() { return -std::log(uniform_open()); }

    // Poisson via Knuth's product method, chunked so it stays exact for
    // large means (each chunk multiplies at most e^{-20} worth of mass).
    std::int64_t poisson(double mean) {
        std::int64_t count = 0;
        while (mean > 0.0) {
            const double step = mean < 20.0 ? mean : 20.0;
            const double limit = std::exp(-step);
            double prod = 1.0;
            std::int64_t k = -1;
            do {
                ++k;
                prod *= uniform();
            } while (prod > limit);
            count += k;
            mean -= step;
        }
        return count;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // unit-scale 1-Frechet variate: P[X <= y] = exp(-1/y)
    double frechet1() { return -1.0 / std::log(uniform_open()); }

    std::uint64_t raw() { return engine_(); }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s ^= stream_id * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL;
        std::uint64_t b = splitmix64(s);
        return a ^ (b + 0x9E3779B97F4A7C15ULL);
    }

    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace maxid
