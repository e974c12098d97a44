#pragma once

#include <cstdint>
#include <random>

namespace wwrt {

// SplitMix64 step; used both as a seed scrambler and as the stream-splitting
// rule documented below.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stream k derived from a root seed: split_seed(root, k) = splitmix64(root + k*phi64).
// Independent workers (chains, replicates, datasets) each get their own stream
// so results do not depend on scheduling order.
inline std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream) {
    return splitmix64(root + stream * 0x9E3779B97F4A7C15ULL);
}

// Seeded generator with the draw primitives used across the project.
// Distribution objects are constructed per call so a draw depends only on the
// engine state, never on leftover distribution caches.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }
    double normal(double mean = 0.0, double sd = 1.0) {
        if (sd == 0.0) return mean;
        return std::normal_distribution<double>(mean, sd)(engine_);
    }
    // Mean 1/rate.
    double exponential(double rate) {
        return std::exponential_distribution<double>(rate)(engine_);
    }
    double gamma(double shape, double scale) {
        return std::gamma_distribution<double>(shape, scale)(engine_);
    }
    // Location-scale Student t; df = +inf degrades to a normal.
    double student_t(double df, double location = 0.0, double scale = 1.0) {
        double z = normal();
        if (!std::isfinite(df)) return location + scale * z;
        double chi2 = gamma(df / 2.0, 2.0);
        return location + scale * z / std::sqrt(chi2 / df);
    }
    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        return std::poisson_distribution<long>(mean)(engine_);
    }
    // Mean/dispersion negative binomial, variance mean + mean^2/phi,
    // drawn as a gamma-Poisson mixture. phi = +inf degrades to Poisson.
    long neg_binomial(double mean, double phi) {
        if (mean <= 0.0) return 0;
        if (!std::isfinite(phi)) return poisson(mean);
        return poisson(gamma(phi, mean / phi));
    }
    std::uint64_t bits() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace wwrt
