#pragma once

#include <cstdint>
#include <random>

namespace veremi {

// Seeded PRNG with explicit uniform/gaussian transforms so identical seeds
// give identical draws on every platform (std::*_distribution output is
// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    // Uniform integer in [0, n); n must be positive.
    std::uint64_t uniform_int(std::uint64_t n) { return engine_() % n; }

    // Zero-mean gaussian via Box-Muller; the paired draw is cached.
    double gaussian(double sigma) {
        if (haveSpare_) {
            haveSpare_ = false;
            return spare_ * sigma;
        }
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(theta);
        haveSpare_ = true;
        return r * std::cos(theta) * sigma;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool haveSpare_ = false;
};

} // namespace veremi
