#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace swr {

// All randomness in the library flows through this wrapper around
// std::mt19937_64. The draw mappings are spelled out here instead of using
// <random> distributions, whose output is not pinned by the standard, so
// streams are bit-identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). Plain modulo; the bias is negligible for
    // the bin sizes used here and the mapping stays platform-stable.
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

    // Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::acos(-1.0) * uniform();
        spare_ = radius * std::sin(theta);
        have_spare_ = true;
        return radius * std::cos(theta);
    }

    // Unit-variance real and imaginary parts.
    std::complex<double> complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Derives an independent per-slice stream from a base seed; splitmix64 finalizer.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace swr
