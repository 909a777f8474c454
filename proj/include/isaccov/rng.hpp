#pragma once

// Counter-based random streams. A Substream is fully determined by
// (seed, stream index, purpose tag), so snapshots can be generated in any
// order or in parallel and still reproduce bit-identical draws.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace isaccov {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

class Substream {
  public:
    Substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t purpose)
        : base_(detail::splitmix64(
              detail::splitmix64(detail::splitmix64(seed) ^
                                 (stream * 0xD6E8FEB86659FD93ull)) ^
              (purpose * 0xA3B195354A39B70Dull))) {}

    std::uint64_t next_u64() { return detail::splitmix64(base_ + counter_++); }

    // Uniform on the open interval (0, 1); never 0, so logs are safe.
    double next_u01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_u01(); }

    // Standard normal via Box-Muller; the second deviate is cached.
    double next_normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = next_u01();
        const double u2 = next_u01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

    double next_exponential(double mean) {
        if (!(mean > 0.0))
            throw std::invalid_argument("next_exponential: mean must be > 0");
        return -mean * std::log(next_u01());
    }

    // Poisson count via the unit-rate arrival construction: exact for any mean,
    // O(mean) uniforms per draw.
    std::uint64_t next_poisson(double mean) {
        if (!(mean >= 0.0))
            throw std::invalid_argument("next_poisson: mean must be >= 0");
        double acc = 0.0;
        std::uint64_t n = 0;
        while (true) {
            acc += -std::log(next_u01());
            if (acc > mean)
                return n;
            ++n;
        }
    }

  private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// Unit-mean Rician power draw: |sqrt(K/(K+1)) + CN(0, 1/(K+1))|^2.
inline double sample_rician_power(double rician_k, Substream& s) {
    if (!(rician_k >= 0.0))
        throw std::invalid_argument("sample_rician_power: K must be >= 0");
    const double mean_amp = std::sqrt(rician_k / (rician_k + 1.0));
    const double sigma = std::sqrt(0.5 / (rician_k + 1.0));
    const double re = mean_amp + sigma * s.next_normal();
    const double im = sigma * s.next_normal();
    return re * re + im * im;
}

// Rayleigh-fading power draw: exponential with rate mu (mean 1/mu).
inline double sample_rayleigh_power(double mu, Substream& s) {
    if (!(mu > 0.0))
        throw std::invalid_argument("sample_rayleigh_power: mu must be > 0");
    return s.next_exponential(1.0 / mu);
}

// Swerling-I radar cross-section draw: exponential with the given mean.
inline double sample_rcs(double mean_rcs, Substream& s) {
    if (!(mean_rcs > 0.0))
        throw std::invalid_argument("sample_rcs: mean must be > 0");
    return s.next_exponential(mean_rcs);
}

}  // namespace isaccov
