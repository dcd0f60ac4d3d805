#ifndef POLYBRAID_RNG_HPP
#define POLYBRAID_RNG_HPP

#include <complex>
#include <cstdint>

namespace polybraid {

/// Small deterministic generator (splitmix64 core). We avoid <random>
/// distributions so that a seed produces the same stream on every platform
/// and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform on the closed disk of radius r (area measure).
    std::complex<double> disk(double r) {
        const double rho = r * std::sqrt(next_double());
        const double phi = 6.283185307179586477 * next_double();
        return {rho * std::cos(phi), rho * std::sin(phi)};
    }

    /// Integer in [lo, hi] inclusive.
    long long integer(long long lo, long long hi) {
        return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Stable derivation of sub-seeds, e.g. one per perturbation attempt.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        Rng r(seed ^ (0x517cc1b727220a95ULL * (salt + 1)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

} // namespace polybraid

#endif
