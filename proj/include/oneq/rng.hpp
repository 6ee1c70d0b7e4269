#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace oneq {

struct RngSeed {
    std::uint64_t value = 0;
};

// Seedable generator with hand-rolled output distributions so that a given
// seed produces the same stream on every platform and standard library.
// Ensemble member k draws from an independent stream derived as seed + k.
class Rng {
  public:
    explicit Rng(RngSeed seed) : engine_(mix(seed.value)) {}
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    static Rng derived(RngSeed base, std::uint64_t member_index) {
        return Rng(base.value + member_index);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t uniform_index(std::uint64_t n) {
        // rejection-free enough for n far below 2^64
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    }

    /// Standard normal via Box-Muller; one spare value cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Bernoulli trial with success probability p.
    bool bernoulli(double p) { return uniform() < p; }

  private:
    // splitmix64 finalizer, so that nearby seeds give unrelated streams
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace oneq
