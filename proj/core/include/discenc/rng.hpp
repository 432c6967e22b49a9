#pragma once

#include <cstdint>

#include "discenc/matrix.hpp"

namespace discenc {

/// xoshiro256** 1.0 (Blackman & Vigna), state seeded through splitmix64.
/// The generator and the seeding procedure are frozen: the same seed yields
/// the same stream on every platform, which makes "same seed, same
/// experiment" a contract of this library rather than an accident.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

    /// Uniform double in [lo, hi). Requires lo < hi.
    double uniform(double lo, double hi);

    /// Gaussian draw via Box-Muller; consumes exactly two uniforms per call.
    double normal(double mean, double stddev);

    /// Fisher-Yates shuffle of [first, last) index order, n entries.
    template <class T>
    void shuffle(T* data, std::size_t n) {
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            T tmp = data[i - 1];
            data[i - 1] = data[j];
            data[j] = tmp;
        }
    }

private:
    // Unbiased draw in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound);

    std::uint64_t state_[4];
};

/// Derives an independent stream seed from (master, role). Used by the
/// experiment runner so that adding a phase never perturbs the seeds other
/// phases receive. The derivation is fixed: splitmix64 applied to
/// master XOR fnv1a64(role).
std::uint64_t derive_seed(std::uint64_t master, const char* role);

/// rows x cols matrix of uniforms in [lo, hi). Advances the rng.
Matrix rand_uniform(SeededRng& rng, std::size_t rows, std::size_t cols, double lo, double hi);

}  // namespace discenc
