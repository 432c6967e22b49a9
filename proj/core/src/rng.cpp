#include "discenc/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace discenc {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(const char* s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (; *s; ++s) {
        h ^= static_cast<unsigned char>(*s);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t SeededRng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SeededRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("uniform: requires lo < hi, got [" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + ")");
    }
    double v = lo + next_double() * (hi - lo);
    if (v >= hi) v = std::nextafter(hi, lo);  // guard against rounding up to hi
    return v;
}

double SeededRng::normal(double mean, double stddev) {
    const double u1 = next_double();  // in [0, 1), so 1-u1 in (0, 1]
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double z = r * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    return mean + stddev * z;
}

std::uint64_t SeededRng::next_below(std::uint64_t bound) {
    // Rejection sampling over the top of the range keeps the draw unbiased.
    const std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

std::uint64_t derive_seed(std::uint64_t master, const char* role) {
    std::uint64_t state = master ^ fnv1a64(role);
    return splitmix64(state);
}

Matrix rand_uniform(SeededRng& rng, std::size_t rows, std::size_t cols, double lo, double hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("rand_uniform: requires lo < hi");
    }
    Matrix out(rows, cols);
    double* p = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) p[i] = rng.uniform(lo, hi);
    return out;
}

}  // namespace discenc
