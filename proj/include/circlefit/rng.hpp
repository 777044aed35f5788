#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace circlefit {

// splitmix64 finalizer. Used both for seed mixing and stream derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Order-sensitive seed combiner: hash_combine(hash_combine(s, a), b) differs
// from swapping a and b. The golden constant is the splitmix64 increment.
inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h + 0x9e3779b97f4a7c15ull + v);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = mix64(base + 0x9e3779b97f4a7c15ull);
    for (std::uint64_t p : parts) h = hash_combine(h, p);
    return h;
}

// Deterministic random source. The engine is std::mt19937_64 (bit-portable by
// the standard); the distributions are hand-rolled here because std::
// distribution implementations differ across standard libraries and golden
// tests need one fixed stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n) by rejection; n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    // Box-Muller, cosine branch only: consumes exactly two uniforms per call.
    double normal(double mean, double sd) {
        double u1 = 1.0 - uniform();  // (0, 1]: keeps log() finite
        double u2 = uniform();
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
        return mean + sd * z;
    }

    // Three distinct indices in [0, n), uniform over ordered distinct triples.
    void sample3(std::size_t n, std::size_t out[3]) {
        std::size_t a = static_cast<std::size_t>(below(n));
        std::size_t b = static_cast<std::size_t>(below(n - 1));
        if (b >= a) ++b;
        std::size_t c = static_cast<std::size_t>(below(n - 2));
        // shift c past the two taken slots, in ascending order
        std::size_t lo = a < b ? a : b;
        std::size_t hi = a < b ? b : a;
        if (c >= lo) ++c;
        if (c >= hi) ++c;
        out[0] = a;
        out[1] = b;
        out[2] = c;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace circlefit
