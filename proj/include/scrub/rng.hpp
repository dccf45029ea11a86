#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace scrub {

// Deterministic random source. All sampling goes through the helpers below
// instead of std distributions, whose output is implementation-defined;
// this keeps reports byte-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform integer in [0, n). n must be > 0.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = gen_();
            if (r >= threshold) return static_cast<std::size_t>(r % bound);
        }
    }

    // Uniform real in [0, 1) with 53-bit resolution.
    double uniform_real() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform real in the open interval (0, 1).
    double uniform_open01() {
        for (;;) {
            const double u = uniform_real();
            if (u > 0.0) return u;
        }
    }

    // Seeded Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

    // Derive a decorrelated child seed from (seed, tag). SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace scrub
