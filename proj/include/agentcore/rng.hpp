#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace agentcore::util {

// Deterministic RNG wrapper. std::mt19937_64 output is specified bit-exactly
// by the standard; the std::*_distribution adapters are not, so all bounded
// draws here go through our own reductions to keep generated artifacts
// byte-identical across compilers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform(std::uint64_t n) { return next_u64() % n; }

    // Uniform double in [0, 1).
    double real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(double p) { return real() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Draws k distinct elements from pool (order deterministic).
    template <typename T>
    std::vector<T> sample(const std::vector<T>& pool, std::size_t k) {
        std::vector<T> copy = pool;
        shuffle(copy);
        if (k < copy.size()) copy.resize(k);
        return copy;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace agentcore::util
