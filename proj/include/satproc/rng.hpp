#pragma once

#include <cstdint>
#include <vector>

namespace satproc {

/// SplitMix64 step; also used to mix seeds into derived streams.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derived stream seed for (master, a, b), e.g. (master_seed, grid index, trial index).
/// Chained SplitMix64 mixing; documented so runs can be replayed externally.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = master;
    std::uint64_t x = splitmix64_next(s);
    s ^= a + 0x9e3779b97f4a7c15ULL;
    x ^= splitmix64_next(s);
    s ^= b + 0xd1b54a32d192ed03ULL;
    x ^= splitmix64_next(s);
    return x;
}

/// xoshiro256++ — the project-wide RNG. Platform-independent: output depends
/// only on the 64-bit seed, never on stdlib distribution internals.
class Xoshiro256PlusPlus {
public:
    explicit Xoshiro256PlusPlus(std::uint64_t seed = 0x6a09e667f3bcc908ULL) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    using result_type = std::uint64_t;
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~0ULL; }
    std::uint64_t operator()() { return next(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

using Rng = Xoshiro256PlusPlus;

/// Uniform integer in [0, bound), bound >= 1. Bitmask rejection: unbiased and portable.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~0ULL >> __builtin_clzll(bound - 1 | 1);
    for (;;) {
        std::uint64_t x = rng.next() & mask;
        if (x < bound) return x;
    }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(Rng& rng) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform_double(rng) < p; }

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

/// Binomial(n, p) sample. Inversion for small means, BTRS (Hormann) otherwise.
std::uint64_t binomial(Rng& rng, std::uint64_t n, double p);

/// m distinct values sampled uniformly from [0, universe), in uniformly random
/// order (Floyd's algorithm followed by a shuffle).
std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t universe, std::uint64_t m);

}  // namespace satproc
