#pragma once

#include <array>
#include <cstdint>

// Seeded k-wise independent hashing over the Mersenne-prime field 2^61 - 1.
// Pairwise families are degree-1 polynomials, 4-wise families degree-3.
// Everything is deterministic in (seed, input): equal master seeds imply
// equal hash functions, which is what sketch merging relies on.

namespace gsum {

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t(1) << 61) - 1;

// Fixed 64-bit mixer (splitmix64). Used for all seed derivation so that a
// master seed plus a tag always yields the same child seed.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    return mix64(master ^ mix64(tag + 0x517cc1b727220a95ULL));
}

// Small deterministic RNG for generators (splitmix64 stream).
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform in [0, bound). Rejection-free multiply-shift; bias is
    // negligible for bound << 2^64 and keeps the byte stream portable.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(below(std::uint64_t(hi - lo + 1)));
    }

    double unit() {  // [0,1)
        return double(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(z) & kMersenne61;
    std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
    std::uint64_t s = lo + hi;
    if (s >= kMersenne61) s -= kMersenne61;
    return s;
}

inline std::uint64_t addmod61(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s >= kMersenne61) s -= kMersenne61;
    return s;
}

enum class HashKind { pairwise, fourwise };

// Polynomial hash with degree (k-1) coefficients drawn from the seed.
template <int K>
class PolyHash {
    static_assert(K == 2 || K == 4, "pairwise or fourwise");

public:
    PolyHash() : PolyHash(0) {}

    explicit PolyHash(std::uint64_t seed) : seed_(seed) {
        SplitMix sm(mix64(seed ^ 0xd6e8feb86659fd93ULL));
        for (int i = 0; i < K; ++i) {
            coef_[i] = sm.next() % kMersenne61;
        }
        if (coef_[K - 1] == 0) coef_[K - 1] = 1;
    }

    std::uint64_t operator()(std::uint64_t x) const {
        std::uint64_t v = x % kMersenne61;
        std::uint64_t acc = coef_[K - 1];
        for (int i = K - 2; i >= 0; --i) {
            acc = addmod61(mulmod61(acc, v), coef_[i]);
        }
        return acc;
    }

    int sign(std::uint64_t x) const { return (operator()(x) & 1) ? 1 : -1; }
    bool bit(std::uint64_t x) const { return (operator()(x) & 1) != 0; }
    std::uint64_t bucket(std::uint64_t x, std::uint64_t range) const {
        return operator()(x) % range;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, K> coef_;
};

using PairwiseHash = PolyHash<2>;
using FourwiseHash = PolyHash<4>;

}  // namespace gsum
