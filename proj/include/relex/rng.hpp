// Self-contained deterministic RNG. The learner's sampling must produce the
// same bytes on every platform, so we do not rely on <random> distributions
// (their algorithms are implementation-defined).

#pragma once

#include <cstdint>
#include <vector>

namespace relex {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n) via rejection sampling. n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~0ULL - (~0ULL % n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Derives an independent stream (fold runners, per-seed searches).
    SplitMix64 fork(std::uint64_t salt) { return SplitMix64(next() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

private:
    std::uint64_t state_;
};

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& xs, SplitMix64& rng) {
    for (std::size_t i = xs.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(xs[i - 1], xs[j]);
    }
}

// Sample k distinct indices from [0, n), in draw order, without replacement.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, SplitMix64& rng);

}  // namespace relex
