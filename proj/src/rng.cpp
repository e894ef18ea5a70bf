#include "relex/rng.hpp"

namespace relex {

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, SplitMix64& rng) {
    if (k > n) k = n;
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

}  // namespace relex
