#include "oa/rng.hpp"

#include <numeric>

namespace oa {

std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n,
                                        std::uint64_t seed) {
    std::vector<std::size_t> pool(size);
    std::iota(pool.begin(), pool.end(), 0);
    Xoshiro256 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(size - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(n);
    return pool;
}

}  // namespace oa
