#ifndef POPRANK_SRC_RANDOM_HPP_
#define POPRANK_SRC_RANDOM_HPP_

#include <cstdint>
#include <random>

// Platform-independent draws on top of mt19937_64; the standard
// distributions are implementation-defined and would break reproducibility
// across standard libraries.
namespace poprank::detail {

inline double uniform_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), n > 0, by rejection.
inline std::uint64_t uniform_index(std::mt19937_64 &rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace poprank::detail

#endif // POPRANK_SRC_RANDOM_HPP_
