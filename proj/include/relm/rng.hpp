#pragma once

#include <cstdint>
#include <random>

namespace relm {

/// splitmix64 mixing step. Bit-stable everywhere, used to turn (seed, stream)
/// pairs into well-separated generator seeds.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Independent child seed for stream `stream` of a master seed. Identical
/// inputs always give the identical child.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

/// Seeded uniform generator. std::mt19937_64 gives a standardized bit
/// sequence; the float mapping below is ours, so draws are reproducible
/// across platforms (the std distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform on [0, 1): top 53 bits of one draw.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Modulo bias is negligible for the small
    /// ranges used here (category counts, row indices).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::mt19937_64 gen_;
};

}  // namespace relm
