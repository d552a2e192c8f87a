#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace gcr {

/// Seeded generator with platform-independent draws. The standard
/// distributions are implementation-defined, so the mapping from engine
/// output to values is done here.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, n); n must be positive.
    auto index(std::size_t n) -> std::size_t
    {
        auto const bound = static_cast<std::uint64_t>(n);
        auto const limit = ~std::uint64_t{ 0 } - (~std::uint64_t{ 0 } % bound);
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return static_cast<std::size_t>(x % bound);
    }

    /// Uniform in [0, 1).
    auto uniform() -> double { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    auto bernoulli(double p) -> bool { return uniform() < p; }

    /// Independent stream derived from this one.
    auto split() -> RandomSource { return RandomSource(engine_() ^ 0xd1b54a32d192ed03ULL); }

private:
    std::mt19937_64 engine_;
};

}  // namespace gcr
