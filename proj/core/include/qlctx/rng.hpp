#pragma once

// Seedable, splittable random streams.
//
// Every named stream gets its own std::mt19937_64 seeded from
// splitmix64(seed, hash(tag), chunk). The engine's output sequence is fixed by
// the C++ standard and the uniform/Bernoulli conversions below are written
// out by hand, so a given (seed, tag) yields the same draws on every
// conforming platform.

#include <cstdint>
#include <random>
#include <string_view>

namespace qlctx::rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// FNV-1a over the bytes of `tag`.
std::uint64_t hash_tag(std::string_view tag) noexcept;

/// Sub-seed for (seed, tag, chunk). Distinct tags give unrelated seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t chunk = 0) noexcept;

class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}
    Stream(std::uint64_t seed, std::string_view tag, std::uint64_t chunk = 0)
        : engine_(derive_seed(seed, tag, chunk)) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// True with probability p (p <= 0 never, p >= 1 always).
    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace qlctx::rng
