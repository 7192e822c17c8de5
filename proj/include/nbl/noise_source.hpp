#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace nbl {

/// Raised for invalid arguments and absurd experiment configurations.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using SampleIndex = std::uint64_t;

/// rrmxmx finalizer (Evensen). Full avalanche on sequential inputs.
///
/// These constants define the bit stream of every NoiseSource; changing them
/// changes every window the library produces.
constexpr std::uint64_t mix64(std::uint64_t v) noexcept {
    v ^= std::rotr(v, 49) ^ std::rotr(v, 24);
    v *= 0x9fb21c651e98df25ULL;
    v ^= v >> 28;
    v *= 0x9fb21c651e98df25ULL;
    return v ^ (v >> 28);
}

/// Rotation applied to the sample index before it is combined with the seed.
inline constexpr int kIndexRotation = 32;

/// Hash key for sample n of the stream identified by seed.
constexpr std::uint64_t sample_key(std::uint64_t seed, SampleIndex n) noexcept {
    return mix64(seed ^ std::rotl(n, kIndexRotation));
}

/// Sign of sample n: +1 when the top bit of the key is set, otherwise -1.
constexpr int source_sample(std::uint64_t seed, SampleIndex n) noexcept {
    return (sample_key(seed, n) >> 63) != 0 ? 1 : -1;
}

/// Same as source_sample, but as a packed bit (1 <-> +1).
constexpr std::uint64_t source_bit(std::uint64_t seed, SampleIndex n) noexcept {
    return sample_key(seed, n) >> 63;
}

/// A binary random telegraph wave with one sample per period.
///
/// The stream is index-addressable: u(n) is a pure function of (seed, n), so
/// any delay is a constant index offset and costs nothing to realize.
class NoiseSource {
public:
    constexpr NoiseSource() noexcept = default;
    explicit constexpr NoiseSource(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t seed() const noexcept { return seed_; }
    constexpr int operator()(SampleIndex n) const noexcept { return source_sample(seed_, n); }
    constexpr std::uint64_t bit(SampleIndex n) const noexcept { return source_bit(seed_, n); }

    friend constexpr bool operator==(const NoiseSource&, const NoiseSource&) noexcept = default;

private:
    std::uint64_t seed_ = 0;
};

/// Counter-based generator for experiment bookkeeping (string sets,
/// random shift assignments). Independent of <random> so that draws are
/// identical on every standard library.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(mix64(seed ^ mix64(stream + 0x9e3779b97f4a7c15ULL))) {}

    constexpr std::uint64_t next() noexcept { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform value in [0, bound). bound must be non-zero.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace nbl
