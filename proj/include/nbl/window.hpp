#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "nbl/noise_source.hpp"
#include "nbl/stream_expr.hpp"

namespace nbl {

/// Finite run of a ±1 stream, one bit per sample (bit 1 <-> +1).
///
/// Sample j lives in bit (j % 64) of word (j / 64). Padding bits past the
/// end of the window are always zero.
class BitWindow {
public:
    BitWindow(SampleIndex start, std::uint64_t length);
    /// Takes ownership of packed words; padding bits are cleared.
    BitWindow(SampleIndex start, std::uint64_t length, std::vector<std::uint64_t> words);

    SampleIndex start() const noexcept { return start_; }
    std::uint64_t size() const noexcept { return length_; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::uint64_t tail_mask() const noexcept;

    bool bit(std::uint64_t j) const noexcept { return (words_[j >> 6] >> (j & 63)) & 1U; }
    int operator[](std::uint64_t j) const noexcept { return bit(j) ? 1 : -1; }
    void set(std::uint64_t j, bool positive) noexcept;

    friend bool operator==(const BitWindow&, const BitWindow&) = default;

private:
    SampleIndex start_;
    std::uint64_t length_;
    std::vector<std::uint64_t> words_;
};

/// Finite run of a superposition, one signed level per sample.
///
/// Alongside the levels the window keeps an offset-binary bit-sliced copy
/// (level + bound split into bit planes) so that correlation against a
/// BitWindow runs on popcounts instead of a per-sample loop.
class LevelWindow {
public:
    /// |levels[j]| must not exceed bound.
    LevelWindow(SampleIndex start, std::vector<std::int32_t> levels, std::uint32_t bound);

    SampleIndex start() const noexcept { return start_; }
    std::uint64_t size() const noexcept { return levels_.size(); }
    std::span<const std::int32_t> levels() const noexcept { return levels_; }
    /// Member count of the materialized superposition.
    std::uint32_t bound() const noexcept { return bound_; }
    int operator[](std::uint64_t j) const noexcept { return levels_[j]; }

    const std::vector<std::vector<std::uint64_t>>& planes() const noexcept { return planes_; }
    std::int64_t level_sum() const noexcept { return level_sum_; }

    friend bool operator==(const LevelWindow& a, const LevelWindow& b) {
        return a.start_ == b.start_ && a.bound_ == b.bound_ && a.levels_ == b.levels_;
    }

private:
    SampleIndex start_;
    std::uint32_t bound_;
    std::vector<std::int32_t> levels_;
    std::vector<std::vector<std::uint64_t>> planes_;
    std::int64_t level_sum_ = 0;
};

using Window = std::variant<BitWindow, LevelWindow>;

SampleIndex window_start(const Window& w) noexcept;
std::uint64_t window_size(const Window& w) noexcept;
int window_value(const Window& w, std::uint64_t j) noexcept;

/// Time-average of the per-sample product over a window.
struct CorrelationEstimate {
    double rho = 0.0;
    std::uint64_t window_len = 0;
    /// Standard deviation of one ±1 cross term: 1/sqrt(L).
    double sigma = 0.0;
    /// Exact integer sum behind rho.
    std::int64_t sum = 0;
};

/// Throws Error when length == 0 or the sample range overflows.
BitWindow materialize(const NoiseSource& source, const Product& p, SampleIndex start,
                      std::uint64_t length);
LevelWindow materialize(const NoiseSource& source, const Superposition& s, SampleIndex start,
                        std::uint64_t length);
Window materialize(const NoiseSource& source, const StreamExpr& e, SampleIndex start,
                   std::uint64_t length);

/// Element-wise product of two ±1 windows (XNOR).
BitWindow multiply(const BitWindow& a, const BitWindow& b);
BitWindow negate(const BitWindow& w);

/// Throws Error if start or length differ.
CorrelationEstimate correlate(const BitWindow& a, const BitWindow& b);
CorrelationEstimate correlate(const LevelWindow& a, const BitWindow& b);
CorrelationEstimate correlate(const BitWindow& a, const LevelWindow& b);
CorrelationEstimate correlate(const LevelWindow& a, const LevelWindow& b);
CorrelationEstimate correlate(const Window& a, const Window& b);

/// Build an estimate from an exact product sum over length samples.
CorrelationEstimate make_estimate(std::int64_t sum, std::uint64_t length);

}  // namespace nbl
