#include "nbl/window.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace nbl {

namespace {

constexpr std::uint64_t word_count(std::uint64_t bits) { return (bits + 63) / 64; }

void require_matching(SampleIndex sa, std::uint64_t la, SampleIndex sb, std::uint64_t lb) {
    if (sa != sb || la != lb) throw Error("correlate: windows differ in start or length");
}

void require_range(SampleIndex start, std::uint64_t length, std::uint64_t max_offset) {
    if (length == 0) throw Error("materialize: window length must be at least 1");
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (start > kMax - (length - 1) || start + (length - 1) > kMax - max_offset) {
        throw Error("materialize: sample index overflow");
    }
}

// Bits [first, first + count) of the raw source, packed from bit 0.
std::vector<std::uint64_t> source_bits(const NoiseSource& source, SampleIndex first,
                                       std::uint64_t count) {
    std::vector<std::uint64_t> words(word_count(count) + 1, 0);
    for (std::uint64_t j = 0; j < count; ++j) {
        words[j >> 6] |= source.bit(first + j) << (j & 63);
    }
    return words;
}

std::uint64_t extract_word(const std::vector<std::uint64_t>& bits, std::uint64_t bit_offset) {
    const std::uint64_t w = bit_offset >> 6;
    const unsigned r = bit_offset & 63;
    if (r == 0) return bits[w];
    return (bits[w] >> r) | (bits[w + 1] << (64 - r));
}

}  // namespace

BitWindow::BitWindow(SampleIndex start, std::uint64_t length)
    : start_(start), length_(length), words_(word_count(length), 0) {}

BitWindow::BitWindow(SampleIndex start, std::uint64_t length, std::vector<std::uint64_t> words)
    : start_(start), length_(length), words_(std::move(words)) {
    if (words_.size() != word_count(length)) throw Error("BitWindow: word count does not match length");
    if (!words_.empty()) words_.back() &= tail_mask();
}

std::uint64_t BitWindow::tail_mask() const noexcept {
    const unsigned r = length_ & 63;
    return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

void BitWindow::set(std::uint64_t j, bool positive) noexcept {
    const std::uint64_t m = std::uint64_t{1} << (j & 63);
    if (positive) {
        words_[j >> 6] |= m;
    } else {
        words_[j >> 6] &= ~m;
    }
}

LevelWindow::LevelWindow(SampleIndex start, std::vector<std::int32_t> levels, std::uint32_t bound)
    : start_(start), bound_(bound), levels_(std::move(levels)) {
    const std::uint64_t span = 2ULL * bound;
    const int plane_count = std::bit_width(span);
    planes_.assign(plane_count, std::vector<std::uint64_t>(word_count(levels_.size()), 0));
    for (std::uint64_t j = 0; j < levels_.size(); ++j) {
        const std::int32_t v = levels_[j];
        if (static_cast<std::uint32_t>(std::abs(v)) > bound_) throw Error("LevelWindow: level exceeds bound");
        level_sum_ += v;
        const auto q = static_cast<std::uint64_t>(v + static_cast<std::int64_t>(bound_));
        for (int k = 0; k < plane_count; ++k) {
            planes_[k][j >> 6] |= ((q >> k) & 1U) << (j & 63);
        }
    }
}

SampleIndex window_start(const Window& w) noexcept {
    return std::visit([](const auto& x) { return x.start(); }, w);
}

std::uint64_t window_size(const Window& w) noexcept {
    return std::visit([](const auto& x) { return x.size(); }, w);
}

int window_value(const Window& w, std::uint64_t j) noexcept {
    return std::visit([j](const auto& x) { return x[j]; }, w);
}

BitWindow materialize(const NoiseSource& source, const Product& p, SampleIndex start,
                      std::uint64_t length) {
    require_range(start, length, p.max_offset());
    const auto& terms = p.terms();
    const std::uint64_t words = word_count(length);
    // Accumulates the parity of -1 factors per sample.
    std::vector<std::uint64_t> negative(words, 0);

    const std::uint64_t spread = terms.empty() ? 0 : terms.back() - terms.front();
    if (!terms.empty() && spread <= length) {
        // One pass over the covering range of the source, then shifted extracts.
        const auto base = source_bits(source, start + terms.front(), length + spread);
        for (auto t : terms) {
            const std::uint64_t off = t - terms.front();
            for (std::uint64_t w = 0; w < words; ++w) negative[w] ^= ~extract_word(base, off + 64 * w);
        }
    } else {
        for (auto t : terms) {
            const auto bits = source_bits(source, start + t, length);
            for (std::uint64_t w = 0; w < words; ++w) negative[w] ^= ~bits[w];
        }
    }
    for (auto& w : negative) w = ~w;
    return BitWindow(start, length, std::move(negative));
}

LevelWindow materialize(const NoiseSource& source, const Superposition& s, SampleIndex start,
                        std::uint64_t length) {
    require_range(start, length, s.max_offset());
    std::vector<std::int32_t> levels(length, 0);
    for (const auto& member : s.members()) {
        const BitWindow w = materialize(source, member, start, length);
        for (std::uint64_t j = 0; j < length; ++j) levels[j] += w[j];
    }
    return LevelWindow(start, std::move(levels), static_cast<std::uint32_t>(s.size()));
}

Window materialize(const NoiseSource& source, const StreamExpr& e, SampleIndex start,
                   std::uint64_t length) {
    if (e.is_product()) return materialize(source, e.as_product(), start, length);
    return materialize(source, e.as_superposition(), start, length);
}

BitWindow multiply(const BitWindow& a, const BitWindow& b) {
    require_matching(a.start(), a.size(), b.start(), b.size());
    std::vector<std::uint64_t> words(a.words().size());
    for (std::size_t w = 0; w < words.size(); ++w) words[w] = ~(a.words()[w] ^ b.words()[w]);
    return BitWindow(a.start(), a.size(), std::move(words));
}

BitWindow negate(const BitWindow& x) {
    std::vector<std::uint64_t> words(x.words().begin(), x.words().end());
    for (auto& w : words) w = ~w;
    return BitWindow(x.start(), x.size(), std::move(words));
}

CorrelationEstimate make_estimate(std::int64_t sum, std::uint64_t length) {
    const double l = static_cast<double>(length);
    return {static_cast<double>(sum) / l, length, 1.0 / std::sqrt(l), sum};
}

CorrelationEstimate correlate(const BitWindow& a, const BitWindow& b) {
    require_matching(a.start(), a.size(), b.start(), b.size());
    std::int64_t disagree = 0;
    const auto wa = a.words();
    const auto wb = b.words();
    for (std::size_t w = 0; w < wa.size(); ++w) disagree += std::popcount(wa[w] ^ wb[w]);
    return make_estimate(static_cast<std::int64_t>(a.size()) - 2 * disagree, a.size());
}

CorrelationEstimate correlate(const LevelWindow& a, const BitWindow& b) {
    require_matching(a.start(), a.size(), b.start(), b.size());
    const auto wb = b.words();
    // sum_j v_j c_j with c_j = 2 b_j - 1 and v_j = q_j - bound, q_j = sum_k 2^k plane_k.
    std::int64_t positives = 0;
    for (auto w : wb) positives += std::popcount(w);
    std::int64_t weighted = 0;
    for (std::size_t k = 0; k < a.planes().size(); ++k) {
        const auto& plane = a.planes()[k];
        std::int64_t c = 0;
        for (std::size_t w = 0; w < wb.size(); ++w) c += std::popcount(plane[w] & wb[w]);
        weighted += c << k;
    }
    const std::int64_t level_dot_bits = weighted - static_cast<std::int64_t>(a.bound()) * positives;
    return make_estimate(2 * level_dot_bits - a.level_sum(), a.size());
}

CorrelationEstimate correlate(const BitWindow& a, const LevelWindow& b) { return correlate(b, a); }

CorrelationEstimate correlate(const LevelWindow& a, const LevelWindow& b) {
    require_matching(a.start(), a.size(), b.start(), b.size());
    std::int64_t sum = 0;
    for (std::uint64_t j = 0; j < a.size(); ++j) sum += static_cast<std::int64_t>(a[j]) * b[j];
    return make_estimate(sum, a.size());
}

CorrelationEstimate correlate(const Window& a, const Window& b) {
    return std::visit([](const auto& x, const auto& y) { return correlate(x, y); }, a, b);
}

}  // namespace nbl
