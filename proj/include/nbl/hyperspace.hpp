#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbl/reference_system.hpp"
#include "nbl/stream_expr.hpp"
#include "nbl/window.hpp"

namespace nbl {

/// A classical bit string carried by one product string. Element 0 is noise
/// bit 1; the text form lists elements in that order ("0110").
class BitString {
public:
    BitString() = default;
    /// Throws Error for elements other than 0 and 1.
    explicit BitString(std::vector<std::uint8_t> bits);
    /// Throws Error for characters other than '0' and '1'.
    static BitString parse(std::string_view text);
    /// Least-significant bit of v becomes element 0.
    static BitString from_integer(std::uint64_t v, std::size_t length);

    std::size_t size() const noexcept { return bits_.size(); }
    unsigned operator[](std::size_t i) const noexcept { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    /// Throws Error for strings longer than 64 bits.
    std::uint64_t to_integer() const;
    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

inline constexpr double kDefaultThreshold = 0.5;
inline constexpr std::uint64_t kDefaultMaxBits = 14;

/// max(10^4, ceil(400 (m - 1))): keeps five total cross-term deviations
/// within 0.25 of the expectation for an m-member superposition.
std::uint64_t default_window_length(std::uint64_t members);

/// Product of reference_noise(i, s[i]); throws Error unless |s| == N_eff.
Product encode_string(const ReferenceSystem& sys, const BitString& s);
/// Throws Error unless v < 2^N_eff.
Product encode_integer(const ReferenceSystem& sys, std::uint64_t v);

/// The bit string whose product string is p, if p is one (exactly one term
/// per noise bit, all on the ladder).
std::optional<BitString> decode_product(const ReferenceSystem& sys, const Product& p);
/// Throws Error if p is not a product string or N_eff > 64.
std::uint64_t decode_integer(const ReferenceSystem& sys, const Product& p);

/// Superposition of the product strings; throws Error on duplicates.
StreamExpr encode_set(const ReferenceSystem& sys, const std::vector<BitString>& strings);

struct DetectionResult {
    double rho = 0.0;
    double threshold = kDefaultThreshold;
    bool present = false;
    /// sqrt(m - 1) / sqrt(L) for an m-member signal.
    double sigma_bound = 0.0;
};

/// Member count of the signal behind a window (1 for a ±1 window).
std::uint64_t signal_members(const Window& w) noexcept;

DetectionResult detect_string(const Window& signal, const ReferenceSystem& sys, const BitString& s,
                              double threshold = kDefaultThreshold);

struct CandidateCorrelation {
    BitString candidate;
    CorrelationEstimate estimate;
};

struct DecodeResult {
    double threshold = kDefaultThreshold;
    std::uint64_t window_len = 0;
    /// Sorted ascending.
    std::vector<BitString> detected;
    /// Every candidate, indexed by its integer value.
    std::vector<CandidateCorrelation> correlations;
};

/// Correlates the signal against all 2^N_eff product strings and keeps those
/// above threshold. Throws Error("capacity exceeded - raise max_n
/// explicitly") when N_eff > max_n.
DecodeResult decode_superposition(const Window& signal, const ReferenceSystem& sys,
                                  double threshold = kDefaultThreshold,
                                  std::uint64_t max_n = kDefaultMaxBits);

/// m distinct uniformly drawn strings of length N_eff, sorted. Throws Error
/// when m exceeds 2^N_eff.
std::vector<BitString> random_string_set(const ReferenceSystem& sys, std::uint64_t m, CounterRng& rng);

}  // namespace nbl
