#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbl/hyperspace.hpp"
#include "nbl/reference_system.hpp"

namespace nbl {

// --- Holographic re-interpretation -------------------------------------------

/// What a whole-signal shift turns one product string into.
enum class ImageStatus {
    InRange,         ///< another product string of the same system
    LadderOverflow,  ///< a term shifted past offset 2 N_eff - 1 (reported first)
    Collision,       ///< all terms on the ladder, but two share a noise bit
};

const char* to_string(ImageStatus status) noexcept;

struct HolographicImage {
    ImageStatus status = ImageStatus::InRange;
    std::optional<BitString> string;  ///< set iff status == InRange
};

/// Re-reads the product string of s after shifting it by d periods: every
/// term offset a becomes a + d. For d = 1, value 0 of bit i becomes value 1 of
/// bit i, and value 1 of bit i becomes value 0 of bit i + 1.
///
/// This is the direct d-period image, not d repetitions of the one-period
/// map: an intermediate image can collide while the final one is valid.
HolographicImage holographic_map(const BitString& s, ShiftOffset d = {1});

struct HolographicMember {
    BitString original;
    HolographicImage image;
};

struct HolographicReport {
    ShiftOffset shift;
    std::uint64_t window_len = 0;
    std::vector<HolographicMember> members;
    /// Sorted in-range images: what decoding should return.
    std::vector<BitString> expected;
    DecodeResult decoded;
    bool matches = false;
};

/// Encodes S, shifts the whole signal by d, and decodes it against the
/// unshifted references.
HolographicReport holographic_demo(const ReferenceSystem& sys, const std::vector<BitString>& strings,
                                   ShiftOffset d, std::uint64_t length,
                                   double threshold = kDefaultThreshold,
                                   std::uint64_t max_n = kDefaultMaxBits);

// --- Non-commuting gate sequence ---------------------------------------------

struct NoncommuteReport {
    ReferenceId reference;
    ShiftOffset shift;
    Product input;
    /// Multiply by the reference after shifting (A after B).
    Product multiply_after_shift;
    /// Shift after multiplying by the reference (B after A).
    Product shift_after_multiply;
    bool canonical_equal = false;
    CorrelationEstimate cross;
    CorrelationEstimate self_multiply_after_shift;
    CorrelationEstimate self_shift_after_multiply;
};

/// A = multiply by reference_noise(id), B = shift by d. Throws Error for d == 0.
NoncommuteReport noncommute_demo(const ReferenceSystem& sys, const Product& x, ReferenceId id,
                                 ShiftOffset d, std::uint64_t length);

// --- Fixed random time shifts ------------------------------------------------

/// Per-reference shift r(i, b), fixed for the lifetime of an experiment.
class ShiftAssignment {
public:
    /// offsets[k] belongs to the k-th reference in ladder order.
    ShiftAssignment(const ReferenceSystem& sys, std::vector<std::uint64_t> offsets);

    /// Each r drawn uniformly from [1, range]. Default range is 2 N_eff.
    static ShiftAssignment random(const ReferenceSystem& sys, std::uint64_t seed,
                                  std::optional<std::uint64_t> range = std::nullopt);
    /// All-distinct values drawn without replacement from [1, range]; needs
    /// range >= 2 N_eff.
    static ShiftAssignment random_distinct(const ReferenceSystem& sys, std::uint64_t seed,
                                           std::optional<std::uint64_t> range = std::nullopt);

    ShiftOffset at(ReferenceId id) const;
    const std::vector<std::uint64_t>& offsets() const noexcept { return offsets_; }
    std::uint64_t range() const noexcept { return range_; }

private:
    ShiftAssignment(std::uint64_t n_eff, std::vector<std::uint64_t> offsets, std::uint64_t range);

    std::uint64_t n_eff_;
    std::vector<std::uint64_t> offsets_;
    std::uint64_t range_;
};

struct RandomShiftReport {
    ReferenceId reference;
    ShiftOffset assigned;
    /// Observer without r compares against the plain reference.
    CorrelationEstimate uncompensated;
    /// Holder of r shifts the reference forward by r first.
    CorrelationEstimate compensated;
    bool compensated_equal = false;
    /// One shift applied to every reference; restores those with r == shift.
    ShiftOffset global_shift;
    std::vector<ReferenceId> restored;
};

/// global_shift defaults to r(id).
RandomShiftReport random_shift_demo(const ReferenceSystem& sys, const ShiftAssignment& assignment,
                                    ReferenceId id, std::uint64_t length,
                                    std::optional<ShiftOffset> global_shift = std::nullopt);

/// References whose shifted copy under `global_shift` equals their randomly
/// shifted copy (exact structural check).
std::vector<ReferenceId> restored_references(const ReferenceSystem& sys, const ShiftAssignment& assignment,
                                             ShiftOffset global_shift);

}  // namespace nbl
