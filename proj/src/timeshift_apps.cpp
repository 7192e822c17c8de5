#include "nbl/timeshift_apps.hpp"

#include <algorithm>
#include <numeric>

namespace nbl {

const char* to_string(ImageStatus status) noexcept {
    switch (status) {
        case ImageStatus::InRange: return "in_range";
        case ImageStatus::LadderOverflow: return "ladder_overflow";
        case ImageStatus::Collision: return "collision";
    }
    return "unknown";
}

HolographicImage holographic_map(const BitString& s, ShiftOffset d) {
    const std::uint64_t n = s.size();
    if (n == 0) throw Error("holographic map needs a non-empty bit string");
    const std::uint64_t top = 2 * n - 1;
    std::vector<std::uint8_t> bits(n, 0);
    std::vector<bool> seen(n, false);
    bool collision = false;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t offset = 2 * i + s[i];
        if (d.periods > top - offset) return {ImageStatus::LadderOverflow, std::nullopt};
        const std::uint64_t moved = offset + d.periods;
        const std::uint64_t bit = moved / 2;
        if (seen[bit]) collision = true;
        seen[bit] = true;
        bits[bit] = static_cast<std::uint8_t>(moved % 2);
    }
    if (collision) return {ImageStatus::Collision, std::nullopt};
    return {ImageStatus::InRange, BitString(std::move(bits))};
}

HolographicReport holographic_demo(const ReferenceSystem& sys, const std::vector<BitString>& strings,
                                   ShiftOffset d, std::uint64_t length, double threshold,
                                   std::uint64_t max_n) {
    HolographicReport report;
    report.shift = d;
    report.window_len = length;
    for (const auto& s : strings) {
        auto image = holographic_map(s, d);
        if (image.string) report.expected.push_back(*image.string);
        report.members.push_back({s, std::move(image)});
    }
    std::sort(report.expected.begin(), report.expected.end());

    const StreamExpr shifted = shift(encode_set(sys, strings), d);
    const Window window = materialize(sys.source(), shifted, 0, length);
    report.decoded = decode_superposition(window, sys, threshold, max_n);
    report.matches = report.decoded.detected == report.expected;
    return report;
}

NoncommuteReport noncommute_demo(const ReferenceSystem& sys, const Product& x, ReferenceId id,
                                 ShiftOffset d, std::uint64_t length) {
    if (d.periods == 0) throw Error("non-commutation needs a shift of at least one period");
    const Product ref = sys.reference_noise(id);
    NoncommuteReport r;
    r.reference = id;
    r.shift = d;
    r.input = x;
    r.multiply_after_shift = multiply(ref, shift(x, d));
    r.shift_after_multiply = shift(multiply(ref, x), d);
    r.canonical_equal = r.multiply_after_shift == r.shift_after_multiply;
    const auto ab = materialize(sys.source(), r.multiply_after_shift, 0, length);
    const auto ba = materialize(sys.source(), r.shift_after_multiply, 0, length);
    r.cross = correlate(ab, ba);
    r.self_multiply_after_shift = correlate(ab, ab);
    r.self_shift_after_multiply = correlate(ba, ba);
    return r;
}

ShiftAssignment::ShiftAssignment(std::uint64_t n_eff, std::vector<std::uint64_t> offsets,
                                 std::uint64_t range)
    : n_eff_(n_eff), offsets_(std::move(offsets)), range_(range) {
    if (offsets_.size() != 2 * n_eff_) throw Error("shift assignment needs one offset per reference");
}

ShiftAssignment::ShiftAssignment(const ReferenceSystem& sys, std::vector<std::uint64_t> offsets)
    : ShiftAssignment(sys.effective_bits(), offsets,
                      offsets.empty() ? 0 : *std::max_element(offsets.begin(), offsets.end())) {}

ShiftAssignment ShiftAssignment::random(const ReferenceSystem& sys, std::uint64_t seed,
                                        std::optional<std::uint64_t> range) {
    const std::uint64_t r = range.value_or(sys.reference_count());
    if (r == 0) throw Error("shift range must be at least 1");
    CounterRng rng(seed, 0x5348494654ULL);
    std::vector<std::uint64_t> offsets(sys.reference_count());
    for (auto& o : offsets) o = 1 + rng.below(r);
    return ShiftAssignment(sys.effective_bits(), std::move(offsets), r);
}

ShiftAssignment ShiftAssignment::random_distinct(const ReferenceSystem& sys, std::uint64_t seed,
                                                 std::optional<std::uint64_t> range) {
    const std::uint64_t r = range.value_or(sys.reference_count());
    if (r < sys.reference_count()) throw Error("distinct shifts need a range of at least 2 N_eff");
    CounterRng rng(seed, 0x5348494654ULL);
    std::vector<std::uint64_t> pool(r);
    std::iota(pool.begin(), pool.end(), std::uint64_t{1});
    // Partial Fisher-Yates: the first 2 N_eff slots are the draw.
    const std::size_t take = sys.reference_count();
    for (std::size_t k = 0; k < take; ++k) {
        const std::size_t pick = k + rng.below(pool.size() - k);
        std::swap(pool[k], pool[pick]);
    }
    pool.resize(take);
    return ShiftAssignment(sys.effective_bits(), std::move(pool), r);
}

ShiftOffset ShiftAssignment::at(ReferenceId id) const {
    if (id.bit < 1 || id.bit > n_eff_ || id.value > 1) throw Error("reference out of range");
    return {offsets_[2 * (id.bit - 1) + id.value]};
}

std::vector<ReferenceId> restored_references(const ReferenceSystem& sys, const ShiftAssignment& assignment,
                                             ShiftOffset global_shift) {
    std::vector<ReferenceId> out;
    for (const auto& id : sys.references()) {
        const Product ref = sys.reference_noise(id);
        if (shift(ref, global_shift) == shift(ref, assignment.at(id))) out.push_back(id);
    }
    return out;
}

RandomShiftReport random_shift_demo(const ReferenceSystem& sys, const ShiftAssignment& assignment,
                                    ReferenceId id, std::uint64_t length,
                                    std::optional<ShiftOffset> global_shift) {
    RandomShiftReport r;
    r.reference = id;
    r.assigned = assignment.at(id);
    const Product ref = sys.reference_noise(id);
    const Product shifted = shift(ref, r.assigned);
    const Product compensated = shift(ref, r.assigned);

    const auto w = materialize(sys.source(), shifted, 0, length);
    r.uncompensated = correlate(w, materialize(sys.source(), ref, 0, length));
    r.compensated = correlate(w, materialize(sys.source(), compensated, 0, length));
    r.compensated_equal = compensated == shifted;
    r.global_shift = global_shift.value_or(r.assigned);
    r.restored = restored_references(sys, assignment, r.global_shift);
    return r;
}

}  // namespace nbl
