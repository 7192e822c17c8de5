#include "nbl/hyperspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace nbl {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) throw Error("bit string elements must be 0 or 1");
    }
}

BitString BitString::parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw Error("bit string text must contain only '0' and '1'");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BitString(std::move(bits));
}

BitString BitString::from_integer(std::uint64_t v, std::size_t length) {
    std::vector<std::uint8_t> bits(length, 0);
    for (std::size_t i = 0; i < length && i < 64; ++i) bits[i] = (v >> i) & 1U;
    return BitString(std::move(bits));
}

std::uint64_t BitString::to_integer() const {
    if (bits_.size() > 64) throw Error("bit string too long for a 64-bit integer");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) v |= std::uint64_t{bits_[i]} << i;
    return v;
}

std::string BitString::to_string() const {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = static_cast<char>('0' + bits_[i]);
    return out;
}

std::uint64_t default_window_length(std::uint64_t members) {
    const std::uint64_t policy = members == 0 ? 0 : 400 * (members - 1);
    return std::max<std::uint64_t>(10000, policy);
}

Product encode_string(const ReferenceSystem& sys, const BitString& s) {
    if (s.size() != sys.effective_bits()) throw Error("bit string length does not match N_eff");
    std::vector<std::uint64_t> offsets;
    offsets.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) offsets.push_back(sys.offset({i + 1, s[i]}));
    return Product(std::move(offsets));
}

Product encode_integer(const ReferenceSystem& sys, std::uint64_t v) {
    const auto n = sys.effective_bits();
    if (n < 64 && v >> n != 0) throw Error("integer out of range for N_eff noise bits");
    return encode_string(sys, BitString::from_integer(v, n));
}

std::optional<BitString> decode_product(const ReferenceSystem& sys, const Product& p) {
    const auto n = sys.effective_bits();
    if (p.terms().size() != n) return std::nullopt;
    std::vector<std::uint8_t> bits(n, 0);
    std::vector<bool> seen(n, false);
    for (auto t : p.terms()) {
        if (t > sys.max_offset()) return std::nullopt;
        const auto id = sys.reference_at(t);
        if (seen[id.bit - 1]) return std::nullopt;
        seen[id.bit - 1] = true;
        bits[id.bit - 1] = static_cast<std::uint8_t>(id.value);
    }
    // n distinct bits among n terms covers every noise bit.
    return BitString(std::move(bits));
}

std::uint64_t decode_integer(const ReferenceSystem& sys, const Product& p) {
    const auto s = decode_product(sys, p);
    if (!s) throw Error("product is not a product string of this reference system");
    return s->to_integer();
}

StreamExpr encode_set(const ReferenceSystem& sys, const std::vector<BitString>& strings) {
    std::vector<Product> members;
    members.reserve(strings.size());
    for (const auto& s : strings) members.push_back(encode_string(sys, s));
    return superpose(std::move(members));
}

std::uint64_t signal_members(const Window& w) noexcept {
    if (const auto* level = std::get_if<LevelWindow>(&w)) return level->bound();
    return 1;
}

namespace {

DetectionResult make_detection(const CorrelationEstimate& est, double threshold, std::uint64_t members) {
    DetectionResult d;
    d.rho = est.rho;
    d.threshold = threshold;
    d.present = est.rho > threshold;
    const double cross_terms = members > 0 ? static_cast<double>(members - 1) : 0.0;
    d.sigma_bound = std::sqrt(cross_terms) / std::sqrt(static_cast<double>(est.window_len));
    return d;
}

}  // namespace

DetectionResult detect_string(const Window& signal, const ReferenceSystem& sys, const BitString& s,
                              double threshold) {
    const BitWindow candidate =
        materialize(sys.source(), encode_string(sys, s), window_start(signal), window_size(signal));
    return make_detection(correlate(signal, Window{candidate}), threshold, signal_members(signal));
}

DecodeResult decode_superposition(const Window& signal, const ReferenceSystem& sys, double threshold,
                                  std::uint64_t max_n) {
    const std::uint64_t n = sys.effective_bits();
    if (n > max_n) throw Error("capacity exceeded - raise max_n explicitly");
    if (n >= 63) throw Error("candidate sweep does not fit in 64-bit enumeration");

    const SampleIndex start = window_start(signal);
    const std::uint64_t length = window_size(signal);
    const auto refs = reference_windows(sys, start, length);
    const std::size_t words = refs.front().words().size();

    // A product string's -1 mask is the XOR of its factors' -1 masks. Walking
    // candidates in Gray-code order changes one noise bit per step, which
    // flips a single factor: XOR in (mask_{i,0} ^ mask_{i,1}).
    std::vector<std::vector<std::uint64_t>> flip(n, std::vector<std::uint64_t>(words));
    std::vector<std::uint64_t> negative(words, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto zero = refs[2 * i].words();
        const auto one = refs[2 * i + 1].words();
        for (std::size_t w = 0; w < words; ++w) {
            flip[i][w] = zero[w] ^ one[w];
            negative[w] ^= ~zero[w];
        }
    }

    DecodeResult result;
    result.threshold = threshold;
    result.window_len = length;
    const std::uint64_t count = std::uint64_t{1} << n;
    result.correlations.resize(count);
    std::vector<std::uint64_t> positive(words);
    for (std::uint64_t step = 0; step < count; ++step) {
        if (step > 0) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(step));
            for (std::size_t w = 0; w < words; ++w) negative[w] ^= flip[bit][w];
        }
        const std::uint64_t value = step ^ (step >> 1);
        for (std::size_t w = 0; w < words; ++w) positive[w] = ~negative[w];
        const BitWindow candidate(start, length, positive);
        auto& slot = result.correlations[value];
        slot.candidate = BitString::from_integer(value, n);
        slot.estimate = std::visit([&](const auto& s) { return correlate(s, candidate); }, signal);
    }
    for (const auto& c : result.correlations) {
        if (c.estimate.rho > threshold) result.detected.push_back(c.candidate);
    }
    std::sort(result.detected.begin(), result.detected.end());
    return result;
}

std::vector<BitString> random_string_set(const ReferenceSystem& sys, std::uint64_t m, CounterRng& rng) {
    const auto n = sys.effective_bits();
    if (n < 64 && m > (std::uint64_t{1} << n)) throw Error("more strings requested than the hyperspace holds");
    std::set<BitString> chosen;
    while (chosen.size() < m) {
        std::vector<std::uint8_t> bits(n);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next() >> 63);
        chosen.insert(BitString(std::move(bits)));
    }
    return {chosen.begin(), chosen.end()};
}

}  // namespace nbl
