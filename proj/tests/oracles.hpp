#pragma once

// Slow, obviously-correct reference implementations. They only use the
// per-sample definitions (source_sample, set arithmetic on offsets) and never
// touch the packed or bit-sliced paths they are compared against.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nbl/noise_source.hpp"
#include "nbl/stream_expr.hpp"

namespace nbl::oracle {

/// u(n + t) multiplied over the raw offset multiset, no canonicalization.
inline int product_sample(std::uint64_t seed, const std::vector<std::uint64_t>& offsets, std::uint64_t n) {
    int v = 1;
    for (auto t : offsets) v *= source_sample(seed, n + t);
    return v;
}

inline std::vector<int> samples(std::uint64_t seed, const StreamExpr& e, std::uint64_t start, std::uint64_t length) {
    std::vector<int> out(length);
    const NoiseSource src(seed);
    for (std::uint64_t j = 0; j < length; ++j) out[j] = e.sample(src, start + j);
    return out;
}

inline std::int64_t dot(const std::vector<int>& a, const std::vector<int>& b) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += static_cast<std::int64_t>(a[j]) * b[j];
    return s;
}

inline double mean_product(const std::vector<int>& a, const std::vector<int>& b) {
    return static_cast<double>(dot(a, b)) / static_cast<double>(a.size());
}

/// 2^e as a decimal string by repeated doubling.
inline std::string power_of_two(std::uint64_t e) {
    std::string digits = "1";
    for (std::uint64_t k = 0; k < e; ++k) {
        int carry = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            const int d = (*it - '0') * 2 + carry;
            *it = static_cast<char>('0' + d % 10);
            carry = d / 10;
        }
        if (carry) digits.insert(digits.begin(), static_cast<char>('0' + carry));
    }
    return digits;
}

/// Re-reads the shifted offset set {2i + s_i + d} as a bit string: "O" when
/// any offset leaves [0, 2n), else "C" when two offsets share a noise bit.
inline std::string shifted_reading(const std::vector<int>& bits, std::uint64_t d) {
    const std::uint64_t n = bits.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        if (2 * i + static_cast<std::uint64_t>(bits[i]) + d >= 2 * n) return "O";
    }
    std::map<std::uint64_t, int> by_bit;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t off = 2 * i + static_cast<std::uint64_t>(bits[i]) + d;
        if (by_bit.count(off / 2)) return "C";
        by_bit[off / 2] = static_cast<int>(off % 2);
    }
    std::string out;
    for (auto& [bit, value] : by_bit) out += static_cast<char>('0' + value);
    return out;
}

}  // namespace nbl::oracle
