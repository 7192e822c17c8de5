#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nbl/noise_source.hpp"
#include "nbl/stream_expr.hpp"
#include "nbl/window.hpp"

namespace nbl {

using BigInt = boost::multiprecision::cpp_int;

/// Identifies reference noise V_{i,b}: noise bit i (1-based) carrying value b.
struct ReferenceId {
    std::uint64_t bit = 1;
    unsigned value = 0;

    friend constexpr auto operator<=>(const ReferenceId&, const ReferenceId&) = default;
};

/// Orthogonal reference noises built from one source by uniform one-period
/// shifts: V_{i,b}(n) = u(n + 2(i-1) + b).
///
/// Each expansion round shifts the whole family by another 2N periods and
/// appends the result, so round r adds noise bits rN+1 .. (r+1)N and leaves
/// every earlier reference untouched. The base system needs 2N-1 non-zero
/// shifts; a system with `rounds` expansions uses M = 2 * rounds * N steps.
class ReferenceSystem {
public:
    /// Throws Error when n_bits == 0.
    ReferenceSystem(std::uint64_t seed, std::uint64_t n_bits, std::uint64_t rounds = 0);
    /// Throws Error unless shift_steps == 2kN for an integer k.
    static ReferenceSystem from_shift_steps(std::uint64_t seed, std::uint64_t n_bits,
                                            std::uint64_t shift_steps);

    const NoiseSource& source() const noexcept { return source_; }
    std::uint64_t seed() const noexcept { return source_.seed(); }
    std::uint64_t n_bits() const noexcept { return n_bits_; }
    std::uint64_t rounds() const noexcept { return rounds_; }
    std::uint64_t shift_steps() const noexcept { return 2 * rounds_ * n_bits_; }
    /// N (1 + k)
    std::uint64_t effective_bits() const noexcept { return n_eff_; }
    std::uint64_t reference_count() const noexcept { return 2 * n_eff_; }
    std::uint64_t max_offset() const noexcept { return 2 * n_eff_ - 1; }

    /// Throws Error for i outside [1, N_eff] or b outside {0, 1}.
    std::uint64_t offset(ReferenceId id) const;
    Product reference_noise(ReferenceId id) const { return Product{offset(id)}; }

    /// All references in ladder order V_1_0, V_1_1, V_2_0, ...
    std::vector<ReferenceId> references() const;
    /// Inverse of offset(); throws Error past the ladder.
    ReferenceId reference_at(std::uint64_t offset) const;

    friend bool operator==(const ReferenceSystem&, const ReferenceSystem&) = default;

private:
    NoiseSource source_;
    std::uint64_t n_bits_;
    std::uint64_t rounds_;
    std::uint64_t n_eff_;
};

std::string reference_label(ReferenceId id);

/// Materializes every reference noise in ladder order.
std::vector<BitWindow> reference_windows(const ReferenceSystem& sys, SampleIndex start,
                                         std::uint64_t length);

struct OrthogonalityMatrix {
    std::vector<std::string> labels;
    /// Row-major, labels.size() squared.
    std::vector<CorrelationEstimate> cells;

    std::size_t dimension() const noexcept { return labels.size(); }
    const CorrelationEstimate& at(std::size_t row, std::size_t col) const {
        return cells[row * labels.size() + col];
    }
    double max_off_diagonal() const;
};

OrthogonalityMatrix orthogonality_matrix(const ReferenceSystem& sys, std::uint64_t length,
                                         SampleIndex start = 0);

/// Header row and first column carry "V_i_b" labels; cells use 6
/// significant digits.
std::string to_csv(const OrthogonalityMatrix& m);

struct CapacityReport {
    std::uint64_t n_bits = 0;
    std::uint64_t shift_steps = 0;
    /// 2^(N + M/2)
    BigInt classical_bits;
    /// 2^(M/2)
    BigInt dimension_factor;
};

/// Throws Error("M must equal 2kN") unless M is a non-negative multiple of 2N.
CapacityReport capacity(std::uint64_t n_bits, std::uint64_t shift_steps);

/// Literal shift register: a chain of delay cells fed one source sample per
/// clock. Cell 0 holds the newest sample, cell j the sample j clocks older.
class DelayLine {
public:
    DelayLine(NoiseSource source, std::size_t depth);

    std::size_t depth() const noexcept { return cells_.size() - 1; }
    /// Shifts every cell one place and loads the next source sample.
    void clock();
    int tap(std::size_t cell) const { return cells_.at(cell); }
    SampleIndex next_input() const noexcept { return next_; }

    /// Rewinds to an empty register whose next input is sample `first`.
    void reset(SampleIndex first);

private:
    NoiseSource source_;
    std::vector<std::int8_t> cells_;
    SampleIndex next_ = 0;
};

/// Reference windows read out of a DelayLine of depth 2 N_eff - 1, in the
/// same order as reference_windows().
std::vector<BitWindow> delay_line_reference_windows(const ReferenceSystem& sys, SampleIndex start,
                                                    std::uint64_t length);

}  // namespace nbl
