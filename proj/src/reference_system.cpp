#include "nbl/reference_system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace nbl {

namespace {

// Exponents past this are configuration mistakes, not experiments.
constexpr std::uint64_t kMaxCapacityExponent = std::uint64_t{1} << 24;

}  // namespace

ReferenceSystem::ReferenceSystem(std::uint64_t seed, std::uint64_t n_bits, std::uint64_t rounds)
    : source_(seed), n_bits_(n_bits), rounds_(rounds), n_eff_(0) {
    if (n_bits == 0) throw Error("reference system needs at least one noise bit");
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (rounds == kMax || n_bits > kMax / 4 / (rounds + 1)) throw Error("reference system too large");
    n_eff_ = n_bits * (rounds + 1);
}

ReferenceSystem ReferenceSystem::from_shift_steps(std::uint64_t seed, std::uint64_t n_bits,
                                                  std::uint64_t shift_steps) {
    if (n_bits == 0) throw Error("reference system needs at least one noise bit");
    if (shift_steps % (2 * n_bits) != 0) throw Error("M must equal 2kN");
    return ReferenceSystem(seed, n_bits, shift_steps / (2 * n_bits));
}

std::uint64_t ReferenceSystem::offset(ReferenceId id) const {
    if (id.bit < 1 || id.bit > n_eff_) throw Error("noise bit index out of range");
    if (id.value > 1) throw Error("bit value must be 0 or 1");
    return 2 * (id.bit - 1) + id.value;
}

std::vector<ReferenceId> ReferenceSystem::references() const {
    std::vector<ReferenceId> out;
    out.reserve(reference_count());
    for (std::uint64_t i = 1; i <= n_eff_; ++i) {
        out.push_back({i, 0});
        out.push_back({i, 1});
    }
    return out;
}

ReferenceId ReferenceSystem::reference_at(std::uint64_t offset) const {
    if (offset > max_offset()) throw Error("offset is past the reference ladder");
    return {offset / 2 + 1, static_cast<unsigned>(offset % 2)};
}

std::string reference_label(ReferenceId id) {
    return "V_" + std::to_string(id.bit) + "_" + std::to_string(id.value);
}

std::vector<BitWindow> reference_windows(const ReferenceSystem& sys, SampleIndex start,
                                         std::uint64_t length) {
    std::vector<BitWindow> out;
    out.reserve(sys.reference_count());
    for (const auto& id : sys.references()) {
        out.push_back(materialize(sys.source(), sys.reference_noise(id), start, length));
    }
    return out;
}

double OrthogonalityMatrix::max_off_diagonal() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dimension(); ++r) {
        for (std::size_t c = 0; c < dimension(); ++c) {
            if (r != c) worst = std::max(worst, std::abs(at(r, c).rho));
        }
    }
    return worst;
}

OrthogonalityMatrix orthogonality_matrix(const ReferenceSystem& sys, std::uint64_t length,
                                         SampleIndex start) {
    const auto windows = reference_windows(sys, start, length);
    OrthogonalityMatrix m;
    for (const auto& id : sys.references()) m.labels.push_back(reference_label(id));
    const std::size_t n = windows.size();
    m.cells.resize(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) {
            m.cells[r * n + c] = correlate(windows[r], windows[c]);
            m.cells[c * n + r] = m.cells[r * n + c];
        }
    }
    return m;
}

std::string to_csv(const OrthogonalityMatrix& m) {
    std::string out;
    for (const auto& label : m.labels) out += "," + label;
    out += '\n';
    char buf[32];
    for (std::size_t r = 0; r < m.dimension(); ++r) {
        out += m.labels[r];
        for (std::size_t c = 0; c < m.dimension(); ++c) {
            std::snprintf(buf, sizeof buf, ",%.6g", m.at(r, c).rho);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

CapacityReport capacity(std::uint64_t n_bits, std::uint64_t shift_steps) {
    if (n_bits == 0) throw Error("capacity needs at least one noise bit");
    if (n_bits > kMaxCapacityExponent) throw Error("capacity exponent too large");
    if (shift_steps % (2 * n_bits) != 0) throw Error("M must equal 2kN");
    const std::uint64_t half = shift_steps / 2;
    if (half > kMaxCapacityExponent) throw Error("capacity exponent too large");
    CapacityReport r;
    r.n_bits = n_bits;
    r.shift_steps = shift_steps;
    r.classical_bits = BigInt(1) << static_cast<unsigned>(n_bits + half);
    r.dimension_factor = BigInt(1) << static_cast<unsigned>(half);
    return r;
}

DelayLine::DelayLine(NoiseSource source, std::size_t depth) : source_(source), cells_(depth + 1, 0) {}

void DelayLine::clock() {
    for (std::size_t j = cells_.size() - 1; j > 0; --j) cells_[j] = cells_[j - 1];
    cells_[0] = static_cast<std::int8_t>(source_(next_++));
}

void DelayLine::reset(SampleIndex first) {
    std::fill(cells_.begin(), cells_.end(), std::int8_t{0});
    next_ = first;
}

std::vector<BitWindow> delay_line_reference_windows(const ReferenceSystem& sys, SampleIndex start,
                                                    std::uint64_t length) {
    if (length == 0) throw Error("materialize: window length must be at least 1");
    const std::size_t depth = sys.max_offset();
    DelayLine line(sys.source(), depth);
    line.reset(start);
    // Fill the register: afterwards cell 0 holds u(start + depth).
    for (std::size_t j = 0; j <= depth; ++j) line.clock();

    const auto ids = sys.references();
    std::vector<BitWindow> out(ids.size(), BitWindow(start, length));
    for (std::uint64_t j = 0; j < length; ++j) {
        // Current time is start + j + depth; reference offset o sits in cell depth - o.
        for (std::size_t r = 0; r < ids.size(); ++r) {
            out[r].set(j, line.tap(depth - sys.offset(ids[r])) > 0);
        }
        line.clock();
    }
    return out;
}

}  // namespace nbl
