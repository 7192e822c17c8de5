#include "nbl/report.hpp"

namespace nbl {

namespace {

Json strings_json(const std::vector<BitString>& strings) {
    Json out = Json::array();
    for (const auto& s : strings) out.push_back(s.to_string());
    return out;
}

Json references_json(const std::vector<ReferenceId>& ids) {
    Json out = Json::array();
    for (const auto& id : ids) out.push_back(to_string(id));
    return out;
}

}  // namespace

std::string to_string(ReferenceId id) { return reference_label(id); }

Json to_json(const CorrelationEstimate& e) {
    return Json{{"rho", e.rho}, {"sum", e.sum}, {"L", e.window_len}, {"sigma", e.sigma}};
}

Json to_json(const CapacityReport& r) {
    return Json{{"N", r.n_bits},
                {"M", r.shift_steps},
                {"classical_bits", r.classical_bits.str()},
                {"dimension_factor", r.dimension_factor.str()}};
}

Json to_json(const OrthogonalityMatrix& m) {
    Json rows = Json::array();
    bool diagonal_exact = true;
    for (std::size_t r = 0; r < m.dimension(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.dimension(); ++c) row.push_back(m.at(r, c).rho);
        rows.push_back(std::move(row));
        diagonal_exact = diagonal_exact && m.at(r, r).rho == 1.0;
    }
    return Json{{"labels", m.labels},
                {"rho", std::move(rows)},
                {"diagonal_exact", diagonal_exact},
                {"max_off_diagonal", m.max_off_diagonal()}};
}

Json to_json(const HolographicImage& image) {
    Json out{{"status", to_string(image.status)}};
    out["string"] = image.string ? Json(image.string->to_string()) : Json(nullptr);
    return out;
}

Json to_json(const NoncommuteReport& r) {
    return Json{{"reference", to_string(r.reference)},
                {"d", r.shift.periods},
                {"x", canonical_form(r.input)},
                {"multiply_after_shift", canonical_form(r.multiply_after_shift)},
                {"shift_after_multiply", canonical_form(r.shift_after_multiply)},
                {"canonical_equal", r.canonical_equal},
                {"cross", to_json(r.cross)},
                {"self_multiply_after_shift", to_json(r.self_multiply_after_shift)},
                {"self_shift_after_multiply", to_json(r.self_shift_after_multiply)}};
}

Json to_json(const RandomShiftReport& r) {
    return Json{{"reference", to_string(r.reference)},
                {"r", r.assigned.periods},
                {"uncompensated", to_json(r.uncompensated)},
                {"compensated", to_json(r.compensated)},
                {"compensated_equal", r.compensated_equal},
                {"global_shift", r.global_shift.periods},
                {"restored", references_json(r.restored)},
                {"restored_count", r.restored.size()}};
}

Json decode_json(const ReferenceSystem& sys, std::uint64_t members, const DecodeResult& r) {
    Json out{{"seed", sys.seed()},
             {"N", sys.n_bits()},
             {"k", sys.rounds()},
             {"m", members},
             {"L", r.window_len},
             {"threshold", r.threshold},
             {"detected", strings_json(r.detected)}};
    if (sys.effective_bits() <= kMaxListedCorrelationBits) {
        Json list = Json::array();
        for (const auto& c : r.correlations) {
            list.push_back(Json{{"candidate", c.candidate.to_string()}, {"rho", c.estimate.rho}});
        }
        out["correlations"] = std::move(list);
    }
    return out;
}

Json to_json(const ReferenceSystem& sys, const HolographicReport& r) {
    Json members = Json::array();
    for (const auto& m : r.members) {
        members.push_back(Json{{"original", m.original.to_string()}, {"image", to_json(m.image)}});
    }
    return Json{{"d", r.shift.periods},
                {"members", std::move(members)},
                {"expected", strings_json(r.expected)},
                {"decode", decode_json(sys, r.members.size(), r.decoded)},
                {"matches", r.matches}};
}

}  // namespace nbl
