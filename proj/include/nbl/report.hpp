#pragma once

#include <json.hpp>

#include "nbl/hyperspace.hpp"
#include "nbl/reference_system.hpp"
#include "nbl/timeshift_apps.hpp"

namespace nbl {

using Json = nlohmann::ordered_json;

/// Version of every JSON report written by the nbl tool.
inline constexpr int kReportSchema = 1;

/// Correlation lists are only emitted up to this many noise bits.
inline constexpr std::uint64_t kMaxListedCorrelationBits = 10;

std::string to_string(ReferenceId id);

Json to_json(const CorrelationEstimate& e);
Json to_json(const CapacityReport& r);
Json to_json(const OrthogonalityMatrix& m);
Json to_json(const HolographicImage& image);
Json to_json(const NoncommuteReport& r);
Json to_json(const RandomShiftReport& r);

/// {seed, N, k, m, L, threshold, detected, correlations}; correlations are
/// only listed when N_eff <= 10.
Json decode_json(const ReferenceSystem& sys, std::uint64_t members, const DecodeResult& r);
Json to_json(const ReferenceSystem& sys, const HolographicReport& r);

}  // namespace nbl
