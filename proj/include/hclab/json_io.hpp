#pragma once

// JSON and CSV encodings of vectors, pair descriptors and results.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hclab/pairs.hpp"
#include "hclab/series.hpp"
#include "hclab/space.hpp"
#include "hclab/verifier.hpp"

namespace hclab::io {

using nlohmann::json;

inline constexpr const char* kReportSchema = "hclab-report-v1";

json scalar_to_json(Scalar z);
Scalar scalar_from_json(const json& j);

json space_to_json(const SpaceTag& s);
SpaceTag space_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

/// Transforms nest outward: the last transform is the outermost object.
json descriptor_to_json(const PairDescriptor& d);
PairDescriptor descriptor_from_json(const json& j);

json series_to_json(const SeriesResult& r);
json schedule_to_json(const HypercyclicSchedule& s);
json estimate_to_json(const SpectralEstimate& e);
json verdict_to_json(const HypothesisVerdict& v);
json scan_to_json(const std::vector<ScanCell>& cells);
json orbit_probe_to_json(const OrbitProbeResult& r);
json adjoint_probe_to_json(const AdjointProbeResult& r);
json kernel_range_to_json(const KernelRangeReport& r);
json isomorphism_to_json(const IsomorphismReport& r);

json make_report(const std::string& command, const PairDescriptor& pair, json params, json result,
                 const std::optional<std::string>& timestamp);

/// Structural check against the v1 report layout; returns the problems found.
std::vector<std::string> validate_report(const json& report);

/// Header: lambda_re,lambda_im,n,status,residual,predicted
std::string scan_to_csv(const std::vector<ScanCell>& cells);

/// Doubles formatted with round-trip precision.
std::string format_double(double x);

}  // namespace hclab::io
