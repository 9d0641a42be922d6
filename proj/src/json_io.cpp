#include "hclab/json_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "hclab/errors.hpp"

namespace hclab::io {

namespace {

[[noreturn]] void bad(const std::string& what) { raise(ErrorKind::Param, "malformed JSON: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

// Non-finite doubles have no JSON spelling; they are emitted as null.
json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string family_name(PairDescriptor::Family f) {
  switch (f) {
    case PairDescriptor::Family::BoundedShift: return "bounded-shift";
    case PairDescriptor::Family::UnboundedShift: return "unbounded-shift";
    case PairDescriptor::Family::Differentiation: return "differentiation";
    case PairDescriptor::Family::Custom: return "custom";
  }
  return "custom";
}

}  // namespace

json scalar_to_json(Scalar z) { return json::array({real(z.real()), real(z.imag())}); }

Scalar scalar_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) bad("complex scalar must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json space_to_json(const SpaceTag& s) {
  switch (s.kind) {
    case SpaceKind::Lp: return {{"kind", "lp"}, {"p", s.p}};
    case SpaceKind::C0: return {{"kind", "c0"}};
    case SpaceKind::Poly: return {{"kind", "poly"}, {"a", s.a}, {"b", s.b}};
  }
  return {};
}

SpaceTag space_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("space kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "lp") return SpaceTag::lp(number(field(j, "p"), "p"));
  if (k == "c0") return SpaceTag::c0();
  if (k == "poly") return SpaceTag::poly(number(field(j, "a"), "a"), number(field(j, "b"), "b"));
  bad("unknown space kind \"" + k + "\"");
}

json vector_to_json(const Vector& v) {
  json coeffs = json::array();
  for (const Scalar c : v.coeffs()) coeffs.push_back(scalar_to_json(c));
  return {{"space", space_to_json(v.space())}, {"coeffs", std::move(coeffs)}};
}

Vector vector_from_json(const json& j) {
  const SpaceTag space = space_from_json(field(j, "space"));
  const json& cs = field(j, "coeffs");
  if (!cs.is_array()) bad("coeffs must be an array");
  std::vector<Scalar> coeffs;
  coeffs.reserve(cs.size());
  for (const auto& c : cs) coeffs.push_back(scalar_from_json(c));
  return Vector(space, std::move(coeffs));
}

json descriptor_to_json(const PairDescriptor& d) {
  json j = {{"family", family_name(d.family)}};
  if (d.family == PairDescriptor::Family::BoundedShift || d.family == PairDescriptor::Family::UnboundedShift)
    j["w"] = scalar_to_json(d.w);
  j["space"] = space_to_json(d.space);
  if (d.family == PairDescriptor::Family::Custom) j["name"] = d.custom_name;
  for (const auto& t : d.transforms) {
    json outer;
    switch (t.kind) {
      case PairDescriptor::TransformKind::Power: outer = {{"transform", "power"}, {"n", t.n}}; break;
      case PairDescriptor::TransformKind::Multiple:
        outer = {{"transform", "multiple"}, {"lambda", scalar_to_json(t.lambda)}};
        break;
      case PairDescriptor::TransformKind::Swap: outer = {{"transform", "swap"}}; break;
      case PairDescriptor::TransformKind::RightInverse: outer = {{"transform", "right-inverse"}}; break;
    }
    outer["base"] = std::move(j);
    j = std::move(outer);
  }
  return j;
}

PairDescriptor descriptor_from_json(const json& j) {
  if (!j.is_object()) bad("pair descriptor must be an object");
  if (j.contains("transform")) {
    PairDescriptor d = descriptor_from_json(field(j, "base"));
    PairDescriptor::Transform t;
    const json& kind = field(j, "transform");
    if (!kind.is_string()) bad("transform must be a string");
    const auto k = kind.get<std::string>();
    if (k == "power") {
      t.kind = PairDescriptor::TransformKind::Power;
      t.n = integer(field(j, "n"), "n");
    } else if (k == "multiple") {
      t.kind = PairDescriptor::TransformKind::Multiple;
      t.lambda = scalar_from_json(field(j, "lambda"));
    } else if (k == "swap") {
      t.kind = PairDescriptor::TransformKind::Swap;
    } else if (k == "right-inverse") {
      t.kind = PairDescriptor::TransformKind::RightInverse;
    } else {
      bad("unknown transform \"" + k + "\"");
    }
    d.transforms.push_back(t);
    return d;
  }
  PairDescriptor d;
  const json& fam = field(j, "family");
  if (!fam.is_string()) bad("family must be a string");
  const auto f = fam.get<std::string>();
  if (f == "bounded-shift") {
    d.family = PairDescriptor::Family::BoundedShift;
  } else if (f == "unbounded-shift") {
    d.family = PairDescriptor::Family::UnboundedShift;
  } else if (f == "differentiation") {
    d.family = PairDescriptor::Family::Differentiation;
  } else if (f == "custom") {
    d.family = PairDescriptor::Family::Custom;
    if (j.contains("name") && j["name"].is_string()) d.custom_name = j["name"].get<std::string>();
  } else {
    bad("unknown family \"" + f + "\"");
  }
  if (j.contains("w")) d.w = scalar_from_json(j["w"]);
  if (j.contains("space")) {
    d.space = space_from_json(j["space"]);
  } else if (d.family == PairDescriptor::Family::Differentiation) {
    d.space = SpaceTag::poly(0.0, 1.0);
  }
  return d;
}

json series_to_json(const SeriesResult& r) {
  return {{"vector", vector_to_json(r.vector)}, {"truncation_M", r.truncation_M},
          {"truncation_minus", r.truncation_minus}, {"tail_bound", real(r.tail_bound)},
          {"residual", real(r.residual)},   {"converged", r.converged}};
}

json schedule_to_json(const HypercyclicSchedule& s) {
  json targets = json::array();
  for (const auto& t : s.targets) targets.push_back(vector_to_json(t));
  json bounds = json::array();
  for (double b : s.per_step_residual_bound) bounds.push_back(real(b));
  return {{"exponents", s.exponents}, {"bounds", std::move(bounds)}, {"targets", std::move(targets)}};
}

json estimate_to_json(const SpectralEstimate& e) {
  json samples = json::array();
  for (const auto& [n, v] : e.samples) samples.push_back(json::array({n, real(v)}));
  return {{"side", e.side == Side::A ? "A" : "B"}, {"value", real(e.value)},     {"fit_alpha", real(e.fit_alpha)},
          {"fit_quality", real(e.fit_quality)},    {"exact_zero", e.exact_zero}, {"samples", std::move(samples)}};
}

json verdict_to_json(const HypothesisVerdict& v) {
  json per = json::array();
  for (const auto& s : v.per_sample)
    per.push_back({{"id", s.id}, {"r_A", real(s.r_a)}, {"r_B", real(s.r_b)}, {"defect", real(s.defect)}});
  return {{"hypothesis1_ok", v.hypothesis1_ok},
          {"hypothesis1_max_defect", real(v.hypothesis1_max_defect)},
          {"decay_class", decay_class_name(v.decay_class)},
          {"alpha", real(v.alpha)},
          {"per_sample", std::move(per)},
          {"notes", v.notes}};
}

json scan_to_json(const std::vector<ScanCell>& cells) {
  json out = json::array();
  for (const auto& c : cells) {
    json j = {{"lambda", scalar_to_json(c.lambda)},
              {"n", c.n},
              {"status", cell_status_name(c.status)},
              {"predicted", prediction_name(c.predicted)}};
    if (c.status == CellStatus::Constructed) j["residual"] = real(c.residual);
    if (!c.reason.empty()) j["reason"] = c.reason;
    out.push_back(std::move(j));
  }
  return out;
}

json orbit_probe_to_json(const OrbitProbeResult& r) {
  json matches = json::array();
  for (const auto& m : r.matches)
    matches.push_back({{"target_index", m.target_index}, {"best_n", m.best_n}, {"best_distance", real(m.best_distance)}});
  return {{"matches", std::move(matches)}, {"last_n", r.last_n}, {"truncated", r.truncated}};
}

json adjoint_probe_to_json(const AdjointProbeResult& r) {
  json norms = json::array();
  for (double v : r.orbit_norms) norms.push_back(real(v));
  json j = {{"mode", probe_mode_name(r.mode)}, {"orbit_norms", std::move(norms)}, {"notes", r.notes}};
  if (r.mode == ProbeMode::EigenvalueFound) {
    j["lambda"] = scalar_to_json(r.lambda);
    j["residual"] = real(r.residual);
  }
  if (r.witness) {
    j["witness"] = vector_to_json(*r.witness);
    j["witness_index"] = r.witness_index;
  }
  return j;
}

json kernel_range_to_json(const KernelRangeReport& r) {
  return {{"disjoint", r.disjoint},
          {"sigma_min", r.sigma_min ? real(*r.sigma_min) : json(nullptr)},
          {"kernel_dim", r.kernel_dim},
          {"range_dim", r.range_dim}};
}

json isomorphism_to_json(const IsomorphismReport& r) {
  return {{"dimension", r.dimension},
          {"sigma_min", real(r.sigma_min)},
          {"max_roundtrip_error", real(r.max_roundtrip_error)},
          {"max_eigen_defect", real(r.max_eigen_defect)},
          {"full_rank", r.full_rank}};
}

json make_report(const std::string& command, const PairDescriptor& pair, json params, json result,
                 const std::optional<std::string>& timestamp) {
  json r = {{"schema", kReportSchema},
            {"command", command},
            {"pair", descriptor_to_json(pair)},
            {"params", std::move(params)},
            {"result", std::move(result)}};
  if (timestamp) r["timestamp"] = *timestamp;
  return r;
}

std::vector<std::string> validate_report(const json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report is not an object"};
  const auto expect = [&](const char* key, auto pred, const char* type) {
    if (!report.contains(key)) {
      problems.push_back(std::string("missing \"") + key + "\"");
    } else if (!pred(report.at(key))) {
      problems.push_back(std::string("\"") + key + "\" must be " + type);
    }
  };
  expect("schema", [](const json& j) { return j.is_string() && j.get<std::string>() == kReportSchema; },
         "\"hclab-report-v1\"");
  expect("command", [](const json& j) { return j.is_string() && !j.get<std::string>().empty(); }, "a nonempty string");
  expect("pair", [](const json& j) { return j.is_object(); }, "an object");
  expect("params", [](const json& j) { return j.is_object(); }, "an object");
  expect("result", [](const json& j) { return !j.is_null(); }, "present");
  if (report.contains("timestamp") && !report["timestamp"].is_string()) problems.push_back("\"timestamp\" must be a string");
  for (const auto& [key, _] : report.items()) {
    if (key != "schema" && key != "command" && key != "pair" && key != "params" && key != "result" && key != "timestamp")
      problems.push_back("unexpected key \"" + key + "\"");
  }
  if (report.contains("pair") && report["pair"].is_object()) {
    try {
      descriptor_from_json(report["pair"]);
    } catch (const Error& e) {
      problems.push_back(std::string("pair: ") + e.what());
    }
  }
  return problems;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string scan_to_csv(const std::vector<ScanCell>& cells) {
  std::ostringstream os;
  os << "lambda_re,lambda_im,n,status,residual,predicted\n";
  for (const auto& c : cells) {
    os << format_double(c.lambda.real()) << ',' << format_double(c.lambda.imag()) << ',' << c.n << ','
       << cell_status_name(c.status) << ',';
    if (c.status == CellStatus::Constructed) os << format_double(c.residual);
    os << ',' << prediction_name(c.predicted) << '\n';
  }
  return os.str();
}

}  // namespace hclab::io
