#include "hclab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <unistd.h>

#include "hclab/enumeration.hpp"
#include "hclab/errors.hpp"
#include "hclab/json_io.hpp"
#include "hclab/pairs.hpp"
#include "hclab/parse.hpp"
#include "hclab/series.hpp"
#include "hclab/verifier.hpp"

namespace hclab::cli {

namespace {

using io::json;

constexpr const char* kGrammar =
    "usage: hclab <subcommand> --pair <family> [--w re[+imi]] [--space lp:<p>|c0|poly] [--a R --b R]\n"
    "             [--transform power:<n>|multiple:<lambda>|swap|right-inverse]... [--tol R] [--n-max N]\n"
    "             [--out PATH] [--format json|csv] [--no-timestamp] [subcommand flags]\n"
    "\n"
    "families:    bounded-shift, unbounded-shift, diff (alias differentiation)\n"
    "subcommands:\n"
    "  check         [--samples N]\n"
    "  periodic      --seed V --N N\n"
    "  eigen         --lambda Z [--n N] [--seed V]\n"
    "  iso           --lambda Z [--n N] [--seed V] [--inverse]\n"
    "  hypercyclic   --K N [--budget N]\n"
    "  scan          --grid \"re0:re1:step,im0:im1:step\" [--n N] [--seed V]\n"
    "  orbit         --seed V [--targets PATH]\n"
    "  nonhc         [--targets PATH]\n"
    "  kernel-range  [--n N] [--support-cap N]\n"
    "\n"
    "vectors:  sequences \"1,0,-2\"; polynomials \"1+2x-1/2x^2\"; scalars \"a+bi\"\n"
    "targets:  JSON array of {\"space\":{...},\"coeffs\":[[re,im],...]}\n";

struct Config {
  std::string pair;
  std::string w = "2";
  std::string space = "lp:2";
  double a = 0.0;
  double b = 1.0;
  std::vector<std::string> transforms;
  double tol = 1e-10;
  int n_max = 64;
  std::string out;
  std::string format = "json";
  bool no_timestamp = false;

  std::string seed;
  std::string lambda;
  std::string grid;
  std::string targets;
  int N = 1;
  int n = 1;
  int K = 8;
  int budget = 4096;
  int samples = 16;
  int support_cap = 32;
  bool inverse = false;
};

[[noreturn]] void usage(const std::string& msg) { raise(ErrorKind::Usage, msg); }

PairDescriptor descriptor_from(const Config& c, bool space_given) {
  PairDescriptor d;
  if (c.pair == "bounded-shift") {
    d.family = PairDescriptor::Family::BoundedShift;
  } else if (c.pair == "unbounded-shift") {
    d.family = PairDescriptor::Family::UnboundedShift;
  } else if (c.pair == "diff" || c.pair == "differentiation") {
    d.family = PairDescriptor::Family::Differentiation;
  } else {
    usage("unknown pair family \"" + c.pair + "\"");
  }
  if (d.family == PairDescriptor::Family::Differentiation) {
    if (space_given && c.space != "poly") usage("the differentiation pair lives on poly");
    d.space = parse::space("poly", c.a, c.b);
    d.w = {1.0, 0.0};
  } else {
    d.space = parse::space(c.space, c.a, c.b);
    if (!d.space.is_sequence()) usage("shift pairs need a sequence space (lp:<p> or c0)");
    d.w = parse::complex_scalar(c.w);
  }
  for (const auto& t : c.transforms) {
    PairDescriptor::Transform tr;
    const auto colon = t.find(':');
    const std::string head = t.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : t.substr(colon + 1);
    if (head == "power") {
      tr.kind = PairDescriptor::TransformKind::Power;
      const double v = parse::real_number(arg);
      if (v != static_cast<int>(v) || v < 1) usage("power transform needs a positive integer");
      tr.n = static_cast<int>(v);
    } else if (head == "multiple") {
      tr.kind = PairDescriptor::TransformKind::Multiple;
      tr.lambda = parse::complex_scalar(arg);
    } else if (head == "swap" && arg.empty()) {
      tr.kind = PairDescriptor::TransformKind::Swap;
    } else if (head == "right-inverse" && arg.empty()) {
      tr.kind = PairDescriptor::TransformKind::RightInverse;
    } else {
      usage("unknown transform \"" + t + "\"");
    }
    d.transforms.push_back(tr);
  }
  return d;
}

std::vector<Vector> read_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Param, "cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorKind::Param, path + ": " + e.what());
  }
  if (!j.is_array() || j.empty()) raise(ErrorKind::Param, path + ": expected a nonempty JSON array of vectors");
  std::vector<Vector> out;
  for (const auto& v : j) out.push_back(io::vector_from_json(v));
  return out;
}

Vector seed_or_default(const Config& c, const SpaceTag& space) {
  if (c.seed.empty()) return canonical_basis(space, 1);
  return parse::vector(c.seed, space);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) raise(ErrorKind::Param, "cannot write " + tmp.string());
    o << text;
    o.flush();
    if (!o) raise(ErrorKind::Param, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    raise(ErrorKind::Param, "cannot rename onto " + path + ": " + ec.message());
  }
}

struct Outcome {
  json params;
  json result;
  std::optional<std::string> csv;
};

Outcome execute(const std::string& command, const Config& c, const OperatorPair& p) {
  Outcome o;
  o.params = {{"tol", c.tol}, {"n_max", c.n_max}};
  const SpaceTag& space = p.space();

  if (command == "check") {
    o.params["samples"] = c.samples;
    o.result = io::verdict_to_json(check_hypotheses(p, static_cast<std::size_t>(c.samples), c.n_max));
  } else if (command == "periodic") {
    const Vector f = parse::vector(c.seed, space);
    o.params["N"] = c.N;
    o.params["seed"] = io::vector_to_json(f);
    SeriesResult r = periodic_point(p, f, c.N, c.tol);
    verify_periodic(p, r, c.N);
    o.result = io::series_to_json(r);
  } else if (command == "eigen") {
    const Vector f = seed_or_default(c, space);
    const Scalar lambda = parse::complex_scalar(c.lambda);
    o.params["n"] = c.n;
    o.params["lambda"] = io::scalar_to_json(lambda);
    o.params["seed"] = io::vector_to_json(f);
    SeriesResult r = eigenvector(p, f, c.n, lambda, c.tol);
    verify_eigen(p, r, c.n, lambda);
    o.result = io::series_to_json(r);
  } else if (command == "iso") {
    const Vector f = seed_or_default(c, space);
    const Scalar lambda = parse::complex_scalar(c.lambda);
    o.params["n"] = c.n;
    o.params["lambda"] = io::scalar_to_json(lambda);
    o.params["seed"] = io::vector_to_json(f);
    o.params["inverse"] = c.inverse;
    if (c.inverse) {
      const Vector k = kernel_isomorphism_inverse(p, c.n, lambda, f);
      o.result = {{"vector", io::vector_to_json(k)}, {"kernel_defect", norm(apply_a_power(p, k, c.n))}};
    } else {
      const Vector v = kernel_isomorphism(p, c.n, lambda, f, c.tol);
      o.result = {{"vector", io::vector_to_json(v)}, {"residual", eigen_defect(p, v, c.n, lambda)}};
    }
  } else if (command == "hypercyclic") {
    o.params["K"] = c.K;
    o.params["budget"] = c.budget;
    auto [r, sched] = hypercyclic_vector(p, c.K, c.budget);
    o.result = {{"series", io::series_to_json(r)}, {"schedule", io::schedule_to_json(sched)}};
  } else if (command == "scan") {
    const Vector f = seed_or_default(c, space);
    const auto grid = parse::grid(c.grid);
    o.params["n"] = c.n;
    o.params["grid"] = c.grid;
    o.params["seed"] = io::vector_to_json(f);
    const auto cells = spectrum_scan(p, c.n, grid, c.tol, f);
    o.result = io::scan_to_json(cells);
    o.csv = io::scan_to_csv(cells);
  } else if (command == "orbit") {
    const Vector f = parse::vector(c.seed, space);
    const auto targets = c.targets.empty() ? canonical_dense_sequence(space, 8) : read_vectors(c.targets);
    o.params["seed"] = io::vector_to_json(f);
    o.params["targets"] = c.targets.empty() ? json("canonical:8") : json(c.targets);
    o.result = io::orbit_probe_to_json(orbit_density_probe(p, f, targets, c.n_max));
  } else if (command == "nonhc") {
    const auto cands = c.targets.empty() ? standard_adjoint_candidates(space) : read_vectors(c.targets);
    o.params["candidates"] = c.targets.empty() ? json("standard") : json(c.targets);
    o.result = io::adjoint_probe_to_json(adjoint_nonhc_probe(p, cands, c.n_max));
  } else if (command == "kernel-range") {
    o.params["n"] = c.n;
    o.params["support_cap"] = c.support_cap;
    o.result = io::kernel_range_to_json(kernel_range_report(p, c.n, static_cast<std::size_t>(c.support_cap)));
  }
  return o;
}

}  // namespace

const char* grammar() { return kGrammar; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Hypercyclicity laboratory", "hclab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--pair", c.pair, "operator family")->required();
  auto* space_opt = app.add_option("--space", c.space);
  app.add_option("--w", c.w);
  app.add_option("--a", c.a);
  app.add_option("--b", c.b);
  app.add_option("--transform", c.transforms)->take_all();
  app.add_option("--tol", c.tol)->check(CLI::PositiveNumber);
  app.add_option("--n-max", c.n_max)->check(CLI::Range(1, 100000));
  app.add_option("--out", c.out);
  app.add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-timestamp", c.no_timestamp);

  auto* check = app.add_subcommand("check", "classify the decay hypotheses");
  check->add_option("--samples", c.samples)->check(CLI::Range(1, 100000));
  auto* periodic = app.add_subcommand("periodic", "construct a periodic point");
  periodic->add_option("--seed", c.seed)->required();
  periodic->add_option("--N", c.N)->required()->check(CLI::PositiveNumber);
  auto* eigen = app.add_subcommand("eigen", "construct an eigenvector of A^n");
  eigen->add_option("--lambda", c.lambda)->required();
  eigen->add_option("--n", c.n)->check(CLI::PositiveNumber);
  eigen->add_option("--seed", c.seed);
  auto* iso = app.add_subcommand("iso", "kernel isomorphism ker A^n -> ker(A^n - lambda)");
  iso->add_option("--lambda", c.lambda)->required();
  iso->add_option("--n", c.n)->check(CLI::PositiveNumber);
  iso->add_option("--seed", c.seed);
  iso->add_flag("--inverse", c.inverse);
  auto* hc = app.add_subcommand("hypercyclic", "construct a hypercyclic vector");
  hc->add_option("--K", c.K)->required()->check(CLI::PositiveNumber);
  hc->add_option("--budget", c.budget)->check(CLI::PositiveNumber);
  auto* scan = app.add_subcommand("scan", "point-spectrum scan of A^n");
  scan->add_option("--grid", c.grid)->required();
  scan->add_option("--n", c.n)->check(CLI::PositiveNumber);
  scan->add_option("--seed", c.seed);
  auto* orbit = app.add_subcommand("orbit", "orbit density probe");
  orbit->add_option("--seed", c.seed)->required();
  orbit->add_option("--targets", c.targets);
  auto* nonhc = app.add_subcommand("nonhc", "adjoint non-hypercyclicity probe");
  nonhc->add_option("--targets", c.targets);
  auto* kr = app.add_subcommand("kernel-range", "check ker A^n against R(B^n)");
  kr->add_option("--n", c.n)->check(CLI::PositiveNumber);
  kr->add_option("--support-cap", c.support_cap)->check(CLI::Range(1, 4096));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("hclab");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << kGrammar;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "UsageError: " << e.what() << "\n\n" << kGrammar;
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  json params_for_errors = {{"command", command}, {"pair", c.pair}};
  try {
    if (c.format == "csv" && command != "scan") usage("--format csv is only available for scan");
    const PairDescriptor d = descriptor_from(c, space_opt->count() > 0);
    params_for_errors["pair"] = io::descriptor_to_json(d);
    const OperatorPair p = build_pair(d);
    Outcome o = execute(command, c, p);

    std::string text;
    if (c.format == "csv") {
      text = *o.csv;
    } else {
      const auto ts = c.no_timestamp ? std::nullopt : std::optional<std::string>(utc_timestamp());
      text = io::make_report(command, d, std::move(o.params), std::move(o.result), ts).dump(2) + "\n";
    }
    if (c.out.empty()) {
      out << text;
    } else {
      write_atomic(c.out, text);
    }
    return 0;
  } catch (const Error& e) {
    err << e.what() << '\n';
    if (e.kind() == ErrorKind::Usage) {
      err << '\n' << kGrammar;
    } else {
      err << "parameters: command=" << command << " pair=" << params_for_errors["pair"].dump()
          << " tol=" << io::format_double(c.tol) << " n_max=" << c.n_max;
      if (!c.lambda.empty()) err << " lambda=" << c.lambda;
      if (!c.seed.empty()) err << " seed=" << c.seed;
      err << " n=" << c.n << " N=" << c.N << '\n';
    }
    return exit_code(e.kind());
  }
}

}  // namespace hclab::cli
