// Acceptance runner: one PASS/FAIL line per criterion.
//   hclab_acceptance            run everything
//   hclab_acceptance --only K   run criterion K (1..11)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hclab/enumeration.hpp"
#include "hclab/errors.hpp"
#include "hclab/pairs.hpp"
#include "hclab/series.hpp"
#include "hclab/verifier.hpp"
#include "oracles.hpp"

using namespace hclab;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "failed: ";
      else detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

struct Named {
  const char* label;
  OperatorPair pair;
};

std::vector<Named> builtins() {
  return {{"bounded-shift", make_bounded_shift(2.0, SpaceTag::lp(2))},
          {"unbounded-shift", make_unbounded_shift(2.0, SpaceTag::lp(2))},
          {"differentiation", make_differentiation(0.0, 1.0)}};
}

Vector seed_for(const OperatorPair& p) { return canonical_basis(p.space(), 1); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string scalar_text(Scalar z) { return "(" + sci(z.real()) + "," + sci(z.imag()) + ")"; }

// ||ABf - f|| <= 1e-12 (1 + ||f||) on the first 100 canonical vectors.
void ac1(Outcome& o) {
  double worst = 0.0;
  for (const auto& [label, p] : builtins()) {
    for (const Vector& f : canonical_dense_sequence(p.space(), 100)) {
      const double d = norm(p.apply_a(p.apply_b(f)) - f) / (1.0 + norm(f));
      worst = std::max(worst, d);
      if (d > 1e-12) o.require(false, std::string(label) + " defect " + sci(d));
    }
  }
  o.detail << (o.ok ? "" : " ") << "max defect " << sci(worst);
}

// Differentiation on [0,1], seed 1 + 2x, N = 2 against cosh + 2 sinh.
void ac2(Outcome& o) {
  const OperatorPair p = make_differentiation(0.0, 1.0);
  const Vector f(p.space(), {1.0, 2.0});
  SeriesResult r = periodic_point(p, f, 2, 1e-8);
  const double residual = verify_periodic(p, r, 2);
  double err = 0.0;
  for (double x : oracle::cheb_grid(0.0, 1.0))
    err = std::max(err, std::abs(eval_poly(r.vector, x) - oracle::cosh_sinh(1.0, 2.0, 0.0, x)));
  o.require(err <= 1e-7, "max error " + sci(err));
  o.require(residual <= 1e-8, "residual " + sci(residual));
  o.detail << (o.ok ? "" : " ") << "max error " << sci(err) << ", residual " << sci(residual);
}

// Bounded shift w = 2, f = e_1: residuals for N <= 8, shrinking gap to N = 20.
void ac3(Outcome& o) {
  const OperatorPair p = make_bounded_shift(2.0, SpaceTag::lp(2));
  const Vector f = canonical_basis(p.space(), 1);
  double worst_res = 0.0, prev_gap = INFINITY, gap = 0.0, worst_oracle = 0.0;
  for (int N = 1; N <= 20; ++N) {
    SeriesResult r = periodic_point(p, f, N, 1e-13);
    const double res = verify_periodic(p, r, N);
    if (N <= 8) {
      worst_res = std::max(worst_res, res);
      o.require(res <= 1e-9, "N=" + std::to_string(N) + " residual " + sci(res));
    }
    gap = norm(r.vector - f);
    o.require(gap < prev_gap, "gap not decreasing at N=" + std::to_string(N));
    const double expect = oracle::bounded_shift_periodic_gap(2.0, N);
    worst_oracle = std::max(worst_oracle, std::abs(gap - expect) / expect);
    prev_gap = gap;
  }
  o.require(gap < 1e-5, "gap at N=20 is " + sci(gap));
  o.require(worst_oracle <= 1e-6, "gap deviates from closed form by " + sci(worst_oracle));
  o.detail << (o.ok ? "" : " ") << "max residual " << sci(worst_res) << ", gap(20) " << sci(gap)
           << ", closed-form deviation " << sci(worst_oracle);
}

// 20 x 10 grid over [-2.85, 2.85] x [-1.35, 1.35].
void ac4(Outcome& o) {
  const OperatorPair p = make_bounded_shift(2.0, SpaceTag::lp(2));
  const auto grid = rectangular_grid(-2.85, 2.85, 0.3, -1.35, 1.35, 0.3);
  o.require(grid.size() == 200, "grid has " + std::to_string(grid.size()) + " points");
  const auto cells = spectrum_scan(p, 1, grid, 1e-10, seed_for(p));
  int inside = 0, outside = 0;
  double worst = 0.0;
  for (const auto& c : cells) {
    const double m = std::abs(c.lambda);
    if (m <= 1.9) {
      ++inside;
      const bool good = c.status == CellStatus::Constructed && c.residual <= 1e-8;
      if (good) worst = std::max(worst, c.residual);
      o.require(good, "lambda " + scalar_text(c.lambda) + " " + cell_status_name(c.status));
    } else if (m >= 2.1) {
      ++outside;
      o.require(c.status == CellStatus::Diverged, "lambda " + scalar_text(c.lambda) + " " + cell_status_name(c.status));
    }
  }
  o.detail << (o.ok ? "" : " ") << inside << " inside (max residual " << sci(worst) << "), " << outside
           << " outside";
}

// Unbounded shift and differentiation, n in {1,2}, |lambda| in {10, 1e3, 1e6}, 8 arguments.
void ac5(Outcome& o) {
  std::vector<Scalar> grid;
  for (double m : {10.0, 1e3, 1e6})
    for (int k = 0; k < 8; ++k) grid.push_back(std::polar(m, k * std::numbers::pi / 4.0));
  int constructed = 0, total = 0;
  for (const auto& [label, p] : builtins()) {
    if (p.descriptor().family == PairDescriptor::Family::BoundedShift) continue;
    for (int n = 1; n <= 2; ++n) {
      for (const auto& c : spectrum_scan(p, n, grid, 1e-10, seed_for(p))) {
        ++total;
        const bool good = c.status == CellStatus::Constructed && c.residual <= 1e-6;
        constructed += good;
        if (!good) {
          std::string why = cell_status_name(c.status);
          if (c.status == CellStatus::Constructed) why += " residual " + sci(c.residual);
          else why += " " + c.reason;
          o.require(false, std::string(label) + " n=" + std::to_string(n) + " lambda " + scalar_text(c.lambda) +
                               " " + why);
        }
      }
    }
  }
  o.detail << (o.ok ? "" : " ") << "[" << constructed << "/" << total << " cells within 1e-6]";
}

// 16 unimodular lambda, all built-ins, n = 1..3.
void ac6(Outcome& o) {
  std::vector<Scalar> grid;
  for (int k = 0; k < 16; ++k) grid.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 16.0));
  double worst = 0.0;
  int count = 0;
  for (const auto& [label, p] : builtins()) {
    for (int n = 1; n <= 3; ++n) {
      for (const auto& c : spectrum_scan(p, n, grid, 1e-10, seed_for(p))) {
        ++count;
        o.require(c.status == CellStatus::Constructed, std::string(label) + " n=" + std::to_string(n) + " lambda " +
                                                             scalar_text(c.lambda) + " " + c.reason);
        if (c.status == CellStatus::Constructed) worst = std::max(worst, c.residual);
      }
    }
  }
  o.detail << (o.ok ? "" : " ") << count << " cells, max residual " << sci(worst);
}

// Kernel isomorphism round trips, n <= 5, five lambda per built-in.
void ac7(Outcome& o) {
  const std::vector<Scalar> lambdas = {0.5, -1.0, Scalar{0.0, 1.5}, Scalar{0.3, 0.3}, Scalar{-0.9, -0.4}};
  double worst = 0.0, worst_sigma = INFINITY;
  for (const auto& [label, p] : builtins()) {
    for (int n = 1; n <= 5; ++n) {
      for (Scalar l : lambdas) {
        const IsomorphismReport r = check_kernel_isomorphism(p, n, l, 1e-12);
        worst = std::max(worst, r.max_roundtrip_error);
        worst_sigma = std::min(worst_sigma, r.sigma_min);
        const std::string where = std::string(label) + " n=" + std::to_string(n) + " lambda " + scalar_text(l);
        o.require(r.dimension == static_cast<std::size_t>(n), where + " dimension " + std::to_string(r.dimension));
        o.require(r.max_roundtrip_error <= 1e-8, where + " round trip " + sci(r.max_roundtrip_error));
        o.require(r.full_rank, where + " rank deficient");
      }
    }
  }
  o.detail << (o.ok ? "" : " ") << "max round trip " << sci(worst) << ", min sigma " << sci(worst_sigma);
}

// Hypercyclic schedule for the bounded shift, K = 8.
void ac8(Outcome& o) {
  const OperatorPair p = make_bounded_shift(2.0, SpaceTag::lp(2));
  const auto [r, s] = hypercyclic_vector(p, 8, 4096);
  o.require(s.exponents.size() == 8 && s.targets.size() == 8 && s.per_step_residual_bound.size() == 8,
            "schedule has " + std::to_string(s.exponents.size()) + " steps");
  if (!o.ok) return;
  int n_max = 0;
  for (int e : s.exponents) n_max = std::max(n_max, e);
  const OrbitProbeResult probe = orbit_density_probe(p, r.vector, s.targets, n_max);
  for (std::size_t i = 0; i < 8; ++i) {
    const int k = static_cast<int>(i) + 1;
    const double bound = s.per_step_residual_bound[i];
    const double dist = norm(apply_a_power(p, r.vector, s.exponents[i]) - s.targets[i]);
    const std::string where = "k=" + std::to_string(k);
    o.require(bound <= std::ldexp(1.0, 1 - k), where + " bound " + sci(bound));
    o.require(dist <= bound, where + " distance " + sci(dist) + " at n(k) exceeds bound " + sci(bound));
    o.require(probe.matches[i].best_distance <= bound, where + " probe distance " + sci(probe.matches[i].best_distance));
  }
  o.detail << (o.ok ? "" : " ") << "exponents";
  for (int e : s.exponents) o.detail << ' ' << e;
  o.detail << ", bound(8) " << sci(s.per_step_residual_bound.back());
}

// Volterra local spectral radius at f = 1.
void ac9(Outcome& o) {
  const OperatorPair p = make_differentiation(0.0, 1.0);
  const SpectralEstimate e = local_spectral_radius(p, canonical_basis(p.space(), 1), Side::B, 30);
  o.require(e.value <= 0.2, "estimate " + sci(e.value));
  double prev_root = INFINITY, worst = 0.0;
  for (const auto& [n, v] : e.samples) {
    const double expect = oracle::volterra_norm(n);
    worst = std::max(worst, std::abs(v - expect) / expect);
    const double root = std::pow(v, 1.0 / n);
    if (n > 5) o.require(root < prev_root, "root not decreasing at n=" + std::to_string(n));
    prev_root = root;
  }
  o.require(e.samples.size() == 30, std::to_string(e.samples.size()) + " samples");
  o.require(worst <= 1e-12, "norms deviate from 1/n! by " + sci(worst));
  o.detail << (o.ok ? "" : " ") << "estimate " << sci(e.value) << ", 1/n! deviation " << sci(worst);
}

// Verdict classes under powers and multiples.
void ac10(Outcome& o) {
  const auto verdict = [](const OperatorPair& p) { return check_hypotheses(p, 16, 64); };
  for (const auto& [label, p] : builtins()) {
    const DecayClass base = verdict(p).decay_class;
    for (int n : {2, 3}) {
      const DecayClass c = verdict(power_pair(p, n)).decay_class;
      o.require(c == base, std::string(label) + " power " + std::to_string(n) + " gives " + decay_class_name(c));
    }
    for (Scalar l : {Scalar{0.0, 1.0}, std::polar(1.0, 2.0)}) {
      const DecayClass c = verdict(multiple_pair(p, l)).decay_class;
      o.require(c == base, std::string(label) + " unimodular multiple gives " + decay_class_name(c));
    }
    o.detail << (o.ok ? "" : "; ") << label << " " << decay_class_name(base) << (o.ok ? "; " : "");
  }
  // The certified rate is max(alpha |l|, alpha / |l|) = 0.75; the sampled rate
  // only sees the B side (A is nilpotent on Y) and must stay below it.
  const OperatorPair scaled = multiple_pair(make_bounded_shift(2.0, SpaceTag::lp(2)), 1.5);
  const HypothesisVerdict m = verdict(scaled);
  const DecayProfile prof = scaled.decay_profile();
  o.require(m.decay_class == DecayClass::SccUniform, "multiple 1.5 gives " + decay_class_name(m.decay_class));
  o.require(prof.kind == DecayKind::Geometric && std::abs(prof.alpha - 0.75) <= 1e-12,
            "multiple 1.5 certified alpha " + sci(prof.alpha));
  o.require(m.alpha <= prof.alpha, "multiple 1.5 sampled alpha " + sci(m.alpha) + " above certified");
  o.detail << " multiple 1.5 " << decay_class_name(m.decay_class) << " certified alpha " << sci(prof.alpha)
           << " sampled " << sci(m.alpha);
}

// Adjoint probes: forward shift, Volterra, backward shift.
void ac11(Outcome& o) {
  const OperatorPair shift = make_bounded_shift(2.0, SpaceTag::lp(2));
  const OperatorPair forward = right_inverse_operator(shift);
  const AdjointProbeResult f = adjoint_nonhc_probe(forward, standard_adjoint_candidates(forward.space()), 64);
  o.require(f.mode == ProbeMode::EigenvalueFound, "forward shift " + probe_mode_name(f.mode));
  o.require(f.mode != ProbeMode::EigenvalueFound || f.residual <= 1e-8, "forward residual " + sci(f.residual));

  const OperatorPair volterra = right_inverse_operator(make_differentiation(0.0, 1.0));
  const AdjointProbeResult v = adjoint_nonhc_probe(volterra, standard_adjoint_candidates(volterra.space()), 64);
  o.require(v.mode == ProbeMode::BoundedOrbit, "Volterra " + probe_mode_name(v.mode));

  const AdjointProbeResult b = adjoint_nonhc_probe(shift, standard_adjoint_candidates(shift.space()), 64);
  o.require(b.mode == ProbeMode::Inconclusive, "backward shift " + probe_mode_name(b.mode));
  o.detail << (o.ok ? "" : " ") << "forward " << probe_mode_name(f.mode) << " (lambda " << scalar_text(f.lambda)
           << ", residual " << sci(f.residual) << "), Volterra " << probe_mode_name(v.mode) << ", backward "
           << probe_mode_name(b.mode);
}

struct Criterion {
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> body;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"hypothesis (1) on 100 canonical vectors", 1.0, ac1},
      {"cosh/sinh periodic point", 1.0, ac2},
      {"bounded-shift periodic family", 1.0, ac3},
      {"point-spectrum disk", 5.0, ac4},
      {"full-plane spectrum", 10.0, ac5},
      {"unit circle", 5.0, ac6},
      {"kernel isomorphism", 5.0, ac7},
      {"hypercyclic schedule", 5.0, ac8},
      {"Volterra quasinilpotence", 1.0, ac9},
      {"transform coherence", 2.0, ac10},
      {"non-hypercyclicity probes", 1.0, ac11},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only K]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  int failures = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      all[i].body(o);
    } catch (const Error& e) {
      o.require(false, std::string("threw ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < all[i].budget_s, "took " + sci(secs) + " s, budget " + sci(all[i].budget_s) + " s");
    std::printf("AC%zu %s: %s  %s  [%.3f s / %.0f s]\n", i + 1, o.ok ? "PASS" : "FAIL", all[i].title,
                o.detail.str().c_str(), secs, all[i].budget_s);
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
