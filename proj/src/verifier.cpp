#include "hclab/verifier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hclab/enumeration.hpp"
#include "hclab/errors.hpp"
#include "linalg.hpp"

namespace hclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSuperCut = 0.05;
constexpr double kUniformCut = 0.95;
constexpr double kEigenProbeTol = 1e-8;
constexpr double kBoundedRatio = 1.0 + 1e-6;
constexpr double kBoundedGrowth = 10.0;
// (1/n!)^(1/n) over the window [n/2, n] drops below kSuperCut only for n >~ 120.
constexpr int kMinClassifyHorizon = 128;

bool numerical_limit(const Error& e) {
  return e.kind() == ErrorKind::Overflow || e.kind() == ErrorKind::DegreeOverflow;
}

struct SideSummary {
  double r = kInf;
  bool super = false;
  bool tends_to_zero = false;  // strictly decreasing tail ending below its start
};

SideSummary summarize(const OperatorPair& p, const Vector& f, Side side, int n_max, std::vector<std::string>& notes,
                      std::size_t id) {
  SideSummary s;
  try {
    const SpectralEstimate est = local_spectral_radius(p, f, side, n_max);
    if (est.exact_zero) {
      s.r = 0.0;
      s.super = true;
      s.tends_to_zero = true;
      return s;
    }
    s.r = est.value;
    s.super = est.value < kSuperCut;
    const std::size_t first = est.samples.size() / 2;
    bool decreasing = true;
    for (std::size_t i = first + 1; i < est.samples.size(); ++i)
      decreasing = decreasing && est.samples[i].second < est.samples[i - 1].second;
    s.tends_to_zero = decreasing && est.samples.back().second < norm(f);
  } catch (const Error& e) {
    if (!numerical_limit(e)) throw;
    notes.push_back("sample " + std::to_string(id) + (side == Side::A ? " A" : " B") +
                    "-orbit left the representable range: " + e.what());
  }
  return s;
}

}  // namespace

std::string decay_class_name(DecayClass c) {
  switch (c) {
    case DecayClass::SchOnly: return "sch-only";
    case DecayClass::SccGeometric: return "scc-geometric";
    case DecayClass::SccUniform: return "scc-uniform";
    case DecayClass::SccSuper: return "scc-super";
    case DecayClass::Fails: return "fails";
  }
  return "fails";
}

std::string cell_status_name(CellStatus s) {
  switch (s) {
    case CellStatus::Constructed: return "Constructed";
    case CellStatus::Diverged: return "Diverged";
    case CellStatus::Skipped: return "Skipped";
  }
  return "Skipped";
}

std::string prediction_name(Prediction p) {
  return p == Prediction::InsidePaperRegion ? "InsidePaperRegion" : "OutsideOrUnknown";
}

std::string probe_mode_name(ProbeMode m) {
  switch (m) {
    case ProbeMode::BoundedOrbit: return "BoundedOrbit";
    case ProbeMode::EigenvalueFound: return "EigenvalueFound";
    case ProbeMode::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

HypothesisVerdict check_hypotheses(const OperatorPair& p, std::size_t sample_count, int n_max) {
  if (sample_count < 1) raise(ErrorKind::Param, "sample_count must be >= 1");
  HypothesisVerdict v;
  n_max = std::max(n_max, kMinClassifyHorizon);
  const auto samples = canonical_dense_sequence(p.space(), sample_count);

  bool all_super = true;
  bool all_below_one = true;
  bool all_to_zero = true;
  double sup = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vector& f = samples[i];
    SampleEstimate est;
    est.id = i;
    try {
      est.defect = norm(p.apply_a(p.apply_b(f)) - f) / (1.0 + norm(f));
    } catch (const Error& e) {
      if (!numerical_limit(e)) throw;
      est.defect = kInf;
      v.notes.push_back("sample " + std::to_string(i) + ": ABf not representable");
    }
    v.hypothesis1_max_defect = std::max(v.hypothesis1_max_defect, est.defect);

    const SideSummary a = summarize(p, f, Side::A, n_max, v.notes, i);
    const SideSummary b = summarize(p, f, Side::B, n_max, v.notes, i);
    est.r_a = a.r;
    est.r_b = b.r;
    const double m = std::max(a.r, b.r);
    sup = std::max(sup, m);
    all_super = all_super && a.super && b.super;
    all_below_one = all_below_one && m < 1.0;
    all_to_zero = all_to_zero && a.tends_to_zero && b.tends_to_zero;
    v.per_sample.push_back(est);
  }
  v.hypothesis1_ok = v.hypothesis1_max_defect <= kHypothesis1Threshold;
  v.alpha = sup;

  if (!v.hypothesis1_ok) {
    v.decay_class = DecayClass::Fails;
    v.notes.push_back("ABf = f fails on the sampled dense set");
  } else if (all_super) {
    v.decay_class = DecayClass::SccSuper;
  } else if (sup <= kUniformCut) {
    v.decay_class = DecayClass::SccUniform;
  } else if (all_below_one) {
    v.decay_class = DecayClass::SccGeometric;
  } else if (all_to_zero) {
    v.decay_class = DecayClass::SchOnly;
  } else {
    v.decay_class = DecayClass::Fails;
    v.notes.push_back("some sampled orbit does not tend to zero");
  }
  if (p.decay_profile().kind == DecayKind::Geometric)
    v.notes.push_back("analytic decay bound alpha = " + std::to_string(p.decay_profile().alpha));
  v.notes.push_back("estimates are finite-horizon fits over n <= " + std::to_string(n_max));
  return v;
}

double verify_periodic(const OperatorPair& p, SeriesResult& result, int N) {
  if (N < 1) raise(ErrorKind::Param, "period must be >= 1");
  const Vector& f = result.vector;
  result.residual = f.is_zero() ? 0.0 : norm(apply_a_power(p, f, N) - f) / (1.0 + norm(f));
  return result.residual;
}

double verify_eigen(const OperatorPair& p, SeriesResult& result, int n, Scalar lambda) {
  if (n < 1) raise(ErrorKind::Param, "power must be >= 1");
  if (result.vector.is_zero()) raise(ErrorKind::ZeroVector, "eigen check on the zero vector");
  result.residual = eigen_defect(p, result.vector, n, lambda);
  return result.residual;
}

Prediction predicted_region(const OperatorPair& p, int n, Scalar lambda) {
  const DecayProfile& d = p.decay_profile();
  const double mod = std::abs(lambda);
  if (d.kind == DecayKind::Superexponential) {
    if (p.y_in_kernel_union() || mod > 0.0) return Prediction::InsidePaperRegion;
    return Prediction::OutsideOrUnknown;
  }
  if (d.kind == DecayKind::Geometric && d.alpha > 0.0 && d.alpha < 1.0) {
    const double outer = std::pow(d.alpha, -n);
    const double inner = p.y_in_kernel_union() ? 0.0 : std::pow(d.alpha, n);
    const bool inside = mod < outer && (p.y_in_kernel_union() || mod > inner);
    return inside ? Prediction::InsidePaperRegion : Prediction::OutsideOrUnknown;
  }
  return Prediction::OutsideOrUnknown;
}

std::vector<ScanCell> spectrum_scan(const OperatorPair& p, int n, const std::vector<Scalar>& grid, double tol,
                                    const Vector& seed_f) {
  if (grid.empty()) raise(ErrorKind::Param, "scan grid is empty");
  if (n < 1) raise(ErrorKind::Param, "power must be >= 1");
  if (!p.dense_set_member(seed_f)) raise(ErrorKind::NotInDenseSet, "scan seed is not in Y");
  if (seed_f.is_zero()) raise(ErrorKind::ZeroVector, "scan seed is zero");

  std::vector<ScanCell> cells;
  cells.reserve(grid.size());
  for (const Scalar lambda : grid) {
    ScanCell c;
    c.lambda = lambda;
    c.n = n;
    c.predicted = predicted_region(p, n, lambda);
    try {
      SeriesResult r = eigenvector(p, seed_f, n, lambda, tol);
      c.residual = verify_eigen(p, r, n, lambda);
      c.status = CellStatus::Constructed;
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::AnnulusViolation:
        case ErrorKind::NotConvergent: c.status = CellStatus::Diverged; break;
        case ErrorKind::Overflow:
        case ErrorKind::DegreeOverflow:
        case ErrorKind::ToleranceUnreachable: c.status = CellStatus::Skipped; break;
        default: throw;
      }
      c.reason = error_name(e.kind());
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

std::vector<Scalar> rectangular_grid(double re0, double re1, double re_step, double im0, double im1, double im_step) {
  if (!(re_step > 0.0) || !(im_step > 0.0)) raise(ErrorKind::Param, "grid steps must be positive");
  if (re1 < re0 || im1 < im0) raise(ErrorKind::Param, "grid ranges must be increasing");
  const auto count = [](double lo, double hi, double step) {
    return static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  };
  const long nr = count(re0, re1, re_step);
  const long ni = count(im0, im1, im_step);
  if (nr * ni > 1000000) raise(ErrorKind::Param, "grid has more than 10^6 points");
  std::vector<Scalar> g;
  g.reserve(static_cast<std::size_t>(nr * ni));
  for (long i = 0; i < ni; ++i)
    for (long r = 0; r < nr; ++r) g.emplace_back(re0 + static_cast<double>(r) * re_step, im0 + static_cast<double>(i) * im_step);
  return g;
}

OrbitProbeResult orbit_density_probe(const OperatorPair& p, const Vector& f, const std::vector<Vector>& targets,
                                     int n_max) {
  if (targets.empty()) raise(ErrorKind::Param, "orbit probe needs at least one target");
  if (n_max < 0) raise(ErrorKind::Param, "n_max must be >= 0");
  OrbitProbeResult out;
  out.matches.resize(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (targets[t].space() != f.space()) raise(ErrorKind::SpaceMismatch, "target lives in a different space");
    out.matches[t] = {t, 0, kInf};
  }
  Vector g = f;
  for (int k = 0; k <= n_max; ++k) {
    if (k > 0) {
      try {
        g = p.apply_a(g);
      } catch (const Error& e) {
        if (!numerical_limit(e)) throw;
        out.truncated = true;
        break;
      }
    }
    out.last_n = k;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      double d;
      try {
        d = norm(g - targets[t]);
      } catch (const Error& e) {
        if (!numerical_limit(e)) throw;
        d = kInf;
      }
      if (d < out.matches[t].best_distance) out.matches[t] = {t, k, d};
    }
  }
  return out;
}

std::vector<Vector> standard_adjoint_candidates(const SpaceTag& space) {
  std::vector<Vector> c;
  if (space.is_sequence()) {
    for (const double rho : {0.5, 0.25}) {
      std::vector<Scalar> xs(64);
      double v = 1.0;
      for (auto& x : xs) {
        x = v;
        v *= rho;
      }
      c.emplace_back(space, std::move(xs));
    }
  }
  for (auto& v : canonical_dense_sequence(space, 6)) c.push_back(std::move(v));
  return c;
}

AdjointProbeResult adjoint_nonhc_probe(const OperatorPair& p, const std::vector<Vector>& candidates, int n_max) {
  if (!p.has_adjoint()) raise(ErrorKind::NoAdjoint, "pair has no adjoint action");
  if (candidates.empty()) raise(ErrorKind::Param, "no adjoint candidates supplied");
  if (n_max < 2) raise(ErrorKind::Param, "n_max must be >= 2");
  for (const auto& g : candidates)
    if (g.is_zero()) raise(ErrorKind::ZeroVector, "adjoint candidate is zero");

  AdjointProbeResult out;
  out.notes.push_back("probe only checks the supplied candidates; Inconclusive is not evidence of hypercyclicity");
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    const Vector& g = candidates[ci];
    const double g_norm = norm(g);
    std::vector<double> norms{g_norm};
    std::optional<Vector> first_image;
    bool overflowed = false;
    Vector x = g;
    try {
      for (int j = 1; j <= n_max; ++j) {
        x = p.adjoint_apply(x);
        if (j == 1) first_image = x;
        norms.push_back(norm(x));
      }
    } catch (const Error& e) {
      if (!numerical_limit(e)) throw;
      overflowed = true;
      out.notes.push_back("candidate " + std::to_string(ci) + ": adjoint orbit overflowed");
    }

    if (first_image) {
      std::size_t i = 0;
      while (g.at(i) == Scalar{}) ++i;
      const Scalar lambda = first_image->at(i) / g.at(i);
      const double res = norm(axpy(-lambda, g, *first_image)) / g_norm;
      if (res <= kEigenProbeTol) {
        out.mode = ProbeMode::EigenvalueFound;
        out.lambda = lambda;
        out.residual = res;
        out.witness = g;
        out.witness_index = ci;
        out.orbit_norms = std::move(norms);
        return out;
      }
    }
    if (!overflowed) {
      bool bounded = true;
      for (double v : norms) bounded = bounded && v <= kBoundedGrowth * g_norm;
      for (std::size_t j = norms.size() / 2; j + 1 < norms.size() && bounded; ++j) {
        if (norms[j] == 0.0) continue;  // exact zero stays zero
        bounded = norms[j + 1] / norms[j] <= kBoundedRatio;
      }
      if (bounded) {
        out.mode = ProbeMode::BoundedOrbit;
        out.witness = g;
        out.witness_index = ci;
        out.orbit_norms = std::move(norms);
        return out;
      }
    }
    out.orbit_norms = std::move(norms);
  }
  return out;
}

KernelRangeReport kernel_range_report(const OperatorPair& p, int n, std::size_t support_cap) {
  if (n < 1) raise(ErrorKind::Param, "power must be >= 1");
  if (support_cap < 1) raise(ErrorKind::Param, "support_cap must be >= 1");
  KernelRangeReport r;
  const auto kernel = p.kernel_basis(n);
  std::vector<Vector> range;
  for (std::size_t k = 1; k <= support_cap; ++k) {
    try {
      range.push_back(apply_b_power(p, canonical_basis(p.space(), k), n));
    } catch (const Error& e) {
      if (!numerical_limit(e)) throw;
      break;
    }
  }
  const std::size_t rows = std::max({detail::max_size(kernel), detail::max_size(range), std::size_t{1}});
  const Eigen::MatrixXcd qk = detail::orthonormal_span(detail::coefficient_matrix(kernel, rows));
  const Eigen::MatrixXcd qr = detail::orthonormal_span(detail::coefficient_matrix(range, rows));
  r.kernel_dim = static_cast<std::size_t>(qk.cols());
  r.range_dim = static_cast<std::size_t>(qr.cols());
  if (qk.cols() == 0) return r;
  Eigen::MatrixXcd off = qk;
  if (qr.cols() > 0) off -= qr * (qr.adjoint() * qk);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(off);
  r.sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  r.disjoint = *r.sigma_min > kDisjointThreshold;
  return r;
}

bool check_kernel_range_disjoint(const OperatorPair& p, int n, std::size_t support_cap) {
  return kernel_range_report(p, n, support_cap).disjoint;
}

IsomorphismReport check_kernel_isomorphism(const OperatorPair& p, int n, Scalar lambda, double tol) {
  IsomorphismReport r;
  const auto basis = p.kernel_basis(n);
  r.dimension = basis.size();
  std::vector<Vector> images;
  for (const auto& b : basis) {
    Vector img = kernel_isomorphism(p, n, lambda, b, tol);
    r.max_eigen_defect = std::max(r.max_eigen_defect, eigen_defect(p, img, n, lambda));
    const Vector back = kernel_isomorphism_inverse(p, n, lambda, img);
    r.max_roundtrip_error = std::max(r.max_roundtrip_error, norm(back - b) / (1.0 + norm(b)));
    images.push_back(scale(Scalar{1.0 / norm(img), 0.0}, img));
  }
  if (images.empty()) {
    r.full_rank = true;
    return r;
  }
  const Eigen::MatrixXcd m = detail::coefficient_matrix(images, detail::max_size(images));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  r.sigma_min = s.size() < static_cast<Eigen::Index>(images.size()) ? 0.0 : s(s.size() - 1);
  r.full_rank = r.sigma_min > kDisjointThreshold;
  return r;
}

}  // namespace hclab
