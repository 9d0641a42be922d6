#include "hclab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hclab/enumeration.hpp"
#include "hclab/errors.hpp"
#include "linalg.hpp"

namespace hclab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string fmt_lambda(Scalar l) { return "(" + std::to_string(l.real()) + ", " + std::to_string(l.imag()) + ")"; }

std::string fmt_mod(double m) { return "|lambda| = " + std::to_string(m); }

void require_dense(const OperatorPair& p, const Vector& f) {
  if (!p.dense_set_member(f)) raise(ErrorKind::NotInDenseSet, "seed vector is not in the dense set Y");
}

double log_add(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

// log of sum_{j>=1} |lambda|^j * bound(jn). Throws AnnulusViolation when the
// series diverges. Assumes j -> log bound(jn) is concave (true for the
// geometric and superexponential bounds of the built-ins), so the term ratio
// is nonincreasing.
double log_bound_series(const OperatorPair& p, int n, double mod_lambda) {
  if (mod_lambda == 0.0) return kNegInf;
  const double ll = std::log(mod_lambda);
  double total = kNegInf;
  double prev = kNegInf;
  double prev_ratio = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= 10000000; ++j) {
    const double lb = *p.log_b_norm_bound(j * n);
    if (lb == kNegInf) return total;  // B^{jn} = 0
    const double lt = static_cast<double>(j) * ll + lb;
    total = log_add(total, lt);
    if (j > 1) {
      const double log_ratio = lt - prev;
      if (log_ratio >= 0.0 && log_ratio >= prev_ratio - 1e-12)
        raise(ErrorKind::AnnulusViolation, fmt_mod(mod_lambda) + " is outside the convergence disk certified by ||B^n||");
      if (log_ratio < 0.0) {
        // geometric remainder bound with the current (nonincreasing) ratio
        const double r = std::exp(log_ratio);
        const double rest = lt + log_ratio - std::log1p(-r);
        if (rest < total - 40.0) return log_add(total, rest);
      }
      prev_ratio = log_ratio;
    }
    prev = lt;
  }
  raise(ErrorKind::ToleranceUnreachable, "bound series needs more than 1e7 terms at " + fmt_mod(mod_lambda));
}

struct Certificate {
  bool analytic = false;
  double log_factor = kNegInf;  // analytic: log S with tail <= ||term_M|| * S
  double ratio = 0.0;           // estimated: tail <= ||term_M|| * q / (1 - q)
};

double tail_from(const Certificate& c, double term_norm) {
  if (term_norm == 0.0) return 0.0;
  if (c.analytic) return c.log_factor == kNegInf ? 0.0 : std::exp(std::log(term_norm) + c.log_factor);
  return term_norm * c.ratio / (1.0 - c.ratio);
}

SeriesResult laurent_series(const OperatorPair& p, const Vector& f, int n, Scalar lambda, double tol,
                            const SeriesOptions& opt) {
  require_dense(p, f);
  if (n < 1) raise(ErrorKind::Param, "power n must be >= 1");
  if (!(tol > 0.0)) raise(ErrorKind::Param, "tolerance must be positive");

  SeriesResult out{f, 0, 0, 0.0, 0.0, true};
  if (f.is_zero()) return out;
  const double mod = std::abs(lambda);
  Vector sum = f;

  // Negative powers: lambda^-m A^{mn} f.
  double tail_minus = 0.0;
  const auto nu = nilpotency_index(p, f);
  if (nu.has_value()) {
    if (*nu > n && mod == 0.0)
      raise(ErrorKind::AnnulusViolation, "lambda = 0 needs f in ker A^n (A^n f != 0)");
    Vector term = f;
    for (int m = 1; m * n < *nu; ++m) {
      term = scale(Scalar{1.0, 0.0} / lambda, apply_a_power(p, term, n));
      sum = axpy(Scalar{1.0, 0.0}, term, sum);
      out.truncation_minus = m;
    }
  } else {
    if (mod == 0.0) raise(ErrorKind::AnnulusViolation, "lambda = 0 is outside the annulus for non-nilpotent f");
    const SpectralEstimate est = local_spectral_radius(p, f, Side::A, opt.estimate_n_max);
    const double q = std::pow(est.value, n) / mod;
    if (!(q < 1.0))
      raise(ErrorKind::NotConvergent, "A-side ratio " + std::to_string(q) + " >= 1 at lambda " + fmt_lambda(lambda));
    Vector term = f;
    for (int m = 1;; ++m) {
      if (m > opt.max_terms) raise(ErrorKind::ToleranceUnreachable, "A-side needs more than the term cap");
      term = scale(Scalar{1.0, 0.0} / lambda, apply_a_power(p, term, n));
      sum = axpy(Scalar{1.0, 0.0}, term, sum);
      out.truncation_minus = m;
      const double t = norm(term);
      tail_minus = t * q / (1.0 - q);
      if (term.is_zero() || tail_minus < tol / 4.0) break;
    }
  }

  // Positive powers: lambda^m B^{mn} f.
  Certificate cert;
  if (p.has_b_norm_bound()) {
    cert.analytic = true;
    cert.log_factor = log_bound_series(p, n, mod);
    if (!opt.fixed_terms && mod > 0.0) {
      // a priori check that the cap suffices, using ||term_m|| <= |l|^m ||B^{mn}|| ||f||
      const double lf = std::log(norm(f));
      const double lgoal = std::log(tol / 2.0);
      const double lguard = std::max(cert.log_factor, std::log(mod));
      bool reachable = false;
      for (int m = 1; m <= opt.max_terms; ++m) {
        const double lb = *p.log_b_norm_bound(m * n);
        if (lb == kNegInf || lf + m * std::log(mod) + lb + lguard < lgoal) {
          reachable = true;
          break;
        }
      }
      if (!reachable)
        raise(ErrorKind::ToleranceUnreachable,
              "more than " + std::to_string(opt.max_terms) + " terms needed at lambda " + fmt_lambda(lambda));
    }
  } else {
    const SpectralEstimate est = local_spectral_radius(p, f, Side::B, opt.estimate_n_max);
    cert.ratio = est.exact_zero ? 0.0 : mod * std::pow(est.value, n);
    if (!(cert.ratio < 1.0))
      raise(ErrorKind::NotConvergent,
            "B-side ratio " + std::to_string(cert.ratio) + " >= 1 at lambda " + fmt_lambda(lambda));
  }

  double tail_plus = 0.0;
  Vector term = f;
  const int limit = opt.fixed_terms.value_or(opt.max_terms);
  bool certified = false;
  for (int m = 1; m <= limit; ++m) {
    term = scale(lambda, apply_b_power(p, term, n));
    sum = axpy(Scalar{1.0, 0.0}, term, sum);
    out.truncation_M = m;
    const double t = norm(term);
    tail_plus = tail_from(cert, t);
    // The eigen relation defect of the partial sum is lambda * term_M on the B side.
    if (!opt.fixed_terms && tail_plus < tol / 2.0 && mod * t <= tol / 2.0) {
      certified = true;
      break;
    }
    if (term.is_zero()) {
      certified = true;
      break;
    }
  }
  if (mod == 0.0) certified = true;
  if (!certified && !opt.fixed_terms)
    raise(ErrorKind::ToleranceUnreachable, "term cap reached at lambda " + fmt_lambda(lambda));

  out.vector = std::move(sum);
  out.tail_bound = tail_plus + tail_minus;
  out.converged = out.tail_bound < tol;
  return out;
}

}  // namespace

Vector apply_a_power(const OperatorPair& p, const Vector& f, int n) {
  Vector out = f;
  for (int i = 0; i < n && !out.is_zero(); ++i) out = p.apply_a(out);
  return out;
}

Vector apply_b_power(const OperatorPair& p, const Vector& f, int n) {
  Vector out = f;
  for (int i = 0; i < n && !out.is_zero(); ++i) out = p.apply_b(out);
  return out;
}

std::optional<int> nilpotency_index(const OperatorPair& p, const Vector& f, int cap) {
  Vector h = f;
  try {
    for (int k = 0; k <= cap; ++k) {
      if (h.is_zero()) return k;
      h = p.apply_a(h);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
  }
  return std::nullopt;
}

SpectralEstimate local_spectral_radius(const OperatorPair& p, const Vector& f, Side side, int n_max) {
  require_dense(p, f);
  if (n_max < 8) raise(ErrorKind::Param, "local spectral radius needs n_max >= 8");
  SpectralEstimate est;
  est.side = side;
  if (f.is_zero()) {
    est.exact_zero = true;
    return est;
  }
  Vector g = f;
  for (int k = 1; k <= n_max; ++k) {
    g = side == Side::A ? p.apply_a(g) : p.apply_b(g);
    if (g.is_zero()) {
      est.exact_zero = true;
      est.samples.emplace_back(k, 0.0);
      return est;
    }
    est.samples.emplace_back(k, norm(g));
  }

  const int first = (n_max + 1) / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  double root_max = 0.0;
  for (const auto& [k, v] : est.samples) {
    if (k < first) continue;
    const double x = k;
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    cnt += 1;
    root_max = std::max(root_max, std::pow(v, 1.0 / x));
  }
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / cnt;
  est.fit_alpha = std::exp(slope);
  for (const auto& [k, v] : est.samples) {
    if (k < first) continue;
    const double y = std::log(v);
    const double dev = std::abs(y - (intercept + slope * k)) / std::max(1.0, std::abs(y));
    est.fit_quality = std::max(est.fit_quality, dev);
  }
  est.value = std::max(est.fit_alpha, root_max);
  return est;
}

SeriesResult periodic_point(const OperatorPair& p, const Vector& f, int N, double tol, const SeriesOptions& options) {
  require_dense(p, f);
  try {
    return laurent_series(p, f, N, Scalar{1.0, 0.0}, tol, options);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::AnnulusViolation) raise(ErrorKind::NotConvergent, e.what());
    throw;
  }
}

SeriesResult eigenvector(const OperatorPair& p, const Vector& f, int n, Scalar lambda, double tol,
                         const SeriesOptions& options) {
  require_dense(p, f);
  if (f.is_zero()) raise(ErrorKind::ZeroVector, "eigenvector construction needs a nonzero seed");
  return laurent_series(p, f, n, lambda, tol, options);
}

double eigen_defect(const OperatorPair& p, const Vector& f, int n, Scalar lambda) {
  const Vector lhs = apply_a_power(p, f, n);
  return norm(axpy(-lambda, f, lhs)) / (1.0 + norm(f));
}

Vector kernel_isomorphism(const OperatorPair& p, int n, Scalar lambda, const Vector& f0, double tol) {
  if (f0.is_zero()) return f0;
  require_dense(p, f0);
  const auto basis = p.kernel_basis(n);
  const std::size_t rows = std::max(detail::max_size(basis), f0.size());
  double defect = norm(f0);
  if (!basis.empty()) {
    const Eigen::MatrixXcd k = detail::coefficient_matrix(basis, rows);
    const Eigen::VectorXcd c = detail::coefficient_column(f0, rows);
    const Eigen::VectorXcd coef = k.completeOrthogonalDecomposition().solve(c);
    defect = norm(f0 - detail::from_column(f0.space(), k * coef));
  }
  if (defect / (1.0 + norm(f0)) > 1e-10) raise(ErrorKind::NotInKernel, "f0 is not in span(kernel_basis(n))");

  SeriesResult r;
  try {
    r = laurent_series(p, f0, n, lambda, tol, {});
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::AnnulusViolation) raise(ErrorKind::NotConvergent, e.what());
    throw;
  }
  const double res = norm(axpy(-lambda, r.vector, apply_a_power(p, r.vector, n)));
  if (res > tol * (1.0 + norm(r.vector)))
    raise(ErrorKind::NotConvergent, "isomorphism image misses ker(A^n - lambda I): defect " + std::to_string(res));
  return r.vector;
}

Vector kernel_isomorphism_inverse(const OperatorPair& p, int n, Scalar lambda, const Vector& f_nl) {
  if (eigen_defect(p, f_nl, n, lambda) > 1e-6)
    raise(ErrorKind::NotEigen, "input is not in ker(A^n - lambda I) to 1e-6");
  if (lambda == Scalar{}) return f_nl;
  return axpy(-lambda, apply_b_power(p, f_nl, n), f_nl);
}

std::pair<SeriesResult, HypercyclicSchedule> hypercyclic_vector(const OperatorPair& p, int K, int budget_exponent) {
  if (K < 1 || budget_exponent < 1) raise(ErrorKind::Param, "hypercyclic construction needs K >= 1 and budget >= 1");
  if (p.decay_profile().kind == DecayKind::Unknown)
    raise(ErrorKind::UnsupportedPair, "decay profile must be geometric or superexponential");
  if (!p.y_in_kernel_union())
    raise(ErrorKind::UnsupportedPair, "exact residual bookkeeping needs Y inside the union of ker A^n");

  // Canonical dense enumeration, restricted to vectors whose B-orbit stays representable.
  HypercyclicSchedule sched;
  sched.targets = canonical_dense_sequence(p.space(), static_cast<std::size_t>(K));
  std::vector<int> nil(static_cast<std::size_t>(K));
  std::vector<std::vector<double>> orbit(static_cast<std::size_t>(K));

  for (int k = 0; k < K; ++k) {
    const Vector& fk = sched.targets[static_cast<std::size_t>(k)];
    const auto nu = nilpotency_index(p, fk);
    if (!nu) raise(ErrorKind::UnsupportedPair, "dense-set vector is not annihilated by a power of A");
    nil[static_cast<std::size_t>(k)] = *nu;
    auto& norms = orbit[static_cast<std::size_t>(k)];
    Vector g = fk;
    norms.push_back(norm(g));
    try {
      for (int m = 1; m <= budget_exponent; ++m) {
        g = p.apply_b(g);
        norms.push_back(norm(g));
      }
    } catch (const Error& e) {
      // beyond representable range: exponents past this point are inadmissible
      if (e.kind() != ErrorKind::DegreeOverflow && e.kind() != ErrorKind::Overflow) throw;
    }
  }

  auto orbit_norm = [&](int j, int m) {
    const auto& o = orbit[static_cast<std::size_t>(j)];
    return m < static_cast<int>(o.size()) ? o[static_cast<std::size_t>(m)] : std::numeric_limits<double>::infinity();
  };

  for (int j = 0; j < K; ++j) {
    const double goal = std::ldexp(1.0, -(j + 1));
    const int start = j == 0 ? 1 : sched.exponents.back() + 1;
    int chosen = -1;
    for (int cand = start; cand <= budget_exponent && chosen < 0; ++cand) {
      if (orbit_norm(j, cand) > goal) continue;
      bool ok = true;
      for (int k = 0; k < j && ok; ++k) {
        const int gap = cand - sched.exponents[static_cast<std::size_t>(k)];
        ok = gap >= nil[static_cast<std::size_t>(k)] && orbit_norm(j, gap) <= goal;
      }
      if (ok) chosen = cand;
    }
    if (chosen < 0)
      raise(ErrorKind::BudgetExceeded, "no admissible exponent <= " + std::to_string(budget_exponent) +
                                           " for target " + std::to_string(j + 1));
    sched.exponents.push_back(chosen);
  }

  sched.per_step_residual_bound.assign(static_cast<std::size_t>(K), 0.0);
  for (int k = 0; k < K; ++k) {
    double bound = 0.0;
    for (int j = k + 1; j < K; ++j)
      bound += orbit_norm(j, sched.exponents[static_cast<std::size_t>(j)] - sched.exponents[static_cast<std::size_t>(k)]);
    sched.per_step_residual_bound[static_cast<std::size_t>(k)] = bound;
  }

  Vector f(p.space());
  for (int k = 0; k < K; ++k)
    f = f + apply_b_power(p, sched.targets[static_cast<std::size_t>(k)], sched.exponents[static_cast<std::size_t>(k)]);

  SeriesResult res;
  res.vector = std::move(f);
  res.truncation_M = K;
  res.tail_bound = std::ldexp(1.0, -K);  // each later term has norm <= 2^-k
  res.residual = 0.0;
  res.converged = true;
  return {std::move(res), std::move(sched)};
}

}  // namespace hclab
