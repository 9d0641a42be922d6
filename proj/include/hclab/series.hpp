#pragma once

// Series constructions over an operator pair:
//   periodic points      f_N     = sum_{m in Z} B^{mN} f
//   eigenvectors         f_{n,l} = sum_{m in Z} l^m B^{mn} f
//   kernel isomorphism   ker A^n -> ker(A^n - l I)
//   hypercyclic vectors  f       = sum_k B^{n(k)} f_k
// with negative powers of B read as powers of A. Truncation is certified either
// by the pair's analytic bound on ||B^n|| or, lacking one, by the fitted
// local spectral radius.

#include <optional>
#include <utility>
#include <vector>

#include "hclab/pairs.hpp"
#include "hclab/space.hpp"

namespace hclab {

enum class Side { A, B };

struct SpectralEstimate {
  Side side = Side::B;
  double value = 0.0;                           // limsup surrogate for r(T, f)
  std::vector<std::pair<int, double>> samples;  // (n, ||T^n f||)
  double fit_alpha = 0.0;
  double fit_quality = 0.0;  // max relative deviation of the log-linear fit on the tail window
  bool exact_zero = false;
};

struct SeriesResult {
  Vector vector{SpaceTag{}};
  int truncation_M = 0;      // last positive power included
  int truncation_minus = 0;  // last negative power (power of A) included
  double tail_bound = 0.0;
  double residual = 0.0;  // filled in by the verifier
  bool converged = false;
};

struct HypercyclicSchedule {
  std::vector<Vector> targets;
  std::vector<int> exponents;
  std::vector<double> per_step_residual_bound;
};

struct SeriesOptions {
  int max_terms = 10000;
  /// Sum exactly this many positive terms instead of stopping on the certificate.
  std::optional<int> fixed_terms;
  int estimate_n_max = 64;
};

/// Estimates r(A, f) or r(B, f) from ||T^n f||, n = 1..n_max. The value is the
/// larger of the log-linear fit rate over n in [ceil(n_max/2), n_max] and the
/// largest n-th root on that window.
SpectralEstimate local_spectral_radius(const OperatorPair& p, const Vector& f, Side side, int n_max);

/// Smallest k <= cap with A^k f = 0 exactly; nullopt if none (or if the
/// iterates overflow first).
std::optional<int> nilpotency_index(const OperatorPair& p, const Vector& f, int cap = 4096);

SeriesResult periodic_point(const OperatorPair& p, const Vector& f, int N, double tol,
                            const SeriesOptions& options = {});

SeriesResult eigenvector(const OperatorPair& p, const Vector& f, int n, Scalar lambda, double tol,
                         const SeriesOptions& options = {});

Vector kernel_isomorphism(const OperatorPair& p, int n, Scalar lambda, const Vector& f0, double tol);

Vector kernel_isomorphism_inverse(const OperatorPair& p, int n, Scalar lambda, const Vector& f_nl);

std::pair<SeriesResult, HypercyclicSchedule> hypercyclic_vector(const OperatorPair& p, int K,
                                                                int budget_exponent);

/// ||A^n f - lambda f|| / (1 + ||f||)
double eigen_defect(const OperatorPair& p, const Vector& f, int n, Scalar lambda);

/// A^n f (n applications of A).
Vector apply_a_power(const OperatorPair& p, const Vector& f, int n);
Vector apply_b_power(const OperatorPair& p, const Vector& f, int n);

}  // namespace hclab
