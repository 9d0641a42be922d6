#pragma once

// Hypothesis checks, residual verification, point-spectrum scans and orbit probes.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hclab/pairs.hpp"
#include "hclab/series.hpp"
#include "hclab/space.hpp"

namespace hclab {

enum class DecayClass { SchOnly, SccGeometric, SccUniform, SccSuper, Fails };

std::string decay_class_name(DecayClass c);

struct SampleEstimate {
  std::size_t id = 0;  // index in the canonical enumeration
  double r_a = 0.0;
  double r_b = 0.0;
  double defect = 0.0;  // ||ABf - f|| / (1 + ||f||)
};

struct HypothesisVerdict {
  bool hypothesis1_ok = false;
  double hypothesis1_max_defect = 0.0;
  DecayClass decay_class = DecayClass::Fails;
  double alpha = 0.0;  // sup of sampled max(r_A, r_B)
  std::vector<SampleEstimate> per_sample;
  std::vector<std::string> notes;
};

inline constexpr double kHypothesis1Threshold = 1e-12;

/// Samples the first `sample_count` canonical dense vectors. Spectral
/// estimates use the horizon max(n_max, 128).
HypothesisVerdict check_hypotheses(const OperatorPair& p, std::size_t sample_count, int n_max);

/// ||A^N f - f|| / (1 + ||f||); also stored in result.residual.
double verify_periodic(const OperatorPair& p, SeriesResult& result, int N);

/// ||A^n f - lambda f|| / (1 + ||f||); also stored in result.residual.
double verify_eigen(const OperatorPair& p, SeriesResult& result, int n, Scalar lambda);

enum class CellStatus { Constructed, Diverged, Skipped };
enum class Prediction { InsidePaperRegion, OutsideOrUnknown };

std::string cell_status_name(CellStatus s);
std::string prediction_name(Prediction p);

struct ScanCell {
  Scalar lambda;
  int n = 1;
  CellStatus status = CellStatus::Skipped;
  double residual = 0.0;  // meaningful for Constructed
  Prediction predicted = Prediction::OutsideOrUnknown;
  std::string reason;  // error name for Diverged / Skipped
};

/// Region guaranteed by the pair's analytic data alone.
Prediction predicted_region(const OperatorPair& p, int n, Scalar lambda);

std::vector<ScanCell> spectrum_scan(const OperatorPair& p, int n, const std::vector<Scalar>& grid, double tol,
                                    const Vector& seed_f);

/// Row-major grid re0..re1 x im0..im1 (inclusive, with rounding slack).
std::vector<Scalar> rectangular_grid(double re0, double re1, double re_step, double im0, double im1, double im_step);

struct OrbitMatch {
  std::size_t target_index = 0;
  int best_n = 0;
  double best_distance = 0.0;
};

struct OrbitProbeResult {
  std::vector<OrbitMatch> matches;
  int last_n = 0;  // largest exponent actually evaluated
  bool truncated = false;
};

OrbitProbeResult orbit_density_probe(const OperatorPair& p, const Vector& f, const std::vector<Vector>& targets,
                                     int n_max);

enum class ProbeMode { BoundedOrbit, EigenvalueFound, Inconclusive };

std::string probe_mode_name(ProbeMode m);

struct AdjointProbeResult {
  ProbeMode mode = ProbeMode::Inconclusive;
  Scalar lambda;          // EigenvalueFound
  double residual = 0.0;  // EigenvalueFound
  std::optional<Vector> witness;
  std::size_t witness_index = 0;
  std::vector<double> orbit_norms;  // of the witness (or of the last candidate)
  std::vector<std::string> notes;
};

/// Geometric sequences (0.5^(k-1)), (0.25^(k-1)) truncated at 64 terms followed
/// by the first canonical dense vectors; the first canonical vectors only for
/// polynomial spaces.
std::vector<Vector> standard_adjoint_candidates(const SpaceTag& space);

AdjointProbeResult adjoint_nonhc_probe(const OperatorPair& p, const std::vector<Vector>& candidates, int n_max);

struct KernelRangeReport {
  bool disjoint = true;
  /// Smallest singular value of the orthonormal kernel basis projected off the
  /// range; empty when the kernel is trivial.
  std::optional<double> sigma_min;
  std::size_t kernel_dim = 0;
  std::size_t range_dim = 0;
};

inline constexpr double kDisjointThreshold = 1e-8;

KernelRangeReport kernel_range_report(const OperatorPair& p, int n, std::size_t support_cap);
bool check_kernel_range_disjoint(const OperatorPair& p, int n, std::size_t support_cap);

struct IsomorphismReport {
  std::size_t dimension = 0;
  double sigma_min = 0.0;  // of the column-normalized images
  double max_roundtrip_error = 0.0;
  double max_eigen_defect = 0.0;
  bool full_rank = false;
};

/// Maps the kernel basis of A^n through the isomorphism and back.
IsomorphismReport check_kernel_isomorphism(const OperatorPair& p, int n, Scalar lambda, double tol);

}  // namespace hclab
