#pragma once

// Concrete normed spaces: finite-support sequences in l_p / c_0, and polynomials
// on [a, b] with the maximum norm. Vectors are immutable values.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hclab/kernels.hpp"

namespace hclab {

using Scalar = std::complex<double>;

/// Magnitudes above this are reported as OverflowError instead of stored.
inline constexpr double kOverflowLimit = 1e300;
inline constexpr std::size_t kMaxPolyDegree = 400;
inline constexpr std::size_t kMaxSupport = std::size_t{1} << 20;
/// Chebyshev-extrema points used for the polynomial maximum norm.
inline constexpr std::size_t kNormGridPoints = 513;

enum class SpaceKind { Lp, C0, Poly };

struct SpaceTag {
  SpaceKind kind = SpaceKind::Lp;
  double p = 2.0;  // Lp only
  double a = 0.0;  // Poly only
  double b = 1.0;  // Poly only

  static SpaceTag lp(double p);
  static SpaceTag c0();
  static SpaceTag poly(double a, double b);

  bool is_sequence() const { return kind != SpaceKind::Poly; }
  bool operator==(const SpaceTag&) const = default;
};

std::string describe(const SpaceTag& space);

/// Element of a SpaceTag'd space. For sequence spaces coeffs[k-1] holds x_k;
/// for Poly, coeffs[k] is the coefficient of x^k. Trailing exact zeros are
/// trimmed on construction, so equal vectors have equal coefficient lists.
class Vector {
 public:
  explicit Vector(SpaceTag space);
  Vector(SpaceTag space, std::vector<Scalar> coeffs);

  const SpaceTag& space() const { return space_; }
  std::span<const Scalar> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }

  /// 0-based storage index; zero beyond the stored support.
  Scalar at(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar{}; }

  bool operator==(const Vector&) const = default;

 private:
  SpaceTag space_;
  std::vector<Scalar> coeffs_;
};

double norm(const Vector& v);

/// alpha * x + y, coefficientwise.
Vector axpy(Scalar alpha, const Vector& x, const Vector& y);

Vector scale(Scalar alpha, const Vector& x);
Vector operator+(const Vector& x, const Vector& y);
Vector operator-(const Vector& x, const Vector& y);

/// e_k for sequence spaces, the monomial x^(k-1) for Poly. k >= 1.
Vector canonical_basis(const SpaceTag& space, std::size_t k);

Scalar eval_poly(const Vector& v, double t);

/// The kNormGridPoints Chebyshev extrema mapped to [a, b], endpoints included.
std::span<const double> chebyshev_grid(double a, double b);

}  // namespace hclab
