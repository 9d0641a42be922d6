#include "hclab/space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hclab/errors.hpp"

namespace hclab {

SpaceTag SpaceTag::lp(double p) {
  if (!std::isfinite(p) || p < 1.0) raise(ErrorKind::Param, "l_p needs finite p >= 1");
  return SpaceTag{SpaceKind::Lp, p, 0.0, 1.0};
}

SpaceTag SpaceTag::c0() { return SpaceTag{SpaceKind::C0, 2.0, 0.0, 1.0}; }

SpaceTag SpaceTag::poly(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) raise(ErrorKind::Param, "Poly(a, b) needs a < b");
  return SpaceTag{SpaceKind::Poly, 2.0, a, b};
}

std::string describe(const SpaceTag& space) {
  std::ostringstream os;
  switch (space.kind) {
    case SpaceKind::Lp: os << "l_" << space.p; break;
    case SpaceKind::C0: os << "c_0"; break;
    case SpaceKind::Poly: os << "C[" << space.a << ", " << space.b << "]"; break;
  }
  return os.str();
}

Vector::Vector(SpaceTag space) : space_(space) {}

Vector::Vector(SpaceTag space, std::vector<Scalar> coeffs) : space_(space), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Scalar{}) coeffs_.pop_back();
  for (const Scalar& c : coeffs_) {
    if (!(kernels::cabs(c.real(), c.imag()) <= kOverflowLimit))
      raise(ErrorKind::Overflow, "coefficient magnitude exceeds 1e300");
  }
  if (space_.kind == SpaceKind::Poly) {
    if (coeffs_.size() > kMaxPolyDegree + 1) raise(ErrorKind::DegreeOverflow, "polynomial degree exceeds 400");
  } else if (coeffs_.size() > kMaxSupport) {
    raise(ErrorKind::DegreeOverflow, "sequence support exceeds the representable cap");
  }
}

std::span<const double> chebyshev_grid(double a, double b) {
  thread_local double cached_a = 0.0, cached_b = 0.0;
  thread_local std::vector<double> grid;
  if (grid.empty() || cached_a != a || cached_b != b) {
    grid.resize(kNormGridPoints);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double n = static_cast<double>(kNormGridPoints - 1);
    for (std::size_t j = 0; j < kNormGridPoints; ++j)
      grid[j] = mid + half * std::cos(std::numbers::pi * static_cast<double>(j) / n);
    // pin the endpoints against rounding in the affine map
    grid.front() = b;
    grid.back() = a;
    cached_a = a;
    cached_b = b;
  }
  return grid;
}

double norm(const Vector& v) {
  const auto& k = kernels::active();
  const auto c = v.coeffs();
  double out = 0.0;
  switch (v.space().kind) {
    case SpaceKind::Lp: {
      const double p = v.space().p;
      if (p == 1.0) {
        out = k.sum_abs(c.data(), c.size());
        break;
      }
      const double m = k.max_abs(c.data(), c.size());
      if (m == 0.0) return 0.0;
      if (p == 2.0) {
        out = m * std::sqrt(k.sum_sq_scaled(c.data(), c.size(), m));
      } else {
        double acc = 0.0;
        for (const Scalar& z : c) acc += std::pow(kernels::cabs(z.real(), z.imag()) / m, p);
        out = m * std::pow(acc, 1.0 / p);
      }
      break;
    }
    case SpaceKind::C0:
      out = k.max_abs(c.data(), c.size());
      break;
    case SpaceKind::Poly: {
      const auto grid = chebyshev_grid(v.space().a, v.space().b);
      out = k.poly_sup(c.data(), c.size(), grid.data(), grid.size());
      break;
    }
  }
  if (!(out <= kOverflowLimit)) raise(ErrorKind::Overflow, "norm exceeds 1e300");
  return out;
}

Vector axpy(Scalar alpha, const Vector& x, const Vector& y) {
  if (!(x.space() == y.space()))
    raise(ErrorKind::SpaceMismatch, describe(x.space()) + " vs " + describe(y.space()));
  std::vector<Scalar> out(std::max(x.size(), y.size()));
  std::copy(y.coeffs().begin(), y.coeffs().end(), out.begin());
  if (!x.is_zero()) kernels::active().axpy(alpha, x.coeffs().data(), out.data(), x.size());
  for (const Scalar& z : out) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      raise(ErrorKind::Overflow, "non-finite value in linear combination");
  }
  return Vector(y.space(), std::move(out));
}

Vector scale(Scalar alpha, const Vector& x) { return axpy(alpha, x, Vector(x.space())); }

Vector operator+(const Vector& x, const Vector& y) { return axpy(Scalar{1.0, 0.0}, x, y); }

Vector operator-(const Vector& x, const Vector& y) { return axpy(Scalar{-1.0, 0.0}, y, x); }

Vector canonical_basis(const SpaceTag& space, std::size_t k) {
  if (k == 0) raise(ErrorKind::Param, "canonical basis index starts at 1");
  std::vector<Scalar> c(k);
  c[k - 1] = Scalar{1.0, 0.0};
  return Vector(space, std::move(c));
}

Scalar eval_poly(const Vector& v, double t) {
  const SpaceTag& s = v.space();
  if (s.kind != SpaceKind::Poly) raise(ErrorKind::Domain, "eval_poly needs a polynomial");
  if (!(t >= s.a && t <= s.b)) raise(ErrorKind::Domain, "evaluation point outside [a, b]");
  const auto c = v.coeffs();
  if (c.empty()) return {};
  double re = c.back().real();
  double im = c.back().imag();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    re = re * t + c[k].real();
    im = im * t + c[k].imag();
  }
  return {re, im};
}

}  // namespace hclab
