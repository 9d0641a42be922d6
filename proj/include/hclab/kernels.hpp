#pragma once

// Data-parallel inner loops shared by the vector arithmetic and norm code.
//
// Every kernel has a portable scalar reference and (on x86-64) an AVX2 variant.
// The variants are required to agree bit-for-bit: reductions use four striped
// partial sums combined as (s0 + s1) + (s2 + s3) in both implementations, and
// the build disables floating-point contraction so no FMA sneaks in.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hclab {
using Scalar = std::complex<double>;
}

namespace hclab::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // y[i] <- alpha * x[i] + y[i] for i < n
  void (*axpy)(Scalar alpha, const Scalar* x, Scalar* y, std::size_t n);
  // max_i |x[i]|
  double (*max_abs)(const Scalar* x, std::size_t n);
  // sum_i |x[i]|
  double (*sum_abs)(const Scalar* x, std::size_t n);
  // sum_i |x[i] / scale|^2
  double (*sum_sq_scaled)(const Scalar* x, std::size_t n, double scale);
  // max_j |sum_k c[k] t[j]^k|  (Horner, highest degree first)
  double (*poly_sup)(const Scalar* c, std::size_t nc, const double* t, std::size_t nt);
};

/// Kernels selected at first use: AVX2 when compiled in and supported by the
/// CPU, unless HCLAB_SIMD=scalar is set in the environment.
const KernelTable& active();

/// Table for a specific ISA, or nullptr when it is not available on this build/CPU.
const KernelTable* table_for(Isa isa);

std::vector<Isa> available_isas();

namespace scalar {
void axpy(Scalar alpha, const Scalar* x, Scalar* y, std::size_t n);
double max_abs(const Scalar* x, std::size_t n);
double sum_abs(const Scalar* x, std::size_t n);
double sum_sq_scaled(const Scalar* x, std::size_t n, double scale);
double poly_sup(const Scalar* c, std::size_t nc, const double* t, std::size_t nt);
}  // namespace scalar

#if defined(HCLAB_HAVE_AVX2)
namespace avx2 {
void axpy(Scalar alpha, const Scalar* x, Scalar* y, std::size_t n);
double max_abs(const Scalar* x, std::size_t n);
double sum_abs(const Scalar* x, std::size_t n);
double sum_sq_scaled(const Scalar* x, std::size_t n, double scale);
double poly_sup(const Scalar* c, std::size_t nc, const double* t, std::size_t nt);
}  // namespace avx2
#endif

/// Overflow-safe modulus m * sqrt(1 + (s/m)^2), m = max(|re|,|im|), s = min(|re|,|im|).
/// Non-finite input maps to +inf. This is the formula both kernel families use,
/// so it is exposed for callers that need a value consistent with the reductions.
inline double cabs(double re, double im) {
  double m = re < 0 ? -re : re;
  double s = im < 0 ? -im : im;
  if (!(m <= 1.7976931348623157e308) || !(s <= 1.7976931348623157e308)) return __builtin_inf();
  if (s > m) {
    double tmp = m;
    m = s;
    s = tmp;
  }
  if (m == 0.0) return 0.0;
  const double r = s / m;
  return m * __builtin_sqrt(1.0 + r * r);
}

}  // namespace hclab::kernels
