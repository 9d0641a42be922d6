// AVX2 variants of the kernels in scalar.cpp. Compiled with -mavx2 only (no
// -mfma) so products and sums round exactly like the scalar reference.

#include <immintrin.h>

#include <cfloat>

#include "hclab/kernels.hpp"

namespace hclab::kernels::avx2 {

namespace {

inline double combine(__m256d acc, const Scalar* x, std::size_t from, std::size_t n,
                      double (*term)(Scalar, double), double arg) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (std::size_t i = from; i < n; ++i) lanes[i % 4] += term(x[i], arg);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

// Lane-wise twin of kernels::cabs.
inline __m256d cabs_pd(__m256d re, __m256d im) {
  const __m256d ar = abs_pd(re);
  const __m256d ai = abs_pd(im);
  const __m256d big = _mm256_set1_pd(DBL_MAX);
  const __m256d bad = _mm256_or_pd(_mm256_cmp_pd(ar, big, _CMP_NLE_UQ), _mm256_cmp_pd(ai, big, _CMP_NLE_UQ));
  const __m256d swap = _mm256_cmp_pd(ai, ar, _CMP_GT_OQ);
  const __m256d m = _mm256_blendv_pd(ar, ai, swap);
  const __m256d s = _mm256_blendv_pd(ai, ar, swap);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d is_zero = _mm256_cmp_pd(m, zero, _CMP_EQ_OQ);
  const __m256d r = _mm256_div_pd(s, _mm256_blendv_pd(m, _mm256_set1_pd(1.0), is_zero));
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d out = _mm256_mul_pd(m, _mm256_sqrt_pd(_mm256_add_pd(one, _mm256_mul_pd(r, r))));
  out = _mm256_blendv_pd(out, zero, is_zero);
  return _mm256_blendv_pd(out, _mm256_set1_pd(__builtin_inf()), bad);
}

// Splits two complex values (four doubles, interleaved re/im) into re and im lanes
// for elements {i, i+1, i+2, i+3}.
inline void load4(const Scalar* x, __m256d& re, __m256d& im) {
  const double* p = reinterpret_cast<const double*>(x);
  const __m256d a = _mm256_loadu_pd(p);      // r0 i0 r1 i1
  const __m256d b = _mm256_loadu_pd(p + 4);  // r2 i2 r3 i3
  const __m256d lo = _mm256_permute2f128_pd(a, b, 0x20);  // r0 i0 r2 i2
  const __m256d hi = _mm256_permute2f128_pd(a, b, 0x31);  // r1 i1 r3 i3
  re = _mm256_unpacklo_pd(lo, hi);  // r0 r1 r2 r3
  im = _mm256_unpackhi_pd(lo, hi);  // i0 i1 i2 i3
}

double abs_term(Scalar v, double) { return cabs(v.real(), v.imag()); }

double sq_term(Scalar v, double scale) {
  const double re = v.real() / scale;
  const double im = v.imag() / scale;
  return re * re + im * im;
}

}  // namespace

void axpy(Scalar alpha, const Scalar* x, Scalar* y, std::size_t n) {
  // Interleaved layout: lane pattern (re, im, re, im). For each complex pair
  //   re' = ar*xr - ai*xi + yr,  im' = ar*xi + ai*xr + yi
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const __m256d sign = _mm256_setr_pd(-0.0, 0.0, -0.0, 0.0);
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(px + 2 * i);               // xr xi
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);              // xi xr
    const __m256d p1 = _mm256_mul_pd(ar, xv);                      // ar*xr, ar*xi
    const __m256d p2 = _mm256_xor_pd(_mm256_mul_pd(ai, xs), sign); // -ai*xi, ai*xr
    // ar*xr - ai*xi is computed as ar*xr + (-(ai*xi)), which rounds identically.
    const __m256d s = _mm256_add_pd(p1, p2);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(s, _mm256_loadu_pd(py + 2 * i)));
  }
  if (i < n) scalar::axpy(alpha, x + i, y + i, n - i);
}

double max_abs(const Scalar* x, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d re, im;
    load4(x + i, re, im);
    best = _mm256_max_pd(cabs_pd(re, im), best);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = lanes[0];
  for (int k = 1; k < 4; ++k)
    if (lanes[k] > out) out = lanes[k];
  for (; i < n; ++i) {
    const double a = cabs(x[i].real(), x[i].imag());
    if (a > out) out = a;
  }
  return out;
}

double sum_abs(const Scalar* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d re, im;
    load4(x + i, re, im);
    acc = _mm256_add_pd(acc, cabs_pd(re, im));
  }
  return combine(acc, x, i, n, abs_term, 0.0);
}

double sum_sq_scaled(const Scalar* x, std::size_t n, double scale) {
  const __m256d sv = _mm256_set1_pd(scale);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d re, im;
    load4(x + i, re, im);
    re = _mm256_div_pd(re, sv);
    im = _mm256_div_pd(im, sv);
    acc = _mm256_add_pd(acc, _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
  }
  return combine(acc, x, i, n, sq_term, scale);
}

double poly_sup(const Scalar* c, std::size_t nc, const double* t, std::size_t nt) {
  if (nc == 0) return 0.0;
  __m256d best = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= nt; j += 4) {
    const __m256d tv = _mm256_loadu_pd(t + j);
    __m256d re = _mm256_set1_pd(c[nc - 1].real());
    __m256d im = _mm256_set1_pd(c[nc - 1].imag());
    for (std::size_t k = nc - 1; k-- > 0;) {
      re = _mm256_add_pd(_mm256_mul_pd(re, tv), _mm256_set1_pd(c[k].real()));
      im = _mm256_add_pd(_mm256_mul_pd(im, tv), _mm256_set1_pd(c[k].imag()));
    }
    best = _mm256_max_pd(cabs_pd(re, im), best);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = lanes[0];
  for (int k = 1; k < 4; ++k)
    if (lanes[k] > out) out = lanes[k];
  if (j < nt) {
    const double rest = scalar::poly_sup(c, nc, t + j, nt - j);
    if (rest > out) out = rest;
  }
  return out;
}

}  // namespace hclab::kernels::avx2
