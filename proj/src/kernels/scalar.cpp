#include "hclab/kernels.hpp"

namespace hclab::kernels::scalar {

namespace {

inline double combine(const double (&acc)[4]) { return (acc[0] + acc[1]) + (acc[2] + acc[3]); }

}  // namespace

void axpy(Scalar alpha, const Scalar* x, Scalar* y, std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double re = (ar * xr - ai * xi) + y[i].real();
    const double im = (ar * xi + ai * xr) + y[i].imag();
    y[i] = Scalar(re, im);
  }
}

double max_abs(const Scalar* x, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = cabs(x[i].real(), x[i].imag());
    if (a > best) best = a;
  }
  return best;
}

double sum_abs(const Scalar* x, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc[i % 4] += cabs(x[i].real(), x[i].imag());
  return combine(acc);
}

double sum_sq_scaled(const Scalar* x, std::size_t n, double scale) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real() / scale;
    const double im = x[i].imag() / scale;
    acc[i % 4] += re * re + im * im;
  }
  return combine(acc);
}

double poly_sup(const Scalar* c, std::size_t nc, const double* t, std::size_t nt) {
  double best = 0.0;
  if (nc == 0) return best;
  for (std::size_t j = 0; j < nt; ++j) {
    double re = c[nc - 1].real();
    double im = c[nc - 1].imag();
    for (std::size_t k = nc - 1; k-- > 0;) {
      re = re * t[j] + c[k].real();
      im = im * t[j] + c[k].imag();
    }
    const double a = cabs(re, im);
    if (a > best) best = a;
  }
  return best;
}

}  // namespace hclab::kernels::scalar
