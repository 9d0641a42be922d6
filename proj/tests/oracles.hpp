#pragma once

// Closed-form reference values, written independently of the library's
// series and norm code.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;

/// Bounded shift, f = e_1, n = 1: f_lambda = sum_m (lambda/w)^m e_{m+1}.
inline std::vector<C> bounded_shift_eigen(C w, C lambda, int terms) {
  std::vector<C> c(static_cast<std::size_t>(terms));
  C r = lambda / w, v = 1.0;
  for (auto& x : c) {
    x = v;
    v *= r;
  }
  return c;
}

/// Unbounded shift, f = e_1, n = 1: coefficient m is lambda^m w^(-m(m+1)/2).
inline C unbounded_shift_eigen_coeff(double w, C lambda, int m) {
  return std::pow(lambda, m) * std::pow(w, -0.5 * m * (m + 1.0));
}

/// ||f_N - e_1||_2 for the bounded shift periodic point: sqrt(q / (1 - q)), q = |w|^(-2N).
inline double bounded_shift_periodic_gap(double w, int N) {
  const double q = std::pow(w, -2.0 * N);
  return std::sqrt(q / (1.0 - q));
}

/// f(a) cosh(x - a) + f'(a) sinh(x - a)
inline double cosh_sinh(double fa, double dfa, double a, double x) {
  return fa * std::cosh(x - a) + dfa * std::sinh(x - a);
}

/// ||V^n 1||_inf on [0, 1] = 1/n!
inline double volterra_norm(int n) { return std::exp(-std::lgamma(n + 1.0)); }

/// e^{lambda (x - a)}, the n = 1 differentiation eigenvector seeded by 1.
inline C exp_eigen(C lambda, double a, double x) { return std::exp(lambda * (x - a)); }

/// The 513 Chebyshev extrema on [a, b].
inline std::vector<double> cheb_grid(double a, double b) {
  std::vector<double> t(513);
  for (int k = 0; k <= 512; ++k) t[static_cast<std::size_t>(k)] = 0.5 * (a + b) - 0.5 * (b - a) * std::cos(k * std::numbers::pi / 512.0);
  t.front() = a;
  t.back() = b;
  return t;
}

/// Naive long-double references for the reductions.
inline long double naive_l2(const std::vector<C>& x) {
  long double s = 0;
  for (auto z : x) s += static_cast<long double>(z.real()) * z.real() + static_cast<long double>(z.imag()) * z.imag();
  return std::sqrt(s);
}

inline long double naive_l1(const std::vector<C>& x) {
  long double s = 0;
  for (auto z : x) s += std::hypot(static_cast<long double>(z.real()), static_cast<long double>(z.imag()));
  return s;
}

inline double naive_sup_poly(const std::vector<C>& c, const std::vector<double>& t) {
  double m = 0;
  for (double x : t) {
    std::complex<long double> v = 0, p = 1;
    for (auto ck : c) {
      v += std::complex<long double>(ck.real(), ck.imag()) * p;
      p *= x;
    }
    m = std::max(m, static_cast<double>(std::abs(v)));
  }
  return m;
}

}  // namespace oracle
