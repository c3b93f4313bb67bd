#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

// Reference implementations used only for verification (test suites and the
// selftest command).  Everything here deliberately takes a different route
// from the production code: ascending series and exact finite sums in long
// double instead of scaled recurrences, and straight complex arithmetic on
// the imaginary axis instead of the phase-stripped real formulation.

namespace vdw::ref {

using cplx = std::complex<long double>;
inline constexpr long double kPiL = 3.141592653589793238462643383279503L;

/// i_n(x) from its ascending series sum_k x^{n+2k} / (2^k k! (2n+2k+1)!!).
inline long double mod_sph_i_series(int n, long double x) {
  if (n < 0 || !(x > 0.0L)) throw std::domain_error("mod_sph_i_series: bad arguments");
  long double dfact = 1.0L;  // (2n+1)!!
  for (int k = 3; k <= 2 * n + 1; k += 2) dfact *= k;
  long double term = std::pow(x, n) / dfact;
  long double sum = term;
  const long double x2 = x * x;
  for (int k = 1; k < 4000; ++k) {
    term *= x2 / (2.0L * k * (2.0L * (n + k) + 1.0L));
    sum += term;
    if (term < sum * 1e-24L) break;
  }
  return sum;
}

/// k_n(x) from the exact finite sum
/// (pi / 2x) e^{-x} sum_{j=0}^{n} (n+j)! / (j! (n-j)! (2x)^j).
inline long double mod_sph_k_sum(int n, long double x) {
  if (n < 0 || !(x > 0.0L)) throw std::domain_error("mod_sph_k_sum: bad arguments");
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int j = 0; j < n; ++j) {
    term *= static_cast<long double>(n + j + 1) * static_cast<long double>(n - j) /
            ((j + 1.0L) * 2.0L * x);
    sum += term;
  }
  return kPiL / (2.0L * x) * std::exp(-x) * sum;
}

inline cplx ipow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0L, 0.0L};
    case 1: return {0.0L, 1.0L};
    case 2: return {-1.0L, 0.0L};
    default: return {0.0L, -1.0L};
  }
}

/// j_n(ix) = i^n i_n(x).
inline cplx sph_j_imag(int n, long double x) { return ipow(n) * mod_sph_i_series(n, x); }

/// h_n^(1)(ix) = -(2/pi) (-i)^n k_n(x).
inline cplx sph_h1_imag(int n, long double x) {
  return -(2.0L / kPiL) * ipow(-n) * mod_sph_k_sum(n, x);
}

/// d/dz [z f_n(z)] = z f_{n-1}(z) - n f_n(z) at z = ix, for f = j or h^(1).
inline cplx riccati_j_imag(int n, long double x) {
  const cplx z{0.0L, x};
  const cplx fm1 = (n == 0) ? std::cos(z) / z : sph_j_imag(n - 1, x);
  return z * fm1 - static_cast<long double>(n) * sph_j_imag(n, x);
}

inline cplx riccati_h1_imag(int n, long double x) {
  const cplx z{0.0L, x};
  const cplx fm1 = (n == 0) ? std::exp(cplx{0.0L, 1.0L} * z) / z : sph_h1_imag(n - 1, x);
  return z * fm1 - static_cast<long double>(n) * sph_h1_imag(n, x);
}

struct ComplexMie {
  cplx BM, BN;
};

/// B^M_n, B^N_n straight from their defining expressions at omega = iu.
inline ComplexMie mie_complex(long double eps, long double R, long double u, int n) {
  const long double x0 = u * R;
  const long double x1 = x0 * std::sqrt(eps);
  const cplx j0 = sph_j_imag(n, x0), j1 = sph_j_imag(n, x1);
  const cplx dj0 = riccati_j_imag(n, x0), dj1 = riccati_j_imag(n, x1);
  const cplx h0 = sph_h1_imag(n, x0);
  const cplx dh0 = riccati_h1_imag(n, x0);
  ComplexMie out;
  out.BM = -(dj1 * j0 - dj0 * j1) / (dj1 * h0 - dh0 * j1);
  out.BN = -(eps * j1 * dj0 - j0 * dj1) / (eps * j1 * dh0 - h0 * dj1);
  return out;
}

struct ComplexBrace {
  cplx te_term;  // B^M_n [h_n^(1)(k0 r)]^2
  cplx tm_term;  // B^N_n { n(n+1) [h/(k0 r)]^2 + [(1/k0 r) d(r h)/dr]^2 }
};

/// One multipole's brace terms of the potential series, evaluated in complex
/// arithmetic; on the imaginary axis the sum of both must be real.
inline ComplexBrace brace_complex(long double eps, long double R, long double r_A,
                                  long double u, int n) {
  const auto mie = mie_complex(eps, R, u, n);
  const long double y = u * r_A;
  const cplx zy{0.0L, y};
  const cplx h = sph_h1_imag(n, y);
  const cplx hx = h / zy;
  const cplx dh = riccati_h1_imag(n, y) / zy;
  ComplexBrace out;
  out.te_term = mie.BM * h * h;
  out.tm_term = mie.BN * (static_cast<long double>(n) * (n + 1.0L) * hx * hx + dh * dh);
  return out;
}

/// P_n^m(x) through the exact-coefficient polynomial route:
/// P_n(x) = 2^{-n} sum_k (-1)^k C(n,k) C(2n-2k,n) x^{n-2k}, differentiated m
/// times termwise, then multiplied by (-1)^m (1-x^2)^{m/2} (Condon-Shortley).
inline long double legendre_assoc_poly(int n, int m, long double x) {
  if (m < 0 || m > n) throw std::domain_error("legendre_assoc_poly: need 0 <= m <= n");
  auto binom = [](int a, int b) {
    long double r = 1.0L;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  long double sum = 0.0L;
  for (int k = 0; 2 * k <= n; ++k) {
    const int p = n - 2 * k;  // power of x before differentiation
    if (p < m) continue;
    long double c = ((k % 2) ? -1.0L : 1.0L) * binom(n, k) * binom(2 * n - 2 * k, n);
    for (int j = 0; j < m; ++j) c *= (p - j);  // m-fold derivative
    sum += c * std::pow(x, p - m);
  }
  sum *= std::pow(0.5L, n);
  const long double s = std::pow(1.0L - x * x, 0.5L * m);
  return ((m % 2) ? -1.0L : 1.0L) * s * sum;
}

}  // namespace vdw::ref
