#pragma once

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vdw/materials.hpp"
#include "vdw/specfun.hpp"

// Sphere reflection coefficients on the imaginary frequency axis.
//
// At omega = iu the arguments z0 = k0 R and z1 = k R are purely imaginary,
// and with j_n(ix) = i^n i_n(x), h_n^(1)(ix) = -(2/pi)(-i)^n k_n(x) every
// i^n phase cancels inside the products entering the traced Green tensor.
// The module therefore works with real coefficients te, tm defined by
//
//   B^M_n(iu) =  (-1)^n * te,      B^N_n(iu) = -(-1)^n * tm,
//
// in terms of the modified-Bessel ratios
//
//   te =  (pi/2) [Di(x1) i(x0) - Di(x0) i(x1)] / [Di(x1) k(x0) - Dk(x0) i(x1)]
//   tm = -(pi/2) [eps i(x1) Di(x0) - i(x0) Di(x1)]
//               / [eps i(x1) Dk(x0) - k(x0) Di(x1)]
//
// where x0 = uR/c, x1 = x0 sqrt(eps(iu)), Df = d/dx [x f_n(x)].  Each brace
// term of the potential series is then (coefficient) x (positive real squared
// radial factor); see green.hpp.  tm > 0 and te >= 0 for eps(iu) > 1, which
// is what makes the potential negative and the force attractive.  A complex-
// arithmetic oracle pins this phase bookkeeping in the test suite.
//
// eps(iu) is real and positive on the imaginary axis, so z1 stays imaginary
// with the positive real root sqrt(eps); no branch-cut handling is needed.

namespace vdw {

struct SphereSystem {
  double radius = 1.0;
  PermittivityModel material;
};

struct MieCoeff {
  ScaledValue te;  // TE working coefficient (phase-stripped B^M_n)
  ScaledValue tm;  // TM working coefficient (phase-stripped B^N_n)
  int n = 0;
  double u = 0.0;
};

namespace detail {

struct BesselTables {
  std::vector<ScaledValue> i_x0, i_x1;  // orders 0..n_max+1
  std::vector<ScaledValue> k_x0;        // orders 0..n_max
  double x0 = 0.0, x1 = 0.0, eps = 1.0;
};

inline BesselTables make_mie_tables(double radius, double eps, double u, int n_max) {
  BesselTables t;
  t.eps = eps;
  t.x0 = u * radius;
  t.x1 = t.x0 * std::sqrt(eps);
  mod_sph_i_array(n_max + 1, t.x0, t.i_x0);
  mod_sph_i_array(n_max + 1, t.x1, t.i_x1);
  mod_sph_k_array(n_max, t.x0, t.k_x0);
  return t;
}

struct MiePair {
  ScaledValue te, tm;
};

inline MiePair mie_from_tables(const BesselTables& t, int n) {
  const ScaledValue i0 = t.i_x0[static_cast<size_t>(n)];
  const ScaledValue i1 = t.i_x1[static_cast<size_t>(n)];
  const ScaledValue di0 = riccati_i_from(t.i_x0, n, t.x0);
  const ScaledValue di1 = riccati_i_from(t.i_x1, n, t.x1);
  const ScaledValue k0 = t.k_x0[static_cast<size_t>(n)];
  const ScaledValue dk0 = riccati_k_from(t.k_x0, n, t.x0);

  // Denominators are sums of same-sign terms (Dk < 0), so they never cancel.
  const ScaledValue num_m = scaled_add(scaled_mul(di1, i0), scaled_mul(scaled_mul(di0, i1), -1.0));
  const ScaledValue den_m = scaled_add(scaled_mul(di1, k0), scaled_mul(scaled_mul(dk0, i1), -1.0));
  const ScaledValue num_n = scaled_add(scaled_mul(scaled_mul(i1, di0), t.eps),
                                       scaled_mul(scaled_mul(i0, di1), -1.0));
  const ScaledValue den_n = scaled_add(scaled_mul(scaled_mul(i1, dk0), t.eps),
                                       scaled_mul(scaled_mul(k0, di1), -1.0));
  assert(den_m.value != 0.0 && den_n.value != 0.0);

  MiePair out;
  out.te = scaled_mul(scaled_div(num_m, den_m), 0.5 * kPi);
  out.tm = scaled_mul(scaled_div(num_n, den_n), -0.5 * kPi);
  assert(std::isfinite(out.te.value) && std::isfinite(out.tm.value));
  return out;
}

}  // namespace detail

/// Reflection coefficients for multipole order n at imaginary frequency u.
inline MieCoeff mie_coeffs(const SphereSystem& sphere, int n, double u) {
  if (n < 1) throw std::domain_error("mie_coeffs: order must be >= 1");
  if (!(u > 0.0)) throw std::domain_error("mie_coeffs: u must be > 0");
  if (!(sphere.radius > 0.0)) throw std::domain_error("mie_coeffs: radius must be > 0");
  const double eps = sphere.material.epsilon_iu(u);
  if (!(eps > 0.0)) throw std::domain_error("mie_coeffs: eps(iu) must be > 0");
  if (eps == 1.0) return {ScaledValue{}, ScaledValue{}, n, u};  // vacuum sphere
  const auto t = detail::make_mie_tables(sphere.radius, eps, u, n);
  const auto p = detail::mie_from_tables(t, n);
  return {p.te, p.tm, n, u};
}

/// Leading small-argument term of tm: for k0 R << 1 (document: below ~0.1)
///
///   tm -> (n+1)(2n+1)/[(2n+1)!!]^2 * (eps-1)/(eps n + n + 1) * (k0 R)^{2n+1}.
///
/// Approximation quality is the caller's concern.
inline double mie_tm_small_argument(const SphereSystem& sphere, int n, double u) {
  if (n < 1) throw std::domain_error("mie_tm_small_argument: order must be >= 1");
  if (!(u > 0.0)) throw std::domain_error("mie_tm_small_argument: u must be > 0");
  const double eps = sphere.material.epsilon_iu(u);
  const double x0 = u * sphere.radius;
  double dfact = 1.0;  // (2n+1)!!
  for (int k = 3; k <= 2 * n + 1; k += 2) dfact *= k;
  return (n + 1.0) * (2.0 * n + 1.0) / (dfact * dfact) * (eps - 1.0) /
         (eps * n + n + 1.0) * std::pow(x0, 2 * n + 1);
}

/// Large-n approximation of the full TM contribution of one multipole to the
/// potential series, (2n+1) x (TM brace terms):
///
///   2 / (u r_A)^3 * (eps-1)/(eps+1) * n(n+1) * (R/r_A)^{2n+1}.
///
/// Valid for n >> (uR)^2/4; used for tail estimation, never in the
/// production sum.
inline double large_n_tm_asymptote(const SphereSystem& sphere, int n, double u, double r_A) {
  if (!(r_A > sphere.radius)) throw std::domain_error("large_n_tm_asymptote: need r_A > R");
  const double eps = sphere.material.epsilon_iu(u);
  const double y = u * r_A;
  return 2.0 / (y * y * y) * (eps - 1.0) / (eps + 1.0) * n * (n + 1.0) *
         std::pow(sphere.radius / r_A, 2 * n + 1);
}

}  // namespace vdw
