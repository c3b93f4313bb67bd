#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vdw/errors.hpp"
#include "vdw/mie.hpp"

// Trace of the sphere's scattering Green tensor at coincident points on the
// imaginary frequency axis: the multipole sum
//
//   V(u, r_A) = sum_{n>=1} (2n+1) { te_n F_h + tm_n [ n(n+1) F_hx + F_dh ] }
//
// so that U(r_A) = -(hbar mu0 / 8 pi^2 c) Int du u^3 alpha(iu) V(u, r_A).
// F_h, F_hx, F_dh are the real squared radial factors below; te, tm come from
// mie.hpp.  V > 0 for eps(iu) > 1, giving U < 0.
//
// Every term shares the exponential envelope exp(-2u(r_A - R)/c); only the
// combined exponents are ever exponentiated, so the sum is overflow-safe up
// to the n_max cap.

namespace vdw {

struct SeriesSpec {
  double rel_tol = 1e-8;  // one order tighter than the default quadrature tol
  int n_max = 20000;
};

struct GreenTraceResult {
  double value = 0.0;
  int n_used = 0;
  double tail_estimate = 0.0;
  bool converged = false;
};

/// The three squared radial factors of the multipole sum at x = u r_A / c,
/// in the real convention matching mie.hpp:
///
///   h_sq        = (4/pi^2) k_n(x)^2          (=  (-1)^n [h_n^(1)(ix)]^2)
///   h_over_x_sq = (4/pi^2) (k_n(x)/x)^2      (= -(-1)^n [h_n^(1)(ix)/(ix)]^2)
///   dh_sq       = (4/pi^2) (d[x k_n(x)]/dx / x)^2
///
/// All three are positive and share the e^{-2x} envelope in their log scales.
struct RadialFactors {
  ScaledValue h_sq, h_over_x_sq, dh_sq;
};

namespace detail {

inline RadialFactors radial_from_table(const std::vector<ScaledValue>& k_arr, int n, double x) {
  constexpr double four_over_pi2 = 4.0 / (kPi * kPi);
  const ScaledValue k = k_arr[static_cast<size_t>(n)];
  const ScaledValue dk = riccati_k_from(k_arr, n, x);
  const double log_x2 = 2.0 * std::log(x);
  RadialFactors f;
  f.h_sq = scaled_mul(scaled_mul(k, k), four_over_pi2);
  f.h_over_x_sq = {f.h_sq.value, f.h_sq.log_scale - log_x2};
  ScaledValue dk2 = scaled_mul(scaled_mul(dk, dk), four_over_pi2);
  f.dh_sq = {dk2.value, dk2.log_scale - log_x2};
  return f;
}

}  // namespace detail

inline RadialFactors radial_factors(int n, double x) {
  if (n < 0) throw std::domain_error("radial_factors: order must be >= 0");
  if (!(x > 0.0)) throw std::domain_error("radial_factors: argument must be > 0");
  std::vector<ScaledValue> k_arr;
  mod_sph_k_array(n, x, k_arr);
  return detail::radial_from_table(k_arr, n, x);
}

/// The two brace pieces of one multipole term (before the 2n+1 weight):
/// te_n F_h and tm_n [n(n+1) F_hx + F_dh].  Exposed for cross-checks against
/// the complex-arithmetic reference route.
struct BraceTerms {
  double te_term = 0.0;
  double tm_term = 0.0;
};

inline BraceTerms brace_terms(const SphereSystem& sphere, double r_A, double u, int n) {
  if (n < 1) throw std::domain_error("brace_terms: order must be >= 1");
  if (!(r_A > sphere.radius)) throw std::domain_error("brace_terms: need r_A > R");
  if (!(u > 0.0)) throw std::domain_error("brace_terms: u must be > 0");
  const double eps = sphere.material.epsilon_iu(u);
  if (eps == 1.0) return {};
  const double y = u * r_A;
  const auto tables = detail::make_mie_tables(sphere.radius, eps, u, n);
  std::vector<ScaledValue> k_y;
  mod_sph_k_array(n, y, k_y);
  const auto mie = detail::mie_from_tables(tables, n);
  const auto rad = detail::radial_from_table(k_y, n, y);
  BraceTerms out;
  out.te_term = scaled_mul(mie.te, rad.h_sq).reconstruct();
  out.tm_term = scaled_add(scaled_mul(scaled_mul(mie.tm, rad.h_over_x_sq), n * (n + 1.0)),
                           scaled_mul(mie.tm, rad.dh_sq))
                    .reconstruct();
  return out;
}

/// Sum the multipole series at (u, r_A), truncating when both
///  (a) the geometric tail bound drops below spec.rel_tol * |sum|, and
///  (b) n has passed the summand peak near n1 = 1/ln(r_A/R) by a factor 5.
/// The summand rises before decaying with ratio ~(R/r_A)^2, so a plain
/// first-small-term stop would be wrong; at higher frequencies the peak
/// shifts beyond n1, which the two-consecutive-decrease requirement covers.
/// Throws SeriesError if the n_max cap is hit first.
inline GreenTraceResult green_trace(const SphereSystem& sphere, double r_A, double u,
                                    const SeriesSpec& spec = {}) {
  if (!(sphere.radius > 0.0)) throw std::domain_error("green_trace: radius must be > 0");
  if (!(r_A > sphere.radius)) throw std::domain_error("green_trace: need r_A > R");
  if (!(u > 0.0)) throw std::domain_error("green_trace: u must be > 0");

  const double eps = sphere.material.epsilon_iu(u);
  if (!(eps > 0.0)) throw std::domain_error("green_trace: eps(iu) must be > 0");
  if (eps == 1.0) return {0.0, 0, 0.0, true};

  const double x0 = u * sphere.radius;
  const double y = u * r_A;
  // The common envelope exp(2 x0 - 2 y) caps every term; beyond this point
  // even the peak multipole sits below ~1e-300 and the trace is zero for any
  // purpose the quadrature can resolve.
  if (2.0 * (y - x0) > 800.0) return {0.0, 0, 0.0, true};

  const double q2 = (sphere.radius / r_A) * (sphere.radius / r_A);
  const double n_peak = 1.0 / std::log(r_A / sphere.radius);
  const int n_gate = std::max(4, static_cast<int>(std::ceil(5.0 * n_peak)));

  int n_cap = std::min(spec.n_max, std::max(32, n_gate + 16));
  for (;;) {
    const auto tables = detail::make_mie_tables(sphere.radius, eps, u, n_cap);
    std::vector<ScaledValue> k_y;
    mod_sph_k_array(n_cap, y, k_y);

    double sum = 0.0;
    double prev_mag = 0.0;
    double tail = 0.0;
    int zero_run = 0;
    int decay_run = 0;
    for (int n = 1; n <= n_cap; ++n) {
      const auto mie = detail::mie_from_tables(tables, n);
      const auto rad = detail::radial_from_table(k_y, n, y);
      const ScaledValue tm_part = scaled_add(
          scaled_mul(scaled_mul(mie.tm, rad.h_over_x_sq), n * (n + 1.0)),
          scaled_mul(mie.tm, rad.dh_sq));
      const double term =
          (2.0 * n + 1.0) *
          (scaled_mul(mie.te, rad.h_sq).reconstruct() + tm_part.reconstruct());
      sum += term;
      const double mag = std::abs(term);

      if (mag == 0.0) {
        // The summand is single-peaked in n, so zeros after a nonzero term
        // mean the tail has underflowed; zeros with sum still 0 mean the
        // whole trace sits below double range.
        if (++zero_run >= 3 && n >= 4) return {sum, n, 0.0, true};
        continue;
      }
      zero_run = 0;
      // A term this far below the accumulated sum can only occur past the
      // peak; the remaining tail is bounded by n_max * mag << rel_tol * |sum|.
      if (n >= 8 && mag <= 1e-250 * std::abs(sum)) return {sum, n, mag, true};
      if (prev_mag > 0.0 && mag < prev_mag) {
        ++decay_run;
        const double ratio = std::min(std::max(mag / prev_mag, q2), 0.999);
        tail = mag * ratio / (1.0 - ratio);
        if (n >= n_gate && decay_run >= 2 && tail <= spec.rel_tol * std::abs(sum))
          return {sum, n, tail, true};
      } else {
        decay_run = 0;
      }
      prev_mag = mag;
    }

    if (n_cap >= spec.n_max)
      throw SeriesError("green_trace: multipole series did not converge within n_max",
                        n_cap, tail);
    n_cap = std::min(2 * n_cap, spec.n_max);
  }
}

}  // namespace vdw
