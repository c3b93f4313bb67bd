#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "vdw/potential.hpp"
#include "vdw/reference.hpp"

// Built-in verification suite behind the `selftest` CLI command: the Legendre
// addition-theorem sums, the modified-Bessel Wronskian, the complex-arithmetic
// Mie oracle, and the asymptote cross-checks.  Tolerances are fixed here; the
// scale parameter exists so a forced-failure path can be exercised.

namespace vdw {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

namespace detail {

inline void add_check(std::vector<CheckResult>& out, const std::string& name,
                      double measured, double tol, double tol_scale) {
  const double t = tol * tol_scale;
  out.push_back({name, measured, t, measured <= t});
}

// (2 - delta_m0) (n-m)!/(n+m)!
inline double addition_coefficient(int n, int m) {
  double f = 1.0;
  for (int k = n - m + 1; k <= n + m; ++k) f *= k;
  return (m == 0 ? 1.0 : 2.0) / f;
}

}  // namespace detail

inline std::vector<CheckResult> run_selftest(double tol_scale = 1.0) {
  std::vector<CheckResult> out;
  const double thetas[] = {0.1, 0.7, 1.3, 2.9};

  // Legendre addition-theorem sums: sum_m C_nm P_n^m(cos t)^2 = 1,
  // sum_m C_nm (m/sin t)^2 P^2 = n(n+1)/2, sum_m C_nm (dP/dt)^2 = n(n+1)/2.
  {
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    for (int n = 1; n <= 20; ++n) {
      for (double th : thetas) {
        const double x = std::cos(th), s = std::sin(th);
        double s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (int m = 0; m <= n; ++m) {
          const double c = detail::addition_coefficient(n, m);
          const double p = legendre_assoc(n, m, x);
          const double dp = legendre_assoc_dtheta(n, m, th);
          s1 += c * p * p;
          s2 += c * (m / s) * (m / s) * p * p;
          s3 += c * dp * dp;
        }
        e1 = std::max(e1, std::abs(s1 - 1.0));
        e2 = std::max(e2, std::abs(s2 - 0.5 * n * (n + 1.0)));
        e3 = std::max(e3, std::abs(s3 - 0.5 * n * (n + 1.0)));
      }
    }
    detail::add_check(out, "legendre.sum_unity", e1, 1e-10, tol_scale);
    detail::add_check(out, "legendre.sum_azimuthal", e2, 1e-10, tol_scale);
    detail::add_check(out, "legendre.sum_theta_derivative", e3, 1e-10, tol_scale);
  }

  // Wronskian i_n k_n' - i_n' k_n = -pi/(2x^2); reconstructed through paired
  // log scales so the exponentials cancel analytically.
  {
    double worst = 0.0;
    const double xs[] = {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
    for (double x : xs) {
      std::vector<ScaledValue> iv, kv;
      mod_sph_i_array(51, x, iv);
      mod_sph_k_array(51, x, kv);
      for (int n = 0; n <= 50; ++n) {
        // i' = i_{n+1} + (n/x) i_n ; k' = -(k_{n+1}) + (n/x) k_n
        const ScaledValue ip = scaled_add(iv[n + 1], scaled_mul(iv[n], n / x));
        const ScaledValue kp = scaled_add(scaled_mul(kv[n + 1], -1.0), scaled_mul(kv[n], n / x));
        const ScaledValue w =
            scaled_add(scaled_mul(iv[n], kp), scaled_mul(scaled_mul(ip, kv[n]), -1.0));
        const double expect = -0.5 * kPi / (x * x);
        worst = std::max(worst, std::abs(w.reconstruct() / expect - 1.0));
      }
    }
    detail::add_check(out, "bessel.wronskian", worst, 1e-10, tol_scale);
  }

  // Small-argument laws i_n -> x^n/(2n+1)!!, k_n -> (pi/2)(2n-1)!!/x^{n+1}.
  {
    const double x = 1e-3;
    double worst = 0.0;
    double dfact_hi = 1.0;  // (2n+1)!!
    double dfact_lo = 1.0;  // (2n-1)!!
    std::vector<ScaledValue> iv, kv;
    mod_sph_i_array(10, x, iv);
    mod_sph_k_array(10, x, kv);
    for (int n = 0; n <= 10; ++n) {
      if (n > 0) {
        dfact_lo = dfact_hi;
        dfact_hi *= 2.0 * n + 1.0;
      } else {
        dfact_hi = 1.0;
      }
      const double lead_i = std::pow(x, n) / dfact_hi;
      const double lead_k = 0.5 * kPi * dfact_lo / std::pow(x, n + 1);
      worst = std::max(worst, std::abs(iv[n].reconstruct() / lead_i - 1.0));
      worst = std::max(worst, std::abs(kv[n].reconstruct() / lead_k - 1.0));
    }
    detail::add_check(out, "bessel.small_argument", worst, 1e-2, tol_scale);
  }

  // Complex-arithmetic Mie oracle: the brace terms assembled from the real
  // phase-stripped coefficients must match the straight complex route, whose
  // imaginary parts must vanish.
  {
    SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.5, 0.1}})};
    const double r_A = 2.0;
    double worst_re = 0.0, worst_im = 0.0;
    const int orders[] = {1, 2, 5, 10, 20, 50};
    const double us[] = {1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0};
    for (int n : orders) {
      for (double u : us) {
        const auto prod = brace_terms(sphere, r_A, u, n);
        const auto orac = ref::brace_complex(sphere.material.epsilon_iu(u),
                                             sphere.radius, r_A, u, n);
        const auto sum = orac.te_term + orac.tm_term;
        const double re = static_cast<double>(sum.real());
        const double im = static_cast<double>(sum.imag());
        // Below ~1e-290 the production value legitimately flushes to zero in
        // double while the long-double oracle does not; skip those points.
        if (std::abs(re) < 1e-290) continue;
        worst_im = std::max(worst_im, std::abs(im / re));
        worst_re = std::max(worst_re, std::abs((prod.te_term + prod.tm_term) / re - 1.0));
      }
    }
    detail::add_check(out, "mie.oracle_equivalence", worst_re, 1e-10, tol_scale);
    detail::add_check(out, "mie.oracle_imag_residue", worst_im, 1e-12, tol_scale);
  }

  // Small-argument crossover of the TM coefficient at k0 R = 1e-2.
  {
    SphereSystem sphere{1.0, PermittivityModel({{1.4142135623730951e4, 1e4, 0.0}})};
    const double u = 1e-2;
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const auto c = mie_coeffs(sphere, n, u);
      const double approx = mie_tm_small_argument(sphere, n, u);
      worst = std::max(worst, std::abs(c.tm.reconstruct() / approx - 1.0));
    }
    detail::add_check(out, "mie.small_argument_crossover", worst, 1e-2, tol_scale);
  }

  // Summed TE/TM ratio -> 0 as u -> 0 (long-distance regime).
  {
    SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.5, 0.1}})};
    double ratio = 0.0;
    const double u = 1e-4;
    double te_sum = 0.0, tm_sum = 0.0;
    for (int n = 1; n <= 8; ++n) {
      const auto b = brace_terms(sphere, 1.5, u, n);
      te_sum += (2.0 * n + 1.0) * b.te_term;
      tm_sum += (2.0 * n + 1.0) * b.tm_term;
    }
    ratio = std::abs(te_sum / tm_sum);
    detail::add_check(out, "green.te_tm_suppression", ratio, 1e-6, tol_scale);
  }

  // Low-frequency regularity of the integrand u^3 alpha(iu) V(u, r_A) for a
  // Drude model: finite and stable at u = 1e-8 and 2e-8.
  {
    SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.0, 0.01}})};
    PolarizabilityModel atom({{0.7, 1.0}});
    auto f = [&](double u) {
      return u * u * u * atom.alpha_iu(u) * green_trace(sphere, 1.5, u).value;
    };
    const double f1 = f(1e-8), f2 = f(2e-8);
    double measured = (std::isfinite(f1) && std::isfinite(f2) && f1 != 0.0)
                          ? std::abs(f2 / f1 - 1.0)
                          : std::numeric_limits<double>::infinity();
    detail::add_check(out, "green.low_frequency_regularity", measured, 1e-3, tol_scale);
  }

  // The long-distance weight integral equals 23/4 exactly.
  {
    const double v = long_distance_weight_integral();
    detail::add_check(out, "quadrature.weight_integral_23_4",
                      std::abs(v / 5.75 - 1.0), 1e-8, tol_scale);
  }

  // Frequency-flat models: the reduced z-integral must reproduce the closed
  // retarded law, and the full pipeline must land within 5% at r_A/R = 200.
  {
    const double w = 1e4;
    PolarizabilityModel atom({{w, 1.0}});
    SphereSystem sphere{1.0, PermittivityModel({{w * 1.4142135623730951, w, 0.0}})};
    const double r_A = 200.0;
    const double closed = retarded_limit(atom.static_polarizability(), 3.0, sphere.radius, r_A);
    const double zint = long_distance_integral(atom, sphere, r_A);
    detail::add_check(out, "potential.retarded_zintegral",
                      std::abs(zint / closed - 1.0), 1e-6, tol_scale);
    const double full = vdw_potential(atom, sphere, r_A).U;
    detail::add_check(out, "potential.retarded_full_pipeline",
                      std::abs(full / closed - 1.0), 5e-2, tol_scale);
  }

  return out;
}

}  // namespace vdw
