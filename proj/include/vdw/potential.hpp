#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdw/green.hpp"
#include "vdw/quadrature.hpp"

// Assembly of the van der Waals potential U(r_A) of a ground-state atom
// outside a dielectric or metallic sphere, by imaginary-frequency quadrature
// over the traced scattering Green tensor, plus the closed-form long- and
// short-distance limits and the absorption-sensitivity analysis.
//
// Reduced units hbar = c = eps0 = mu0 = 1 throughout.

namespace vdw {

struct QuadratureSpec {
  double rel_tol = 1e-7;  // in (0, 1e-2]
  double u_scale = 0.0;   // substitution scale; 0 = auto c/(2 r_A)
  int max_panels = 400;
};

struct Diagnostics {
  int n_used = 0;
  int panels = 0;
  double est_error = 0.0;
};

struct PotentialSample {
  double r_A = 0.0;
  double U = 0.0;
  double F = 0.0;  // -dU/dr_A; negative (toward the sphere) for attraction
  Diagnostics diag;
};

inline void validate_quadrature_spec(const QuadratureSpec& q) {
  if (!(q.rel_tol > 0.0) || q.rel_tol > 1e-2)
    throw std::domain_error("QuadratureSpec: rel_tol must lie in (0, 1e-2]");
  if (q.u_scale < 0.0) throw std::domain_error("QuadratureSpec: u_scale must be >= 0");
  if (q.max_panels < 8) throw std::domain_error("QuadratureSpec: max_panels must be >= 8");
}

/// U(r_A) = -(1/8 pi^2) Int_0^inf du u^3 alpha(iu) V(u, r_A), evaluated by
/// adaptive panels after u = u_scale * t/(1-t) with u_scale = c/(2 r_A) by
/// default (the scale below which the integrand carries its mass).
/// The returned sample leaves F = 0; use vdw_force for the force.
inline PotentialSample vdw_potential(const PolarizabilityModel& atom,
                                     const SphereSystem& sphere, double r_A,
                                     const QuadratureSpec& quad = {},
                                     const SeriesSpec& series = {}) {
  validate_quadrature_spec(quad);
  if (!(r_A > sphere.radius))
    throw std::domain_error("vdw_potential: atom must sit outside the sphere (r_A > R)");
  if (r_A < sphere.radius * (1.0 + 1e-4))
    throw std::invalid_argument(
        "vdw_potential: r_A/R - 1 below 1e-4; the multipole cost diverges there, "
        "use short_distance_potential instead");

  const double scale = quad.u_scale > 0.0 ? quad.u_scale : 0.5 / r_A;
  int n_used_max = 0;
  auto integrand = [&](double u) {
    const auto g = green_trace(sphere, r_A, u, series);
    n_used_max = std::max(n_used_max, g.n_used);
    if (g.value == 0.0) return 0.0;
    return u * u * u * atom.alpha_iu(u) * g.value;
  };
  const auto q = integrate_semi_infinite(integrand, scale, quad.rel_tol, quad.max_panels);

  constexpr double pref = 1.0 / (8.0 * kPi * kPi);
  PotentialSample out;
  out.r_A = r_A;
  out.U = -pref * q.value;
  out.diag = {n_used_max, q.panels, pref * q.est_error};
  return out;
}

/// Richardson-extrapolated central difference of a radial function.
/// Returns d f / d r; the spread between the two stencils goes to *err_est.
template <class F>
inline double derivative_richardson(F&& f, double r, double h, double* err_est = nullptr) {
  const double d1 = (f(r + h) - f(r - h)) / (2.0 * h);
  const double h2 = 0.5 * h;
  const double d2 = (f(r + h2) - f(r - h2)) / (2.0 * h2);
  const double extrap = (4.0 * d2 - d1) / 3.0;
  if (err_est) *err_est = std::abs(extrap - d2);
  return extrap;
}

/// F = -dU/dr_A by Richardson-extrapolated central differences of
/// vdw_potential, with step h = max(1e-4 (r_A - R), 1e-9 r_A).  Analytic
/// differentiation of the radial factors would avoid the extra evaluations;
/// left as an upgrade once a second family of derivative formulas is worth
/// carrying.
inline double vdw_force(const PolarizabilityModel& atom, const SphereSystem& sphere,
                        double r_A, const QuadratureSpec& quad = {},
                        const SeriesSpec& series = {}, double* err_est = nullptr) {
  const double h = std::max(1e-4 * (r_A - sphere.radius), 1e-9 * r_A);
  if (!(r_A > sphere.radius + 2.0 * h))
    throw std::domain_error("vdw_force: differentiation step underflows the gap to the surface");
  auto U = [&](double r) { return vdw_potential(atom, sphere, r, quad, series).U; };
  return -derivative_richardson(U, r_A, h, err_est);
}

/// Integral of the long-distance weight [2(1+z)^2 + (1+z+z^2)^2] e^{-2z}
/// over (0, inf); equals 23/4 exactly (termwise Gamma integrals).
inline double long_distance_weight_integral(double rel_tol = 1e-10) {
  auto w = [](double z) {
    if (2.0 * z > 1400.0) return 0.0;
    const double a = 1.0 + z;
    const double b = 1.0 + z + z * z;
    return (2.0 * a * a + b * b) * std::exp(-2.0 * z);
  };
  return integrate_semi_infinite(w, 0.5, rel_tol, 400).value;
}

/// Long-distance (r_A >> R; intended for r_A/R >= 20) reduction of the full
/// series to a single z-integral:
///
///   U = -(R^3 / 4 pi^2 r_A^7) Int dz alpha(iz/r_A) (eps-1)/(eps+2)
///        [2(1+z)^2 + (1+z+z^2)^2] e^{-2z},   eps = eps(iz/r_A).
inline double long_distance_integral(const PolarizabilityModel& atom,
                                     const SphereSystem& sphere, double r_A,
                                     const QuadratureSpec& quad = {}) {
  validate_quadrature_spec(quad);
  if (!(r_A > 0.0)) throw std::domain_error("long_distance_integral: need r_A > 0");
  auto f = [&](double z) {
    if (2.0 * z > 1400.0) return 0.0;
    const double u = z / r_A;
    const double eps = sphere.material.epsilon_iu(u);
    const double a = 1.0 + z;
    const double b = 1.0 + z + z * z;
    return atom.alpha_iu(u) * (eps - 1.0) / (eps + 2.0) *
           (2.0 * a * a + b * b) * std::exp(-2.0 * z);
  };
  const double Iz = integrate_semi_infinite(f, 0.5, quad.rel_tol, quad.max_panels).value;
  const double R3 = sphere.radius * sphere.radius * sphere.radius;
  return -R3 / (4.0 * kPi * kPi * std::pow(r_A, 7)) * Iz;
}

/// Static sphere polarizability 4 pi R^3 (eps0 - 1)/(eps0 + 2).
inline double sphere_static_polarizability(double eps0, double R) {
  return 4.0 * kPi * R * R * R * (eps0 - 1.0) / (eps0 + 2.0);
}

/// Retarded asymptote U = -(23 R^3 alpha0 / 16 pi^2) (eps0-1)/(eps0+2) r_A^-7.
inline double retarded_limit(double alpha0, double eps0, double R, double r_A) {
  if (!(r_A > 0.0)) throw std::domain_error("retarded_limit: need r_A > 0");
  return -23.0 * R * R * R * alpha0 * (eps0 - 1.0) / (eps0 + 2.0) /
         (16.0 * kPi * kPi * std::pow(r_A, 7));
}

/// Metallic sphere: the material factor (eps0-1)/(eps0+2) -> 1.
inline double retarded_limit_metal(double alpha0, double R, double r_A) {
  if (!(r_A > 0.0)) throw std::domain_error("retarded_limit_metal: need r_A > 0");
  return -23.0 * R * R * R * alpha0 / (16.0 * kPi * kPi * std::pow(r_A, 7));
}

namespace detail {

inline double response_quadrature_scale(const PolarizabilityModel& atom,
                                        const PermittivityModel& material) {
  double s = atom.max_omega();
  for (const auto& o : material.oscillators()) {
    s = std::max(s, std::hypot(o.omega_r, o.Omega));
    s = std::max(s, o.gamma);
  }
  return s > 0.0 ? s : 1.0;
}

}  // namespace detail

/// Short-distance (planar-surface) law
///
///   U = -(1/16 pi^2) (Delta r)^-3 * J,
///   J = Int_0^inf du alpha(iu) (eps(iu)-1)/(eps(iu)+1).
///
/// J separates from the distance, so it is computed once per (atom, material)
/// pair and reused across the Delta r grid.
class ShortDistanceLaw {
 public:
  ShortDistanceLaw(const PolarizabilityModel& atom, const PermittivityModel& material,
                   const QuadratureSpec& quad = {}) {
    validate_quadrature_spec(quad);
    auto f = [&](double u) {
      const double eps = material.epsilon_iu(u);
      return atom.alpha_iu(u) * (eps - 1.0) / (eps + 1.0);
    };
    const double scale = quad.u_scale > 0.0
                             ? quad.u_scale
                             : detail::response_quadrature_scale(atom, material);
    const auto q = integrate_semi_infinite(f, scale, quad.rel_tol, quad.max_panels);
    J_ = q.value;
    panels_ = q.panels;
    est_error_ = q.est_error;
  }

  double frequency_integral() const { return J_; }
  int panels() const { return panels_; }
  double integral_error() const { return est_error_; }

  double potential(double delta_r) const {
    if (!(delta_r > 0.0)) throw std::domain_error("ShortDistanceLaw: need Delta r > 0");
    return -J_ / (16.0 * kPi * kPi * delta_r * delta_r * delta_r);
  }

  /// |dU/d Delta r| = 3 J / (16 pi^2 Delta r^4); analytic, no differencing.
  double force_magnitude(double delta_r) const {
    if (!(delta_r > 0.0)) throw std::domain_error("ShortDistanceLaw: need Delta r > 0");
    return 3.0 * J_ / (16.0 * kPi * kPi * delta_r * delta_r * delta_r * delta_r);
  }

 private:
  double J_ = 0.0;
  int panels_ = 0;
  double est_error_ = 0.0;
};

inline double short_distance_potential(const PolarizabilityModel& atom,
                                       const PermittivityModel& material,
                                       double delta_r, const QuadratureSpec& quad = {}) {
  return ShortDistanceLaw(atom, material, quad).potential(delta_r);
}

/// Force magnitudes |dU/dr| of the short-distance law at delta_r for each
/// absorption constant in `gammas` (strictly increasing, applied to every
/// oscillator).  Verifies the monotone decrease d|F|/dgamma < 0 and throws
/// naming the offending pair otherwise.
inline std::vector<double> absorption_monotonicity(const PolarizabilityModel& atom,
                                                   const PermittivityModel& material,
                                                   double delta_r,
                                                   const std::vector<double>& gammas,
                                                   const QuadratureSpec& quad = {}) {
  if (gammas.empty()) throw std::domain_error("absorption_monotonicity: empty gamma list");
  for (size_t i = 1; i < gammas.size(); ++i)
    if (!(gammas[i] > gammas[i - 1]))
      throw std::domain_error("absorption_monotonicity: gammas must be strictly increasing");
  std::vector<double> forces;
  forces.reserve(gammas.size());
  for (double g : gammas)
    forces.push_back(ShortDistanceLaw(atom, material.with_gamma(g), quad)
                         .force_magnitude(delta_r));
  for (size_t i = 1; i < forces.size(); ++i) {
    if (!(forces[i] < forces[i - 1]))
      throw std::runtime_error(
          "absorption_monotonicity: |F| failed to decrease between gamma = " +
          std::to_string(gammas[i - 1]) + " and gamma = " + std::to_string(gammas[i]));
  }
  return forces;
}

/// Normalization of the absorption figure: forces are plotted as C |dU/dr|
/// with C = 16 pi^2 / (sum_n |d_0n|^2 lambda^4), lambda = 2 pi c / Omega_ref.
struct Fig1Normalization {
  double C = 0.0;
  double lambda = 0.0;
};

inline Fig1Normalization fig1_normalization(const PolarizabilityModel& atom,
                                            double Omega_ref) {
  if (!(Omega_ref > 0.0))
    throw std::domain_error("fig1_normalization: reference frequency must be > 0");
  const double d2 = atom.total_d2();
  if (!(d2 > 0.0)) throw std::domain_error("fig1_normalization: sum |d|^2 must be > 0");
  Fig1Normalization n;
  n.lambda = 2.0 * kPi / Omega_ref;
  n.C = 16.0 * kPi * kPi / (d2 * std::pow(n.lambda, 4));
  return n;
}

}  // namespace vdw
