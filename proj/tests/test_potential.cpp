#include <doctest.h>

#include <cmath>

#include "vdw/potential.hpp"

using namespace vdw;

namespace {

// frequency-flat response pair: transition/resonance far above every u that
// carries integrand mass, so alpha and eps are constant where it matters
struct FlatModels {
  PolarizabilityModel atom;
  SphereSystem sphere;
  double alpha0;
  double eps0;
};

FlatModels make_flat(double omega_big, double eps0 = 3.0) {
  const double Omega = omega_big * std::sqrt(eps0 - 1.0);
  FlatModels m{PolarizabilityModel({{omega_big, 1.0}}),
               SphereSystem{1.0, PermittivityModel({{Omega, omega_big, 0.0}})},
               0.0, eps0};
  m.alpha0 = m.atom.static_polarizability();
  return m;
}

}  // namespace

TEST_CASE("zero polarizability and vacuum sphere give U = 0") {
  const SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.5, 0.1}})};
  const PolarizabilityModel none{};
  CHECK(vdw_potential(none, sphere, 1.5).U == 0.0);

  const SphereSystem vac{1.0, PermittivityModel{}};
  const PolarizabilityModel atom({{0.7, 1.0}});
  CHECK(vdw_potential(atom, vac, 1.5).U == 0.0);
}

TEST_CASE("domain guards") {
  const auto m = make_flat(1e3);
  CHECK_THROWS_AS(vdw_potential(m.atom, m.sphere, 0.99), std::domain_error);
  CHECK_THROWS_AS(vdw_potential(m.atom, m.sphere, 1.0 + 1e-5), std::invalid_argument);
  CHECK_THROWS_AS(vdw_potential(m.atom, m.sphere, 2.0, QuadratureSpec{0.5, 0.0, 400}),
                  std::domain_error);
}

TEST_CASE("long-distance weight integral equals 23/4") {
  CHECK(long_distance_weight_integral() == doctest::Approx(5.75).epsilon(1e-10));
}

TEST_CASE("retarded closed forms") {
  // material factor (eps0-1)/(eps0+2) = 2/5 at eps0 = 3
  const double u3 = retarded_limit(1.0, 3.0, 1.0, 2.0);
  CHECK(u3 == doctest::Approx(-23.0 * 0.4 / (16.0 * kPi * kPi * 128.0)).epsilon(1e-14));

  // metal flag vs eps0 = 1e6 agree to 1e-5
  CHECK(retarded_limit(1.0, 1e6, 1.0, 2.0) ==
        doctest::Approx(retarded_limit_metal(1.0, 1.0, 2.0)).epsilon(1e-5));

  // Rewriting through the sphere's static polarizability reproduces the
  // two-atom form alpha_sph alpha / (4 pi eps0)^2 * 23 c / 4 pi * r^-7.
  const double alpha0 = 0.8, eps0 = 3.0, R = 1.4, r = 11.0;
  const double asph = sphere_static_polarizability(eps0, R);
  const double two_atom =
      -asph * alpha0 / std::pow(4.0 * kPi, 2) * (23.0 / (4.0 * kPi)) / std::pow(r, 7);
  CHECK(retarded_limit(alpha0, eps0, R, r) == doctest::Approx(two_atom).epsilon(1e-14));
}

TEST_CASE("long-distance integral against the closed form and the pipeline") {
  const auto m = make_flat(1e6);
  const double r_A = 100.0;
  const double closed = retarded_limit(m.alpha0, m.eps0, m.sphere.radius, r_A);
  const double zroute = long_distance_integral(m.atom, m.sphere, r_A);
  CHECK(zroute == doctest::Approx(closed).epsilon(1e-6));

  // vacuum: zero
  const SphereSystem vac{1.0, PermittivityModel{}};
  CHECK(long_distance_integral(m.atom, vac, r_A) == 0.0);

  // relative deviation from the full pipeline <= 3% at r_A/R = 100
  const double full = vdw_potential(m.atom, m.sphere, r_A).U;
  CHECK(full == doctest::Approx(zroute).epsilon(3e-2));
}

TEST_CASE("force differentiator on a power-law stub") {
  // U = A / r^7 must give back -dU/dr = 7A/r^8 to 1e-6 relative
  const double A = 2.3;
  auto stub = [A](double r) { return A / std::pow(r, 7); };
  const double r = 1.7;
  double err = 0.0;
  const double d = derivative_richardson(stub, r, 1e-4 * r, &err);
  CHECK(-d == doctest::Approx(7.0 * A / std::pow(r, 8)).epsilon(1e-6));
  CHECK(err < 1e-6 * std::abs(d));
}

TEST_CASE("force sign and the short-distance analytic derivative") {
  const PolarizabilityModel atom({{0.7, 1.0}});
  const SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.0, 0.01}})};
  const double r_A = 1.01;  // Delta r / R = 1e-2

  // attractive: F = -dU/dr < 0 for a dielectric/metallic sphere
  const double F = vdw_force(atom, sphere, r_A);
  CHECK(F < 0.0);

  // |F| matches the analytic derivative of the short-distance law, 3K/dr^4,
  // to 2% at Delta r / R = 1e-2
  const ShortDistanceLaw law(atom, sphere.material);
  CHECK(std::abs(F) == doctest::Approx(law.force_magnitude(r_A - 1.0)).epsilon(2e-2));

  CHECK_THROWS_AS(vdw_force(atom, sphere, 1.0 + 1e-10), std::domain_error);
}

TEST_CASE("short-distance law") {
  // perfect-reflector model: (eps-1)/(eps+1) ~ 1 for u << Omega, so
  // U -> -<d^2>/(48 pi) dr^-3 with <d^2> = sum |d|^2
  const PolarizabilityModel atom({{1.0, 1.0}});
  const PermittivityModel mirror({{1e6, 0.0, 0.0}});
  const ShortDistanceLaw law(atom, mirror);
  const double dr = 0.37;
  CHECK(law.potential(dr) ==
        doctest::Approx(-1.0 / (48.0 * kPi * std::pow(dr, 3))).epsilon(1e-5));

  // vacuum gives zero
  const ShortDistanceLaw vac_law(atom, PermittivityModel{});
  CHECK(vac_law.potential(dr) == 0.0);
  CHECK(vac_law.frequency_integral() == 0.0);

  // the frequency integral is cached once: potential scales exactly as dr^-3
  CHECK(law.potential(2.0 * dr) * 8.0 == doctest::Approx(law.potential(dr)).epsilon(1e-15));

  // full pipeline converges onto the coefficient as dr -> 0:
  // U dr^3 within 5% at Delta r / R = 1e-2
  const SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.0, 0.01}})};
  const ShortDistanceLaw drude_law(PolarizabilityModel({{0.7, 1.0}}), sphere.material);
  const double r_A = 1.01;
  const double U_full = vdw_potential(PolarizabilityModel({{0.7, 1.0}}), sphere, r_A).U;
  CHECK(U_full == doctest::Approx(drude_law.potential(r_A - 1.0)).epsilon(5e-2));
}

TEST_CASE("u -> 0 integrand regularity (Drude sphere)") {
  const PolarizabilityModel atom({{0.7, 1.0}});
  const SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.0, 0.01}})};
  auto f = [&](double u) {
    return u * u * u * atom.alpha_iu(u) * green_trace(sphere, 1.5, u).value;
  };
  const double f1 = f(1e-8);
  const double f2 = f(1e-7);
  CHECK(std::isfinite(f1));
  CHECK(f1 > 0.0);
  CHECK(f1 == doctest::Approx(f2).epsilon(1e-2));
}

TEST_CASE("quadrature honesty of the potential") {
  const PolarizabilityModel atom({{0.7, 1.0}});
  const SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.5, 0.1}})};
  for (double r_A : {1.2, 1.9, 3.5}) {
    const auto loose = vdw_potential(atom, sphere, r_A, QuadratureSpec{1e-6, 0.0, 400});
    const auto tight = vdw_potential(atom, sphere, r_A, QuadratureSpec{5e-7, 0.0, 400});
    CHECK(loose.U < 0.0);
    CHECK(std::abs(loose.U - tight.U) <= loose.diag.est_error);
    CHECK(loose.diag.est_error <= 1e-6 * std::abs(loose.U));
  }
}

TEST_CASE("absorption monotonicity of the short-distance force") {
  const PolarizabilityModel atom({{0.7, 1.0}});
  const PermittivityModel metal({{1.0, 0.0, 0.01}});
  const double lambda = 2.0 * kPi;
  const double dr = 1e-2 * lambda;

  SUBCASE("figure parameters: ~30% reduction from gamma = 0.01 to 1") {
    const auto forces = absorption_monotonicity(atom, metal, dr, {1e-2, 1e-1, 1.0});
    REQUIRE(forces.size() == 3);
    CHECK(forces[0] > forces[1]);
    CHECK(forces[1] > forces[2]);
    CHECK(forces[2] / forces[0] == doctest::Approx(0.70).epsilon(0.075));
  }

  SUBCASE("singleton list is trivially ordered") {
    CHECK(absorption_monotonicity(atom, metal, dr, {0.3}).size() == 1);
  }

  SUBCASE("bad gamma lists are rejected") {
    CHECK_THROWS_AS(absorption_monotonicity(atom, metal, dr, {}), std::domain_error);
    CHECK_THROWS_AS(absorption_monotonicity(atom, metal, dr, {0.2, 0.2}), std::domain_error);
  }
}

TEST_CASE("gamma monotonicity through the full pipeline, and distance trend") {
  const PolarizabilityModel atom({{0.7, 1.0}});
  const double lambda = 2.0 * kPi;
  const SphereSystem base{lambda, PermittivityModel({{1.0, 0.0, 0.01}})};

  auto force_at = [&](double gamma, double dr) {
    SphereSystem s{base.radius, base.material.with_gamma(gamma)};
    return std::abs(vdw_force(atom, s, base.radius + dr));
  };

  const double dr_small = 1e-2 * lambda;
  const double dr_large = 1e-1 * lambda;
  const double f_small_lo = force_at(1e-2, dr_small);
  const double f_small_hi = force_at(1.0, dr_small);
  const double f_large_lo = force_at(1e-2, dr_large);
  const double f_large_hi = force_at(1.0, dr_large);

  CHECK(f_small_hi < f_small_lo);
  CHECK(f_large_hi < f_large_lo);

  // the absorption effect shrinks with distance
  const double reduction_small = 1.0 - f_small_hi / f_small_lo;
  const double reduction_large = 1.0 - f_large_hi / f_large_lo;
  CHECK(reduction_large < reduction_small);
}

TEST_CASE("fig1 normalization cancels the dipole scale") {
  const PolarizabilityModel a1({{0.7, 1.0}});
  const PolarizabilityModel a2({{0.7, 123.0}});
  const PermittivityModel metal({{1.0, 0.0, 0.1}});
  const auto n1 = fig1_normalization(a1, 1.0);
  const auto n2 = fig1_normalization(a2, 1.0);
  const double dr = 0.1;
  const double f1 = n1.C * ShortDistanceLaw(a1, metal).force_magnitude(dr);
  const double f2 = n2.C * ShortDistanceLaw(a2, metal).force_magnitude(dr);
  CHECK(f1 == doctest::Approx(f2).epsilon(1e-12));
  CHECK(n1.lambda == doctest::Approx(2.0 * kPi));
}
