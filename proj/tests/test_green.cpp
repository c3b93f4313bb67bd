#include <doctest.h>

#include <cmath>

#include "vdw/green.hpp"

using namespace vdw;

namespace {

SphereSystem dielectric3_sphere(double radius = 1.0) {
  return {radius, PermittivityModel({{std::sqrt(2.0) * 1e4, 1e4, 0.0}})};
}

}  // namespace

TEST_CASE("radial factors") {
  // n = 0 closed form: F_h = e^{-2x}/x^2 from k_0 = (pi/2) e^{-x}/x,
  // and dk_0 = -x k_0 makes F_dh equal F_h
  const double x = 1.3;
  const auto f0 = radial_factors(0, x);
  const double k0sq = std::exp(-2.0 * x) / (x * x);
  CHECK(f0.h_sq.reconstruct() == doctest::Approx(k0sq).epsilon(1e-13));
  CHECK(f0.dh_sq.reconstruct() == doctest::Approx(k0sq).epsilon(1e-13));
  CHECK(f0.h_over_x_sq.reconstruct() == doctest::Approx(k0sq / (x * x)).epsilon(1e-13));

  // n = 1, x = 1 against the closed form h_1^(1)(z) = -(1/z + i/z^2) e^{iz}:
  // h_1^(1)(i) = 2i/e, so F_h = 4 e^{-2}; the derivative factor gives 9 e^{-2}
  const auto f1 = radial_factors(1, 1.0);
  CHECK(f1.h_sq.reconstruct() == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(f1.h_over_x_sq.reconstruct() == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(f1.dh_sq.reconstruct() == doctest::Approx(9.0 * std::exp(-2.0)).epsilon(1e-12));

  // x -> infinity: every factor decays like e^{-2x}
  const auto a = radial_factors(2, 20.0);
  const auto b = radial_factors(2, 21.0);
  CHECK(std::log(a.h_sq.reconstruct() / b.h_sq.reconstruct()) ==
        doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::log(a.dh_sq.reconstruct() / b.dh_sq.reconstruct()) ==
        doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("green_trace vanishes for a vacuum sphere") {
  const SphereSystem vac{1.0, PermittivityModel{}};
  for (double u : {1e-3, 0.3, 5.0}) {
    const auto g = green_trace(vac, 1.5, u);
    CHECK(g.value == 0.0);
    CHECK(g.converged);
  }
  CHECK_THROWS_AS(green_trace(vac, 0.9, 1.0), std::domain_error);
  CHECK_THROWS_AS(green_trace(vac, 1.5, 0.0), std::domain_error);
}

TEST_CASE("far zone is dominated by the n = 1 small-argument term") {
  const auto sphere = dielectric3_sphere();
  const double r_A = 100.0;
  const double u = 1e-2;  // uR = 1e-2
  const auto g = green_trace(sphere, r_A, u);
  CHECK(g.converged);

  // single-term approximation: 3 tm_small [ 2 F_hx + F_dh ] at n = 1
  const double tm1 = mie_tm_small_argument(sphere, 1, u);
  const auto f = radial_factors(1, u * r_A);
  const double approx =
      3.0 * tm1 * (2.0 * f.h_over_x_sq.reconstruct() + f.dh_sq.reconstruct());
  CHECK(g.value == doctest::Approx(approx).epsilon(2e-2));
}

TEST_CASE("near-surface truncation lands near the multipole peak estimate") {
  const auto sphere = dielectric3_sphere();
  const double r_A = 1.01;
  const double n1 = 1.0 / std::log(r_A / sphere.radius);  // ~ 100.5
  const auto g = green_trace(sphere, r_A, 0.3);
  CHECK(g.converged);
  CHECK(g.n_used >= 2);
  CHECK(g.n_used <= 50.0 * n1);
  CHECK(g.n_used >= n1);  // the sum cannot stop before the summand peak
  CHECK(g.tail_estimate <= 1e-8 * std::abs(g.value));
}

TEST_CASE("positivity and monotone geometric tail") {
  const SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.5, 0.1}})};
  const double r_A = 1.3;
  const double q2 = std::pow(sphere.radius / r_A, 2);
  for (double u : {0.05, 0.4, 2.0}) {
    const auto g = green_trace(sphere, r_A, u);
    CHECK(g.value > 0.0);

    // beyond the peak the terms decay with ratio bounded by q^2 (1 + o(1))
    const int n_peak = static_cast<int>(std::ceil(1.0 / std::log(r_A / sphere.radius)));
    double prev = 0.0;
    for (int n = n_peak + 5; n <= n_peak + 25; ++n) {
      const auto b = brace_terms(sphere, r_A, u, n);
      const double term = (2.0 * n + 1.0) * (b.te_term + b.tm_term);
      if (prev != 0.0) {
        const double ratio = std::abs(term / prev);
        CHECK(ratio < 1.0);
        CHECK(ratio < q2 * ((n + 1.0) * (n + 2.0)) / (n * (n - 1.0)) * 1.05);
      }
      prev = term;
    }
  }
}

TEST_CASE("TE/TM ratio vanishes with u") {
  const SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.5, 0.1}})};
  auto ratio_at = [&](double u) {
    double te = 0.0, tm = 0.0;
    for (int n = 1; n <= 8; ++n) {
      const auto b = brace_terms(sphere, 1.5, u, n);
      te += (2.0 * n + 1.0) * b.te_term;
      tm += (2.0 * n + 1.0) * b.tm_term;
    }
    return std::abs(te / tm);
  };
  const double r1 = ratio_at(1e-2);
  const double r2 = ratio_at(1e-3);
  const double r3 = ratio_at(1e-4);
  CHECK(r2 < 0.03 * r1);  // ~ u^2 scaling
  CHECK(r3 < 0.03 * r2);
  CHECK(r3 < 1e-6);
}

TEST_CASE("high-frequency decay of the trace") {
  const SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.5, 0.1}})};
  const double r_A = 1.5;
  // beyond u ~ 10/Delta r the trace falls off exponentially ~ e^{-2 u dr}
  const double dr = r_A - sphere.radius;
  const double u1 = 10.0 / dr, u2 = 12.0 / dr;
  const double g1 = green_trace(sphere, r_A, u1).value;
  const double g2 = green_trace(sphere, r_A, u2).value;
  CHECK(g1 > 0.0);
  CHECK(g2 > 0.0);
  CHECK(std::log(g1 / g2) > 0.8 * 2.0 * (u2 - u1) * dr);
  CHECK(green_trace(sphere, r_A, 2000.0 / dr).value == 0.0);  // hard underflow zone
}

TEST_CASE("closed-form short-distance integrand oracle") {
  // Independent closed form: extrapolating the large-n TM asymptote to all
  // orders turns the sum into sum_n n(n+1) q^{2n+1} = 2 q^3/(1-q^2)^3
  // (second derivative of a geometric series), so
  //   V(u) ~ (2/y^3) (eps-1)/(eps+1) * 2 q^3/(1-q^2)^3.
  const SphereSystem sphere{1.0, PermittivityModel({{1.0, 0.5, 0.1}})};
  const double r_A = 1.01;  // Delta r / R = 1e-2
  const double q = sphere.radius / r_A;
  const double geo = 2.0 * std::pow(q, 3) / std::pow(1.0 - q * q, 3);
  for (double u : {0.2, 1.0, 3.0}) {
    const double eps = sphere.material.epsilon_iu(u);
    const double y = u * r_A;
    const double closed = 2.0 / (y * y * y) * (eps - 1.0) / (eps + 1.0) * geo;
    const auto g = green_trace(sphere, r_A, u);
    CHECK(g.value == doctest::Approx(closed).epsilon(3e-2));
  }
}

TEST_CASE("non-convergence within n_max raises with diagnostics") {
  const auto sphere = dielectric3_sphere();
  try {
    green_trace(sphere, 1.001, 0.5, SeriesSpec{1e-8, 64});
    CHECK(false);
  } catch (const SeriesError& e) {
    CHECK(e.n_used == 64);
    CHECK(std::isfinite(e.tail_estimate));
  }
}
