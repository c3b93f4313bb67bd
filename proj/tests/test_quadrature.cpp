#include <doctest.h>

#include <cmath>

#include "vdw/quadrature.hpp"

using namespace vdw;

TEST_CASE("finite-interval panels on known integrals") {
  auto q = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12, 100);
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(q.panels >= 8);

  auto p = integrate_adaptive([](double x) { return 1.0 / (1e-3 + x * x); }, -1.0, 1.0,
                              1e-10, 400);
  const double expect = 2.0 / std::sqrt(1e-3) * std::atan(1.0 / std::sqrt(1e-3));
  CHECK(p.value == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("semi-infinite transform") {
  auto e1 = integrate_semi_infinite([](double u) { return std::exp(-u); }, 1.0, 1e-10, 400);
  CHECK(e1.value == doctest::Approx(1.0).epsilon(1e-10));

  auto e2 = integrate_semi_infinite([](double u) { return u * u * u * std::exp(-u); },
                                    1.0, 1e-10, 400);
  CHECK(e2.value == doctest::Approx(6.0).epsilon(1e-10));

  // slowly decaying tail, scale far off: the transform plus adaptivity cope
  auto e3 = integrate_semi_infinite([](double u) { return 1.0 / (1.0 + u * u); },
                                    10.0, 1e-10, 400);
  CHECK(e3.value == doctest::Approx(kPi / 2.0).epsilon(1e-9));

  // identically zero integrand terminates immediately with value 0
  auto z = integrate_semi_infinite([](double) { return 0.0; }, 1.0, 1e-10, 400);
  CHECK(z.value == 0.0);
  CHECK(z.est_error == 0.0);
}

TEST_CASE("error estimate honesty") {
  // halving the tolerance moves the result by less than the reported error
  auto f = [](double u) { return std::exp(-u) / (0.3 + u); };
  auto a = integrate_semi_infinite(f, 1.0, 1e-6, 400);
  auto b = integrate_semi_infinite(f, 1.0, 5e-7, 400);
  CHECK(std::abs(a.value - b.value) <= a.est_error);
  CHECK(a.est_error <= 1e-6 * std::abs(a.value));
}

TEST_CASE("panel budget exhaustion raises") {
  // |x|^{-1/2}-type endpoint singularity with an absurd tolerance and a tiny
  // budget must fail loudly, carrying diagnostics
  auto bad = [](double x) { return 1.0 / std::sqrt(std::abs(x) + 1e-300); };
  try {
    integrate_adaptive(bad, 0.0, 1.0, 1e-14, 16);
    CHECK(false);
  } catch (const QuadratureError& e) {
    CHECK(e.panels == 16);
    CHECK(e.est_error > 0.0);
  }
}
