#include "qcx/quadrature.hpp"

#include <cmath>

#include "doctest.h"
#include "qcx/errors.hpp"

using namespace qcx;

TEST_CASE("gk panel integrates low-degree polynomials exactly") {
  // K15 is exact through degree 22; roundoff is the only error left.
  auto f = [](double x) { return ((3 * x - 2) * x + 7) * x * x - 4; };
  const QuadResult r = gk_panel(f, -1.5, 2.0);
  // Antiderivative (3/5)x^5 - (1/2)x^4 + (7/3)x^3 - 4x evaluated at the ends.
  auto F = [](double x) {
    return 0.6 * std::pow(x, 5) - 0.5 * std::pow(x, 4) +
           (7.0 / 3.0) * std::pow(x, 3) - 4 * x;
  };
  CHECK(r.value == doctest::Approx(F(2.0) - F(-1.5)).epsilon(1e-14));
}

TEST_CASE("adaptive gk reaches tight tolerances on smooth integrands") {
  const QuadResult r =
      gk_adaptive([](double x) { return std::exp(-x * x); }, -6, 6, 1e-13);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-13));
}

TEST_CASE("adaptive gk handles an integrable endpoint singularity") {
  const QuadResult r =
      gk_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0, 1, 1e-9,
                  20000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("seeding removes the kink penalty") {
  auto f = [](double x) { return std::abs(x - 0.3); };
  const QuadResult seeded = gk_adaptive_seeded(f, 0, 1, {0.3}, 1e-14);
  CHECK(seeded.converged);
  // Exact: int_0^1 |x - 0.3| = (0.3^2 + 0.7^2) / 2.
  CHECK(seeded.value == doctest::Approx(0.29).epsilon(1e-14));
  CHECK(seeded.cells <= 4);
}

TEST_CASE("gk_integrate throws NumericError with the achieved estimate") {
  // A cell budget of 1 cannot resolve this oscillatory integrand.
  bool threw = false;
  try {
    gk_integrate([](double x) { return std::sin(50 * x * x); }, 0, 5, 1e-12,
                 1);
  } catch (const NumericError& e) {
    threw = true;
    CHECK(e.achieved_error() > 0);
  }
  CHECK(threw);
}

TEST_CASE("adaptive simpson matches closed forms") {
  const double v = simpson_adaptive([](double x) { return std::cos(x); }, 0,
                                    1.0, 1e-12);
  CHECK(v == doctest::Approx(std::sin(1.0)).epsilon(1e-11));
}

TEST_CASE("seeded simpson splits at supplied knots") {
  auto f = [](double x) { return x < 0.25 ? 2.0 * x : 0.5 + (x - 0.25); };
  const double v = simpson_adaptive_seeded(f, 0, 1, {0.25}, 1e-13);
  // Piecewise-linear pieces integrate exactly: 0.0625 + 0.65625.
  CHECK(v == doctest::Approx(0.71875).epsilon(1e-13));
}

TEST_CASE("periodic trapezoid rule converges spectrally") {
  const double twopi = 2 * std::acos(-1.0);
  const double v = periodic_integral(
      [](double t) { return std::exp(std::cos(t)); }, 0, twopi, 1e-12);
  // 2 pi I_0(1), with I_0 the modified Bessel function.
  CHECK(v == doctest::Approx(7.9549265210128452745132196653294).epsilon(1e-12));
}

TEST_CASE("partitioned run reports cells a second pass can reuse") {
  auto f = [](double x) { return 1.0 / (1e-3 + x * x); };
  const PartitionedQuadResult first = gk_adaptive_partitioned(f, -1, 1, 1e-10);
  CHECK(first.result.converged);
  CHECK(first.cells.size() == static_cast<size_t>(first.result.cells));
  const QuadResult second = gk_adaptive_from_cells(
      [&](double x) { return std::abs(f(x) - 500.0); }, first.cells, 1e-8);
  CHECK(second.converged);
  // Cross-check against an independent adaptive run.
  const QuadResult direct = gk_adaptive(
      [&](double x) { return std::abs(f(x) - 500.0); }, -1, 1, 1e-8, 8000);
  CHECK(second.value == doctest::Approx(direct.value).epsilon(1e-7));
}

TEST_CASE("integral additivity across a split point") {
  auto f = [](double x) { return std::exp(x) * std::sin(3 * x); };
  const double whole = gk_integrate(f, -1, 2, 1e-12);
  const double parts =
      gk_integrate(f, -1, 0.4, 1e-12) + gk_integrate(f, 0.4, 2, 1e-12);
  CHECK(whole == doctest::Approx(parts).epsilon(1e-11));
}
