#include "qcx/oracle.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "qcx/distortion.hpp"
#include "qcx/errors.hpp"
#include "qcx/extension.hpp"
#include "qcx/random_maps.hpp"

using namespace qcx;

namespace {

// Distance from x to the nearest slope break of h, scanning a wide window.
double kink_distance(const LineHomeo& h, double x) {
  std::vector<double> breaks;
  h.kinks_in(x - 100, x + 100, breaks);
  double best = 1e30;
  for (double b : breaks) best = std::min(best, std::abs(b - x));
  return best;
}

// True when every finite-difference stencil node keeps its probe points
// x, x +- y away from slope breaks by at least margin.  Central differences
// need an even error expansion, which a straddled break destroys.
bool stencil_clear(const LineHomeo& h, double x, double y, double margin) {
  for (double p : {x, x - y, x + y}) {
    if (kink_distance(h, p) < margin) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("brute panels integrate degree-7 polynomials exactly") {
  const auto f = [](double x) { return std::pow(x, 7.0) - 3 * std::pow(x, 4.0) + x; };
  const double exact = 1.0 / 8 - 3.0 / 5 + 1.0 / 2;
  CHECK(brute_integral(f, 0, 1, 2) == doctest::Approx(exact).epsilon(1e-14));
  CHECK(brute_integral(f, 0, 1, 7) == doctest::Approx(exact).epsilon(1e-14));
  CHECK_THROWS_AS(brute_integral(f, 0, 1, 1), InputError);
}

TEST_CASE("brute integration converges on smooth integrands") {
  const auto g = [](double x) { return std::exp(-x * x); };
  const double exact = 1.7724538509055160;  // sqrt(pi), tails below 1e-17
  CHECK(brute_integral(g, -6.5, 6.5, 64) == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("brute 2-d tensor rule on a separable integrand") {
  const auto f = [](double x, double y) { return x * x * y * y * y; };
  CHECK(brute_integral_2d(f, 0, 1, 0, 1, 3) ==
        doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(brute_integral_2d(f, -1, 2, 0, 2, 16) ==
        doctest::Approx(3.0 * 4).epsilon(1e-13));
}

TEST_CASE("dyadic refinement handles an integrable endpoint singularity") {
  const auto f = [](double x) { return 1 / std::sqrt(x); };
  CHECK(brute_integral_dyadic(f, 0, 1, 48, 8) ==
        doctest::Approx(2.0).epsilon(1e-7));
  CHECK_THROWS_AS(brute_integral_dyadic(f, 0, 1, 0, 8), InputError);
}

TEST_CASE("finite differences of the identity extension are exact") {
  // Differences of exact linear data leave only rounding noise, which the
  // Richardson weights amplify a little; 1e-10 is comfortably above it.
  const FdPartials p = fd_jet(LineHomeo::identity(), 1.3, 0.7);
  CHECK(p.u_x == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(p.u_y) < 1e-10);
  CHECK(std::abs(p.v_x) < 1e-10);
  CHECK(p.v_y == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(norm_dilatation(p) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("finite differences match the closed-form jet away from breaks") {
  std::mt19937_64 rng(59);
  int accepted = 0;
  while (accepted < 40) {
    const LineHomeo h = random_pl_map(rng);
    const auto [x, y] = random_point(rng, -8, 8, 1e-2, 6);
    if (!stencil_clear(h, x, y, 1e-2 * y)) continue;
    ++accepted;
    const FdPartials p = fd_jet(h, x, y);
    const ExtensionJet j = jet(h, x, y);
    CHECK(p.u_x == doctest::Approx(j.u_x).epsilon(1e-7));
    CHECK(p.u_y == doctest::Approx(j.u_y).epsilon(1e-7));
    CHECK(p.v_x == doctest::Approx(j.v_x).epsilon(1e-7));
    CHECK(p.v_y == doctest::Approx(j.v_y).epsilon(1e-7));
    CHECK(norm_dilatation(p) == doctest::Approx(j.dilatation).epsilon(1e-7));
  }
}

TEST_CASE("singular-value dilatation agrees with the trace form") {
  // Closed-form jet of the two-slope map at its break.
  const ExtensionJet j = jet(LineHomeo::two_slope(2), 0, 1);
  const FdPartials p{j.u_x, j.u_y, j.v_x, j.v_y};
  CHECK(norm_dilatation(p) == doctest::Approx(j.dilatation).epsilon(1e-14));
  CHECK_THROWS_AS(norm_dilatation(FdPartials{1, 0, 0, -1}), InputError);
  CHECK_THROWS_AS(norm_dilatation(FdPartials{0, 0, 0, 0}), InputError);
}

TEST_CASE("extension values agree with brute-force averaging of the map") {
  // u is the mean of h over [x-y, x+y]; v is half the difference of the
  // one-sided means.  Check against fixed-order panels on a smooth map.
  const LineHomeo h = LineHomeo::power(1.7);
  const auto hf = [&](double t) { return h(t); };
  const double x = 2.1, y = 0.8;
  const auto [u, v] = extend(h, x, y);
  const double mean = brute_integral(hf, x - y, x + y, 96) / (2 * y);
  const double right = brute_integral(hf, x, x + y, 96) / y;
  const double left = brute_integral(hf, x - y, x, 96) / y;
  CHECK(u == doctest::Approx(mean).epsilon(1e-12));
  CHECK(v == doctest::Approx(0.5 * (right - left)).epsilon(1e-11));
}

TEST_CASE("segment averages agree with brute-force panel sums") {
  const LineHomeo h = LineHomeo::two_slope(2);
  const double x = 0.1, y = 1.0;
  const DistortionSample s = segment_average(h, x, y, 1e-11);
  const double right =
      brute_integral([&](double z) { return rho(h, x + z, y - z); }, 0, y / 4,
                     512) *
      4 / y;
  const double left =
      brute_integral([&](double z) { return rho(h, x + z, y + z); }, -y / 4, 0,
                     512) *
      4 / y;
  CHECK(s.avg_right == doctest::Approx(right).epsilon(1e-6));
  CHECK(s.avg_left == doctest::Approx(left).epsilon(1e-6));
}
