#include "qcx/bmo.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "qcx/errors.hpp"
#include "qcx/oracle.hpp"

using namespace qcx;

namespace {

bool mentions(const std::exception& e, const char* needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

// Independent polar reference for the ball mean: composite panels in both
// the radius and the angle, no adaptivity shared with the implementation.
double brute_ball_average(const PlaneField& A, double x, double y) {
  const double r = y / 2;
  const double two_pi = 2 * 3.1415926535897932384626433832795;
  const auto ring = [&](double s) {
    return brute_integral(
               [&](double th) {
                 return A(x + s * std::cos(th), y + s * std::sin(th));
               },
               0, two_pi, 128) /
           two_pi;
  };
  return brute_integral([&](double s) { return s * ring(s); }, 0, r, 128) *
         2 / (r * r);
}

}  // namespace

TEST_CASE("ball and rectangle averages preserve constants exactly") {
  const PlaneField A = PlaneField::constant(2.5);
  CHECK(ball_average(A, 0, 1, 1e-10) == 2.5);
  CHECK(ball_average(A, -3, 0.125, 1e-10) == 2.5);
  CHECK(ball_average(A, 7, 40, 1e-10) == 2.5);
  CHECK(rect_average(A, 0, 1, 1e-10) == 2.5);
  CHECK(rect_average(A, 5, 2e-3, 1e-10) == 2.5);
  const BmoEstimate est = bmo_seminorm(A, dyadic_ball_family(0, 1), 1e-8);
  CHECK(est.seminorm_lower_bound == 0.0);
  for (const BallOscillation& b : est.balls) {
    CHECK(b.mean == 2.5);
    CHECK(b.oscillation == 0.0);
  }
}

TEST_CASE("ball average symmetry examples") {
  const PlaneField height{[](double, double y) { return y; }, "y"};
  CHECK(ball_average(height, 0, 1, 1e-12) == doctest::Approx(1.0).epsilon(1e-12));
  const PlaneField xsq{[](double x, double) { return x * x; }, "x^2"};
  // Mean of x^2 over a disk of radius r about the y axis is r^2 / 4.
  CHECK(ball_average(xsq, 0, 1, 1e-12) ==
        doctest::Approx(1.0 / 16).epsilon(1e-11));
  const PlaneField linear{[](double x, double) { return x; }, "x"};
  CHECK(ball_average(linear, 4, 2, 1e-12) ==
        doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("rectangle average shift identity and x symmetry") {
  const double c0 = 1 - 1.5 * std::log(1.5) - 0.5 * std::log(2.0);
  const PlaneField A = PlaneField::log_inv_y();
  const double samples[][2] = {{0, 1}, {2, 0.5}, {-3, 0.25}, {1, 2e-3}};
  for (const auto& zy : samples) {
    const double shifted = rect_average(A, zy[0], zy[1], 1e-11);
    CHECK(shifted - std::log(1 / zy[1]) ==
          doctest::Approx(c0).epsilon(1e-9));
  }
  const PlaneField linear{[](double x, double) { return x; }, "x"};
  CHECK(rect_average(linear, -2.5, 0.7, 1e-12) ==
        doctest::Approx(-2.5).epsilon(1e-12));
}

TEST_CASE("averages match the brute oracle on a wavy field") {
  const PlaneField A = PlaneField::sin_log_inv_y();
  const double expected_ball = brute_ball_average(A, 0.5, 0.8);
  CHECK(ball_average(A, 0.5, 0.8, 1e-10) ==
        doctest::Approx(expected_ball).epsilon(1e-9));
  const double x = -1.25;
  const double y = 0.3;
  const double expected_rect =
      brute_integral_2d([&](double u, double v) { return A(u, v); }, x - y,
                        x + y, y / 2, 1.5 * y, 96) /
      (2 * y * y);
  CHECK(rect_average(A, x, y, 1e-10) ==
        doctest::Approx(expected_rect).epsilon(1e-9));
}

TEST_CASE("log field ball statistics are scale invariant with known values") {
  const PlaneField A = PlaneField::log_inv_y();
  // Shift of the ball average against log(1/y), a fixed constant at every
  // center because rescaling the ball only adds a constant to the field.
  const double c1 = 0.033438079332828497;
  CHECK(ball_average(A, 0, 1, 1e-10) == doctest::Approx(c1).epsilon(1e-9));
  CHECK(ball_average(A, 3, 0.25, 1e-10) - std::log(4.0) ==
        doctest::Approx(c1).epsilon(1e-9));
  // Mean oscillation over B((x, y), y/2), same constant at every scale.
  const double osc = 0.22137814188068858;
  const std::vector<Ball> one = {{0, 1, 0.5}};
  const BmoEstimate est = bmo_seminorm(A, one, 1e-8);
  CHECK(est.balls[0].mean == doctest::Approx(c1).epsilon(5e-8));
  CHECK(est.balls[0].oscillation == doctest::Approx(osc).epsilon(5e-8));
  const std::vector<Ball> small = {{5, 0x1p-6, 0x1p-7}};
  const BmoEstimate shifted = bmo_seminorm(A, small, 1e-8);
  CHECK(shifted.balls[0].oscillation == doctest::Approx(osc).epsilon(1e-6));
}

TEST_CASE("seminorm estimate is monotone in the family and stable for log") {
  const PlaneField A = PlaneField::log_inv_y();
  const BmoEstimate coarse = bmo_seminorm(A, dyadic_ball_family(0, 1), 1e-6);
  const BmoEstimate fine = bmo_seminorm(A, dyadic_ball_family(0, 3), 1e-6);
  CHECK(coarse.seminorm_lower_bound > 0.2);
  CHECK(fine.seminorm_lower_bound >= coarse.seminorm_lower_bound);
  // The family at shifted scales is a rescaling of the original and the log
  // field only moves by an additive constant, so the estimate is unchanged.
  const BmoEstimate moved = bmo_seminorm(A, dyadic_ball_family(4, 5), 1e-6);
  CHECK(moved.seminorm_lower_bound ==
        doctest::Approx(coarse.seminorm_lower_bound).epsilon(1e-6));
  // The maximizing ball sits at the near-critical radius ratio.
  const Ball argmax = fine.balls[fine.argmax_index].ball;
  CHECK(argmax.r / argmax.cy == doctest::Approx(0.5 * (1 - 0x1p-6)));
}

TEST_CASE("inverse height field oscillation grows without bound") {
  const PlaneField A = PlaneField::inv_y();
  // Fixed center: widening the ball toward the boundary grows the
  // oscillation.
  const std::vector<Ball> pair = {{0, 1, 0.25}, {0, 1, 0.5 * (1 - 0x1p-6)}};
  const BmoEstimate by_radius = bmo_seminorm(A, pair, 1e-6);
  CHECK(by_radius.balls[1].oscillation > 2 * by_radius.balls[0].oscillation);
  // Fixed shape, shrinking scale: oscillation of 1/y scales like 1/cy.
  const BmoEstimate unit = bmo_seminorm(A, dyadic_ball_family(0, 0), 1e-6);
  const BmoEstimate fine = bmo_seminorm(A, dyadic_ball_family(4, 4), 1e-6);
  CHECK(fine.seminorm_lower_bound > 4 * unit.seminorm_lower_bound);
  CHECK(fine.seminorm_lower_bound ==
        doctest::Approx(16 * unit.seminorm_lower_bound).epsilon(1e-5));
}

TEST_CASE("averages are linear and monotone") {
  const PlaneField A = PlaneField::log_inv_y();
  const PlaneField B = PlaneField::sin_log_inv_y();
  std::mt19937_64 rng(7);
  const auto coef = [&] {
    return -2 + 4 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 3; ++trial) {
    const double a = coef();
    const double b = coef();
    const PlaneField combo{
        [&A, &B, a, b](double x, double y) { return a * A(x, y) + b * B(x, y); },
        "combo"};
    const double points[][2] = {{0, 1}, {-2, 0.2}, {1.5, 3}};
    for (const auto& zy : points) {
      const double x = zy[0];
      const double y = zy[1];
      CHECK(ball_average(combo, x, y, 1e-12) ==
            doctest::Approx(a * ball_average(A, x, y, 1e-12) +
                            b * ball_average(B, x, y, 1e-12))
                .epsilon(1e-10));
      CHECK(rect_average(combo, x, y, 1e-12) ==
            doctest::Approx(a * rect_average(A, x, y, 1e-12) +
                            b * rect_average(B, x, y, 1e-12))
                .epsilon(1e-10));
    }
  }
  // sin(log(1/y)) <= 1 pointwise, so its averages stay below those of 1.
  const PlaneField one = PlaneField::constant(1);
  CHECK(ball_average(B, 0.3, 0.9, 1e-10) <= ball_average(one, 0.3, 0.9, 1e-10) + 1e-12);
  CHECK(rect_average(B, 0.3, 0.9, 1e-10) <= rect_average(one, 0.3, 0.9, 1e-10) + 1e-12);
}

TEST_CASE("operator comparison ratios vanish for constants") {
  const AverageOperatorReport rep =
      average_operator_check(PlaneField::constant(3), dyadic_ball_family(0, 1), 1e-8);
  CHECK(rep.source_seminorm == 0.0);
  CHECK(rep.sup_center_gap == 0.0);
  CHECK(rep.ball_image_seminorm == 0.0);
  CHECK(rep.rect_image_seminorm == 0.0);
  CHECK(rep.gap_ratio == 0.0);
  CHECK(rep.ball_ratio == 0.0);
  CHECK(rep.rect_ratio == 0.0);
}

TEST_CASE("operator comparison for the log field has a constant gap") {
  const AverageOperatorReport rep = average_operator_check(
      PlaneField::log_inv_y(), dyadic_ball_family(0, 2), 1e-6);
  // Both operators shift log(1/y) by fixed constants, so the pointwise gap
  // is the difference of the two shifts at every center.
  const double c0 = 1 - 1.5 * std::log(1.5) - 0.5 * std::log(2.0);
  const double c1 = 0.033438079332828497;
  CHECK(rep.sup_center_gap == doctest::Approx(c0 - c1).epsilon(1e-6));
  CHECK(rep.source_seminorm > 0.2);
  CHECK(rep.gap_ratio == doctest::Approx((c0 - c1) / rep.source_seminorm));
  CHECK(rep.ball_ratio > 0);
  CHECK(rep.ball_ratio < 2);
  CHECK(rep.rect_ratio > 0);
  CHECK(rep.rect_ratio < 2);
}

TEST_CASE("operator comparison for a bounded wavy field stays finite") {
  const AverageOperatorReport rep = average_operator_check(
      PlaneField::sin_log_inv_y(), dyadic_ball_family(0, 1), 1e-6);
  CHECK(rep.source_seminorm > 0);
  CHECK(std::isfinite(rep.gap_ratio));
  CHECK(std::isfinite(rep.ball_ratio));
  CHECK(std::isfinite(rep.rect_ratio));
  // Averaging cannot inflate the oscillation scale by much; both image
  // seminorms stay within a small multiple of the source.
  CHECK(rep.ball_ratio < 3);
  CHECK(rep.rect_ratio < 3);
}

TEST_CASE("majorant transfer on the identity with a constant majorant") {
  GridSpec grid;
  grid.x0 = -2;
  grid.x1 = 2;
  grid.y0 = 0.5;
  grid.y1 = 2;
  grid.nx = 5;
  grid.ny = 5;
  const MajorantReport rep =
      bmo_majorant_check(LineHomeo::identity(), PlaneField::constant(2),
                         dyadic_ball_family(0, 1), grid, 1e-8);
  CHECK(rep.points == 25);
  CHECK(rep.dilatation_hypothesis_points == 25);
  CHECK(rep.dilatation_violations == 0);
  CHECK(rep.distortion_hypothesis_points == 25);
  CHECK(rep.excluded_points == 0);
  CHECK(rep.seminorm_estimate == 0.0);
  CHECK(rep.growth_sup_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("majorant transfer on the two slope map") {
  GridSpec grid;
  grid.x0 = -2;
  grid.x1 = 2;
  grid.y0 = 0.125;
  grid.y1 = 2;
  grid.nx = 7;
  grid.ny = 5;
  grid.spacing = GridSpec::Spacing::geometric_y;
  const MajorantReport rep =
      bmo_majorant_check(LineHomeo::two_slope(2), PlaneField::constant(3),
                         dyadic_ball_family(0, 1), grid, 1e-8);
  // K tops out near 2.763 on the central column, so the hypothesis K <= 3
  // admits every point and the explicit factor 4 bound must hold at all of
  // them.
  CHECK(rep.points == 35);
  CHECK(rep.dilatation_hypothesis_points == 35);
  CHECK(rep.dilatation_violations == 0);
  CHECK(rep.distortion_hypothesis_points == 35);
  CHECK(rep.excluded_points == 0);
  CHECK(rep.growth_sup_ratio < 1);
  CHECK(rep.growth_sup_ratio > 0.5);
}

TEST_CASE("majorant transfer on the log singular map near the origin") {
  const PlaneField A{[](double, double y) { return 1 + std::log(1 + 1 / y); },
                     "1+log(1+1/y)"};
  // Window tight around the origin: at |x| = 0.5 the probe interval already
  // reaches the map's other kink at -1, where this majorant is too small.
  GridSpec grid;
  grid.x0 = -0.25;
  grid.x1 = 0.25;
  grid.y0 = 0x1p-8;
  grid.y1 = 0.25;
  grid.nx = 5;
  grid.ny = 6;
  grid.spacing = GridSpec::Spacing::geometric_y;
  const std::vector<Ball> family = dyadic_ball_family(0, 1);
  const MajorantReport rep =
      bmo_majorant_check(LineHomeo::log_singular(), A, family, grid, 1e-6);
  CHECK(rep.points == 30);
  // The majorant dominates the distortion on the whole window, so every
  // point enters the growth direction and the reported ratio is finite.
  CHECK(rep.distortion_hypothesis_points == 30);
  CHECK(rep.excluded_points == 0);
  CHECK(rep.growth_sup_ratio > 0);
  CHECK(std::isfinite(rep.growth_sup_ratio));
  // Refining toward the boundary leaves the ratio on the same scale.
  GridSpec deeper = grid;
  deeper.y0 = 0x1p-10;
  const MajorantReport rep2 =
      bmo_majorant_check(LineHomeo::log_singular(), A, family, deeper, 1e-6);
  CHECK(rep2.growth_sup_ratio <= 2 * rep.growth_sup_ratio);
  CHECK(rep2.growth_sup_ratio >= 0.5 * rep.growth_sup_ratio);
}

TEST_CASE("ball family and center validation") {
  CHECK_THROWS_AS(dyadic_ball_family(2, 1), InputError);
  try {
    bmo_seminorm(PlaneField::constant(0), {{0, 1, 1.5}}, 1e-8);
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(mentions(e, "radius"));
  }
  CHECK_THROWS_AS(ball_average(PlaneField::constant(0), 0, 0, 1e-8),
                  InputError);
  CHECK_THROWS_AS(rect_average(PlaneField::constant(0), 0, -1, 1e-8),
                  InputError);
}

TEST_CASE("builtin field dispatch") {
  CHECK(PlaneField::builtin("const:2.5")(7, 3) == 2.5);
  CHECK(PlaneField::builtin("const:2.5").description == "const:2.5");
  CHECK(PlaneField::builtin("log_inv_y")(0, std::exp(1.0)) ==
        doctest::Approx(-1.0));
  CHECK(PlaneField::builtin("inv_y")(0, 4) == 0.25);
  CHECK(PlaneField::builtin("sin_log_inv_y")(2, 1) == doctest::Approx(0.0));
  try {
    PlaneField::builtin("nope");
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(mentions(e, "unknown field"));
  }
  try {
    PlaneField::builtin("const:abc");
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(mentions(e, "not a number"));
  }
}

TEST_CASE("bilinear csv field interpolates, clamps, and validates") {
  const std::string path = "qcx_test_bmo_field_tmp.csv";
  {
    std::ofstream out(path);
    out << "corner,0,1,2\n";
    out << "0.5,1,2,3\n";
    out << "1.5,2,3,4\n";
  }
  const PlaneField F = PlaneField::bilinear_csv(path);
  CHECK(F.description == "csv:" + path);
  CHECK(F(0, 0.5) == 1.0);
  CHECK(F(2, 1.5) == 4.0);
  CHECK(F(1, 1.0) == doctest::Approx(2.5));
  CHECK(F(0.5, 0.5) == doctest::Approx(1.5));
  // Outside the hull the field clamps, so it stays defined on all of y > 0.
  CHECK(F(-5, 0.5) == 1.0);
  CHECK(F(10, 10) == 4.0);
  CHECK(ball_average(F, 1, 1, 1e-10) ==
        doctest::Approx(brute_ball_average(F, 1, 1)).epsilon(1e-8));
  std::remove(path.c_str());
  CHECK_THROWS_AS(PlaneField::bilinear_csv(path), InputError);

  const auto expect_rejects = [&](const char* text, const char* needle) {
    {
      std::ofstream out(path);
      out << text;
    }
    try {
      PlaneField::bilinear_csv(path);
      CHECK(false);
    } catch (const InputError& e) {
      CHECK(mentions(e, needle));
    }
    std::remove(path.c_str());
  };
  expect_rejects("corner,0,1\n0.5,1\n1.5,2,3\n", "cells");
  expect_rejects("corner,1,0\n0.5,1,2\n1.5,2,3\n", "strictly increasing");
  expect_rejects("corner,0,1\n-0.5,1,2\n1.5,2,3\n", "positive");
  expect_rejects("corner,0,1\n0.5,1,2\n", "two rows");
  expect_rejects("corner,0,x\n0.5,1,2\n1.5,2,3\n", "not a number");
}
