#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qcx/boundary_map.hpp"
#include "qcx/grid.hpp"

namespace qcx {

// Scalar field on the upper half-plane, the majorant side of the averaging
// operators.  The evaluator must be defined for every y > 0; built-ins are
// continuous, so local integrability comes for free.
struct PlaneField {
  std::function<double(double, double)> evaluator;
  std::string description;

  double operator()(double x, double y) const { return evaluator(x, y); }

  static PlaneField constant(double c);
  static PlaneField log_inv_y();
  static PlaneField inv_y();
  static PlaneField sin_log_inv_y();
  // Piecewise-bilinear interpolant of a CSV grid.  Row one holds the x
  // coordinates after a throwaway corner cell, each later row starts with
  // its y coordinate; both axes strictly increasing, all y positive.
  // Points outside the grid clamp to the nearest edge.
  static PlaneField bilinear_csv(const std::string& path);
  // Dispatch by CLI name: "const:<c>", "log_inv_y", "inv_y",
  // "sin_log_inv_y", or "csv:<path>".
  static PlaneField builtin(const std::string& name);
};

// Closed ball B((cx, cy), r); r < cy keeps the closure inside the
// half-plane.
struct Ball {
  double cx = 0;
  double cy = 1;
  double r = 0.25;
};

struct BallOscillation {
  Ball ball;
  double mean = 0;         // (1/|B|) int_B A
  double oscillation = 0;  // (1/|B|) int_B |A - mean|
};

// Finite-family lower bound for the BMO seminorm: the true value is a sup
// over all balls, so enlarging the family can only increase the estimate.
struct BmoEstimate {
  std::vector<BallOscillation> balls;
  double seminorm_lower_bound = 0;
  std::size_t argmax_index = 0;
};

// Mean of A over the ball B((x, y), y/2), adaptive quadrature in polar
// coordinates about the center.  The field is evaluated relative to its
// center value, so constants pass through exactly.  Throws NumericError
// when the cell budget runs out before reaching tol.
double ball_average(const PlaneField& A, double x, double y, double tol);

// Mean of A over the rectangle [x-y, x+y] x [y/2, 3y/2], tensor
// Gauss-Kronrod with the same center-value shift.
double rect_average(const PlaneField& A, double x, double y, double tol);

// Dyadic ball family: for each scale k in [k_min, k_max], centers
// x = j 2^-k (j = -2..2), y = 2^-k {1, 3/2, 2}, radii y {1/4, (1 - 2^-6)/2}.
std::vector<Ball> dyadic_ball_family(int k_min, int k_max);

// Two-pass mean oscillation over each ball of the family (mean first, then
// |A - mean| on the same radial partition), maximum reported with the
// maximizing ball.  Throws InputError when a ball closure leaves the
// half-plane.
BmoEstimate bmo_seminorm(const PlaneField& A, const std::vector<Ball>& family,
                         double tol);

// Consistency of the two averaging operators against the seminorm scale:
// the pointwise gap |rect - ball| at the family centers and the seminorms
// of the averaged fields, each reported as a ratio over the seminorm of A.
// Ratios are 0 when numerator and denominator both vanish (constants).
struct AverageOperatorReport {
  double source_seminorm = 0;
  double sup_center_gap = 0;        // sup over centers of |rect - ball|
  double ball_image_seminorm = 0;   // seminorm estimate of z -> ball avg
  double rect_image_seminorm = 0;
  double gap_ratio = 0;
  double ball_ratio = 0;
  double rect_ratio = 0;
};

AverageOperatorReport average_operator_check(const PlaneField& A,
                                             const std::vector<Ball>& family,
                                             double tol);

// Pointwise majorant transfer on a grid.  Where the dilatation hypothesis
// K <= ball_average(A) holds, the conclusion rho <= 4 ball_average(A) is
// exact and violations are counted; where the distortion hypothesis
// rho <= ball_average(A) holds, the growth ratio K / (ball_average(A) +
// seminorm estimate) is tracked as an empirical constant.  Points failing
// a hypothesis are excluded from that direction and reported.
struct MajorantReport {
  long points = 0;
  long dilatation_hypothesis_points = 0;
  long dilatation_violations = 0;
  long distortion_hypothesis_points = 0;
  double growth_sup_ratio = 0;
  double seminorm_estimate = 0;
  long excluded_points = 0;  // points satisfying neither hypothesis
};

MajorantReport bmo_majorant_check(const LineHomeo& h, const PlaneField& A,
                                  const std::vector<Ball>& family,
                                  const GridSpec& grid, double tol);

}  // namespace qcx
