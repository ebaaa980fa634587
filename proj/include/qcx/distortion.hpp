#pragma once

#include <functional>
#include <vector>

#include "qcx/boundary_map.hpp"
#include "qcx/grid.hpp"

namespace qcx {

// The asserted uniform constant of the two-sided dilatation bound
//   rho / 4 <= K <= C0 max{rho, segment average of rho}.
inline constexpr double kBoundConstant = 50.0;

// rho and the two segment averages at one point.  avg_right averages rho
// along the segment from (x, y) to (x + y/4, 3y/4), avg_left along the
// segment to (x - y/4, 3y/4); avg_combined is their mean, which equals
// (2/y) int_{-y/4}^{y/4} rho(x + z, y - |z|) dz.
struct DistortionSample {
  double rho = 1;
  double avg_right = 1;
  double avg_left = 1;
  double avg_combined = 1;
};

// Normalized one-point data (beta, xi, eta) of the map rescaled to fix 0
// and 1: beta = -h*(-1), xi = 1 - int_0^1 h*, eta = 1 + (1/beta)
// int_{-1}^0 h*.  xi and eta always lie in (0, 1); beta equals either
// rho(x, y) or its reciprocal, recorded by beta_is_rho.
struct NormalizedTriple {
  double beta = 1;
  double xi = 0.5;
  double eta = 0.5;
  bool beta_is_rho = true;
};

// Per-point row of a bound check, in CSV column order.
struct BoundsRow {
  double x = 0;
  double y = 0;
  double dilatation = 1;
  double rho = 1;
  double avg_left = 1;
  double avg_right = 1;
  double avg_combined = 1;
  bool lower_ok = true;
  bool upper_ok = true;
};

struct BoundsReport {
  long points_checked = 0;
  long lower_violations = 0;
  long upper_violations = 0;
  // Empirical extrema of rho / (4K) and K / (C0 max{rho, avg}); both stay
  // below 1 when the bounds hold.
  double max_ratio_lower = 0;
  double max_ratio_upper = 0;
};

// max{r, 1/r} with r the ratio of the h-increments over [x, x+t] and
// [x-t, x]; always >= 1.
double rho(const LineHomeo& h, double x, double t);

// Circular version through the lift: rho of the lift at (theta / 2 pi,
// t / 2 pi).  Requires 0 < t < pi / 2.
double rho_circular(const CircleHomeo& hc, double theta, double t);

// rho and both segment averages; tol is the absolute error target of each
// average.  Quadrature is seeded at the parameter values where a segment
// endpoint crosses a slope break of h, so piecewise-linear maps integrate
// to machine accuracy.
DistortionSample segment_average(const LineHomeo& h, double x, double y,
                                 double tol);

// Same segments, but averaging post(rho) instead of rho; used for the
// integral-transfer checks where post is a convex gauge.
DistortionSample segment_average_of(const LineHomeo& h, double x, double y,
                                    double tol,
                                    const std::function<double(double)>& post);

// (beta, xi, eta) at (x, y), computed directly from offset statistics of h
// without materializing the normalized map.
NormalizedTriple beta_xi_eta(const LineHomeo& h, double x, double y,
                             double tol);

// F(xi, eta) = (beta (1 + eta^2) + (1/beta)(1 + xi^2)) / (xi + eta), the
// convex gauge whose value at the normalized data equals K + 1/K.
// Requires xi + eta > 0.
double F_value(double beta, double xi, double eta);

inline double trace_from_triple(const NormalizedTriple& t) {
  return F_value(t.beta, t.xi, t.eta);
}

// Evaluate the two-sided bound over a grid.  Violations are counted, not
// thrown; slack is 1e-9 for maps with exact antiderivatives and 10 tol
// otherwise.  rows, when given, receives one entry per grid point in row
// order (y outer, x inner).  threads > 1 partitions grid rows.
BoundsReport check_bounds(const LineHomeo& h, const GridSpec& grid,
                          double tol, std::vector<BoundsRow>* rows = nullptr,
                          int threads = 1);

}  // namespace qcx
