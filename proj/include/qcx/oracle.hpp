#pragma once

// Slow reference implementations used to cross-check the closed-form paths.
// Everything here is deliberately independent of the adaptive quadrature and
// offset-statistics machinery: derivatives come from finite differences of
// the plain extension values, integrals from fixed-order composite panels.

#include <functional>

#include "qcx/boundary_map.hpp"
#include "qcx/extension.hpp"

namespace qcx {

struct OracleConfig {
  // Finite-difference step as a fraction of the height y; must stay below
  // 1e-2 so the stencil cannot leave the half-plane.
  double fd_step_relative = 1e-4;
  // Richardson extrapolation depth, at least 1.
  int richardson_levels = 2;
  // Panels per axis for the brute-force composite integrators.
  int brute_subdivisions = 64;
};

struct FdPartials {
  double u_x = 0;
  double u_y = 0;
  double v_x = 0;
  double v_y = 0;
};

// Central-difference partials of the extension at (x, y). Computed on the
// value-shifted map t -> h(t) - h(x) so that u stays near zero and the
// differences do not lose digits to a large common offset; the shift leaves
// every partial unchanged.
FdPartials fd_jet(const LineHomeo& h, double x, double y,
                  const OracleConfig& cfg = {});

// Dilatation from the singular values of the differential: with
// S = u_x^2 + u_y^2 + v_x^2 + v_y^2 and J = u_x v_y - u_y v_x,
// sigma_1^2 = (S + sqrt(S^2 - 4 J^2)) / 2 and K = sigma_1^2 / J.
// Throws InputError when J <= 0.
double norm_dilatation(const FdPartials& p);

// Composite 4-point Gauss-Legendre over n >= 2 equal panels.
double brute_integral(const std::function<double(double)>& f, double a,
                      double b, int panels);

// Tensor-product version over an axis-aligned rectangle, n x n panels.
double brute_integral_2d(const std::function<double(double, double)>& f,
                         double x0, double x1, double y0, double y1,
                         int panels);

// Composite rule on a dyadic partition accumulating toward the left
// endpoint: [a, b] is split at a + (b-a) 2^-k for k = 1..depth and each
// cell gets `panels` GL4 panels. Handles integrable endpoint blowup.
double brute_integral_dyadic(const std::function<double(double)>& f, double a,
                             double b, int depth, int panels);

}  // namespace qcx
