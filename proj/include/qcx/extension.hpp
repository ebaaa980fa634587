#pragma once

#include <complex>
#include <utility>

#include "qcx/boundary_map.hpp"

namespace qcx {

// Value, first-order jet, Jacobian, and dilatation of the extension
// H = u + iv at one interior point (x, y), y > 0.
//
// In offset statistics (see OffsetStats) the closed forms are
//
//   u   = h(x) + (mean_plus - mean_minus) / 2
//   v   = (mean_plus + mean_minus) / 2
//   u_x = (diff_plus + diff_minus) / 2y
//   u_y = (diff_plus - diff_minus - mean_plus + mean_minus) / 2y
//   v_x = (diff_plus - diff_minus) / 2y
//   v_y = (diff_plus + diff_minus - mean_plus - mean_minus) / 2y
//
// and the Jacobian reduces to
//
//   J = (diff_minus (diff_plus - mean_plus)
//        + diff_plus (diff_minus - mean_minus)) / 2y^2,
//
// a sum of positive terms for any increasing h since the one-sided means
// are strictly smaller than the matching increments.
struct ExtensionJet {
  double x = 0;
  double y = 0;
  double u = 0;
  double v = 0;
  double u_x = 0;
  double u_y = 0;
  double v_x = 0;
  double v_y = 0;
  double jacobian = 0;
  // trace = (u_x^2 + u_y^2 + v_x^2 + v_y^2) / jacobian, clamped below at 2.
  double trace = 2;
  // dilatation = (trace + sqrt(trace^2 - 4)) / 2, the root >= 1 of
  // K + 1/K = trace.
  double dilatation = 1;
};

// Full jet from the closed forms; no numerical differentiation anywhere.
// tol is the absolute error target for the partials (only relevant for map
// families without exact antiderivatives).  Raises InternalError if the
// Jacobian fails to be positive or the trace falls below 2 - 10 tol, both
// impossible for a valid increasing map.
ExtensionJet jet(const LineHomeo& h, double x, double y, double tol = 1e-10);

// Assemble a jet from precomputed offset statistics; hx = h(x).  The
// trace clamp uses the same tol convention as jet().
ExtensionJet jet_from_offsets(double x, double y, double hx,
                              const OffsetStats& o, double tol = 1e-10);

// Extension value only: (u, v) with v > 0.
std::pair<double, double> extend(const LineHomeo& h, double x, double y,
                                 double tol = 1e-10);

// Extension of a circle homeomorphism to the unit disk through the
// universal cover psi(w) = e^{2 pi i w}: the lift is extended to the upper
// half-plane, conjugated back, and rotated by the stored offset.  The log
// branch is cut along the non-negative real axis, so the preimage of z has
// real part in [0, 1).  z = 0 maps to 0 (continuous extension); |z| >= 1
// raises InputError.
std::complex<double> extend_circle(const CircleHomeo& hc,
                                   std::complex<double> z, double tol = 1e-10);

}  // namespace qcx
