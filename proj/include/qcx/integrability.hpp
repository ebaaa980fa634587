#pragma once

// Truncated integrals of gauge-transformed distortion fields against the
// spherical measure, layer-trend classification of their convergence, the
// integral-transfer chain with its pointwise checks, the circle-side
// integrals through the covering strip, the logarithmic tail criterion,
// and the L1 welding test.

#include <functional>
#include <string>
#include <vector>

#include "qcx/boundary_map.hpp"

namespace qcx {

// Increasing convex gauges used to classify integrability, with the scale
// q applied inside: scaled(s) = gauge(q s).
struct PhiFamily {
  enum class Kind { exponential, power, subexponential, linear };
  Kind kind = Kind::exponential;
  double p = 1;  // exponent when kind is power; at least 1
  double q = 1;  // positive inner scale

  double gauge(double s) const;
  double scaled(double s) const { return gauge(q * s); }
  std::string label() const;

  // Accepts "exp", "power:<p>", "subexp", "linear"; q must be positive.
  static PhiFamily parse(const std::string& text, double q);
};

struct TruncationBox {
  double x_extent = 20;  // x runs over [-x_extent, x_extent]
  double y_min = 1e-4;
  double y_max = 20;

  void validate() const;
};

struct LayerContribution {
  int k = 0;  // layer y in (y_lo, y_hi], nominally (2^{-k-1}, 2^{-k}]
  double y_lo = 0;
  double y_hi = 0;
  double value = 0;
};

enum class Verdict { converging, diverging, inconclusive };

const char* verdict_name(Verdict v);

struct IntegrabilityReport {
  TruncationBox box;
  // Dyadic layers below min(1, y_max), k increasing downward; bulk is the
  // region above the top layer.  total = bulk + sum of layer values.
  std::vector<LayerContribution> layers;
  double bulk = 0;
  double total = 0;
  Verdict verdict = Verdict::inconclusive;
  std::string verdict_basis;
};

// Truncated integral of f dsigma over [-X, X] x (y_min, y_max] with the
// spherical density 4 (1 + x^2 + y^2)^-2.  The verdict extrapolates the
// trend of the dyadic layer contributions toward y = 0; x_seeds (slope
// breaks of the underlying map, say) seed the inner quadrature.  Budget
// exhaustion downgrades the verdict to inconclusive instead of throwing.
IntegrabilityReport spherical_integral(
    const std::function<double(double, double)>& f, const TruncationBox& box,
    double tol, const std::vector<double>& x_seeds = {});

// The layer-trend rule, exposed for direct testing on analytic models.
// Decisions use the trailing ratios of successive layer values plus a
// linear extrapolation of those ratios in 1/(k+2), which sends geometric
// tails to their ratio and harmonic tails (ratio k/(k+1), a diverging
// pattern) to 1.
Verdict classify_layer_trend(const std::vector<double>& values,
                             bool all_converged, std::string* basis);

struct TransferCheck {
  double left = 0;    // integral of Phi(q rho / (4 C0)) dsigma
  double middle = 0;  // integral of Phi(q K / C0) dsigma
  double right = 0;   // integral of Phi(q rho) dsigma
  long nodes = 0;
  long lower_violations = 0;   // Phi(q rho/200) <= Phi(q K/50) failed
  long upper_violations = 0;   // Phi(q K/50) <= max{point, segment avg} failed
  long jensen_violations = 0;  // Phi(q avg rho) <= segment avg of Phi(q rho)
  bool pointwise_ok = true;
  double empirical_constant = 0;  // middle / right when right > 0
};

// The integral-transfer chain with C0 = 50: the three truncated integrals,
// plus the pointwise inequalities checked at every node of the middle
// integral with slack 1e-8 max(1, |rhs|).
TransferCheck transfer_check(const LineHomeo& h, const PhiFamily& phi,
                             const TruncationBox& box, double tol);

struct CircleIntegrability {
  // Phi(q rho^c) dt dtheta over theta in [0, 2pi), t in dyadic layers of
  // (t_min, pi/2); the report's box stores x_extent = 2pi meaning [0, 2pi).
  IntegrabilityReport boundary;
  // Phi(q K / 50) dx dy over the disk, computed in covering-strip
  // coordinates x in [0, 1), y in (y_min, 2] with density
  // (2pi)^2 e^{-4 pi y}; the omitted |z| > e^{-2 pi y_min} annulus and
  // |z| < e^{-4 pi} core are negligible at the reported tolerance.
  IntegrabilityReport disk;
};

CircleIntegrability circle_integrability(const CircleHomeo& hc,
                                         const PhiFamily& phi, double tol);

struct LogTailCheck {
  double sup_ratio = 0;
  bool satisfied = true;
  // Per-scale sups at t = 2^{-k-1}, largest scale first.
  std::vector<double> per_scale_sup;
};

// sup over sampled (theta, t) of rho^c(theta, t) / log((1 + g(theta)) / t)
// for t down to t_min.  satisfied when the trailing per-scale sups are
// non-increasing (2 percent noise allowed), so bounded distortion growth
// passes and power-law growth fails.
LogTailCheck log_tail_criterion(const CircleHomeo& hc,
                                const std::function<double(double)>& g,
                                double t_min);

struct WeldingShell {
  int m = 0;  // |s| in (2^{-m-1}, 2^{-m}] turns, m starting at 1
  double value = 0;
};

struct WeldingReport {
  std::vector<WeldingShell> shells;
  double tail_estimate = 0;  // geometric extrapolation past the last shell
  double total = 0;
  bool converged = false;
};

// Double boundary integral of |log|h(e^{i a}) - h(e^{i b})|| over the
// torus, reduced to shells in the angle difference with dyadic refinement
// toward the diagonal.  tol is relative to the running total.
WeldingReport welding_l1_test(const CircleHomeo& hc, double tol);

}  // namespace qcx
