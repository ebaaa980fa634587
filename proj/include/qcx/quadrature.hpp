#pragma once

#include <functional>
#include <vector>

namespace qcx {

using Integrand = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // summed absolute error estimate
  int cells = 0;       // cells in the final partition
  bool converged = false;
};

// One Gauss-Kronrod 15(7) panel over [a,b].  `error` is the usual
// |K15 - G7| based estimate.
QuadResult gk_panel(const Integrand& f, double a, double b);

// Adaptive Gauss-Kronrod over [a,b]: repeatedly splits the cell with the
// largest error estimate until the total falls below tol_abs or the cell
// budget runs out.  Never throws on exhaustion; check `converged`.
QuadResult gk_adaptive(const Integrand& f, double a, double b, double tol_abs,
                       int max_cells = 4000);

// Same engine with an initial partition at the given interior seed points
// (clipped to (a,b), deduplicated).  Use when the integrand has known kinks.
QuadResult gk_adaptive_seeded(const Integrand& f, double a, double b,
                              std::vector<double> seeds, double tol_abs,
                              int max_cells = 4000);

// Throwing wrapper: returns the value or raises NumericError carrying the
// achieved error estimate.
double gk_integrate(const Integrand& f, double a, double b, double tol_abs,
                    int max_cells = 4000);
double gk_integrate_seeded(const Integrand& f, double a, double b,
                           std::vector<double> seeds, double tol_abs,
                           int max_cells = 4000);

// Adaptive Simpson with the classic Richardson acceptance test, recursing on
// the seeded subintervals first.  Throws NumericError past the depth budget.
double simpson_adaptive(const Integrand& f, double a, double b, double tol_abs,
                        int max_depth = 48);
double simpson_adaptive_seeded(const Integrand& f, double a, double b,
                               std::vector<double> seeds, double tol_abs,
                               int max_depth = 48);

// Trapezoid rule with interval doubling for a periodic integrand over one
// full period [a,b].  Converges spectrally for smooth periodic functions.
double periodic_integral(const Integrand& f, double a, double b,
                         double tol_abs, int max_doublings = 12);

// Adaptive Gauss-Kronrod that reports its final partition so a second pass
// can reuse (and refine) the same cells.
struct PartitionedQuadResult {
  QuadResult result;
  std::vector<std::pair<double, double>> cells;
};
PartitionedQuadResult gk_adaptive_partitioned(const Integrand& f, double a,
                                              double b, double tol_abs,
                                              int max_cells = 4000);
QuadResult gk_adaptive_from_cells(const Integrand& f,
                                  const std::vector<std::pair<double, double>>& cells,
                                  double tol_abs, int max_cells = 4000);

}  // namespace qcx
