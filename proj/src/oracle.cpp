#include "qcx/oracle.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "qcx/errors.hpp"

namespace qcx {

namespace {

// 4-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 2> kGlNode = {0.3399810435848563,
                                           0.8611363115940526};
constexpr std::array<double, 2> kGlWeight = {0.6521451548625461,
                                             0.3478548451374538};

double gl4_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0;
  for (int i = 0; i < 2; ++i) {
    s += kGlWeight[i] * (f(mid - half * kGlNode[i]) + f(mid + half * kGlNode[i]));
  }
  return s * half;
}

struct Point {
  double u, v;
};

Point eval(const LineHomeo& h, double x, double y) {
  const auto [u, v] = extend(h, x, y);
  return {u, v};
}

}  // namespace

FdPartials fd_jet(const LineHomeo& h, double x, double y,
                  const OracleConfig& cfg) {
  if (!(y > 0)) throw InputError("fd_jet requires y > 0");
  if (!(cfg.fd_step_relative > 0) || !(cfg.fd_step_relative < 1e-2)) {
    throw InputError("fd_jet requires 0 < fd_step_relative < 1e-2");
  }
  if (cfg.richardson_levels < 1) {
    throw InputError("fd_jet requires richardson_levels >= 1");
  }
  const LineHomeo shifted = h.postcomposed_affine(1.0, -h(x));

  const auto central = [&](double step) {
    FdPartials p;
    const Point xe = eval(shifted, x + step, y);
    const Point xw = eval(shifted, x - step, y);
    const Point yn = eval(shifted, x, y + step);
    const Point ys = eval(shifted, x, y - step);
    p.u_x = (xe.u - xw.u) / (2 * step);
    p.v_x = (xe.v - xw.v) / (2 * step);
    p.u_y = (yn.u - ys.u) / (2 * step);
    p.v_y = (yn.v - ys.v) / (2 * step);
    return p;
  };

  // Richardson table on step halving: central differences have an even error
  // expansion, so column j cancels the h^(2j) term via
  // T[i][j] = (4^j T[i][j-1] - T[i-1][j-1]) / (4^j - 1).
  // row[j] holds T[i-1][j] while the i-th table row is built in place.
  const int levels = cfg.richardson_levels;
  std::vector<FdPartials> row(levels + 1);
  const double step0 = cfg.fd_step_relative * y;
  for (int i = 0; i <= levels; ++i) {
    FdPartials cur = central(step0 / std::pow(2.0, i));
    for (int j = 1; j <= i; ++j) {
      const FdPartials prev_diag = row[j - 1];
      row[j - 1] = cur;
      const double w = std::pow(4.0, j);
      cur.u_x = (w * cur.u_x - prev_diag.u_x) / (w - 1);
      cur.u_y = (w * cur.u_y - prev_diag.u_y) / (w - 1);
      cur.v_x = (w * cur.v_x - prev_diag.v_x) / (w - 1);
      cur.v_y = (w * cur.v_y - prev_diag.v_y) / (w - 1);
    }
    row[i] = cur;
  }
  return row[levels];
}

double norm_dilatation(const FdPartials& p) {
  const double jac = p.u_x * p.v_y - p.u_y * p.v_x;
  if (!(jac > 0)) {
    throw InputError("norm_dilatation requires a positive Jacobian");
  }
  const double s = p.u_x * p.u_x + p.u_y * p.u_y + p.v_x * p.v_x + p.v_y * p.v_y;
  const double disc = std::max(0.0, s * s - 4 * jac * jac);
  const double sigma1_sq = 0.5 * (s + std::sqrt(disc));
  return sigma1_sq / jac;
}

double brute_integral(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  if (panels < 2) throw InputError("brute_integral requires panels >= 2");
  double s = 0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels;
    const double hi = a + (b - a) * (i + 1) / panels;
    s += gl4_panel(f, lo, hi);
  }
  return s;
}

double brute_integral_2d(const std::function<double(double, double)>& f,
                         double x0, double x1, double y0, double y1,
                         int panels) {
  const auto inner = [&](double y) {
    return brute_integral([&](double x) { return f(x, y); }, x0, x1, panels);
  };
  return brute_integral(inner, y0, y1, panels);
}

double brute_integral_dyadic(const std::function<double(double)>& f, double a,
                             double b, int depth, int panels) {
  if (depth < 1) throw InputError("brute_integral_dyadic requires depth >= 1");
  double s = 0;
  double hi = b;
  for (int k = 1; k < depth; ++k) {
    const double lo = a + (b - a) * std::pow(2.0, -k);
    s += brute_integral(f, lo, hi, panels);
    hi = lo;
  }
  s += brute_integral(f, a, hi, panels);
  return s;
}

}  // namespace qcx
