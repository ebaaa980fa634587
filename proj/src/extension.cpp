#include "qcx/extension.hpp"

#include <cmath>

#include "qcx/errors.hpp"

namespace qcx {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

ExtensionJet jet_from_offsets(double x, double y, double hx,
                              const OffsetStats& o, double tol) {
  const double dp = o.diff_plus, dm = o.diff_minus;
  const double mp = o.mean_plus, mm = o.mean_minus;
  ExtensionJet j;
  j.x = x;
  j.y = y;
  j.u = hx + 0.5 * (mp - mm);
  j.v = 0.5 * (mp + mm);
  const double inv2y = 0.5 / y;
  j.u_x = (dp + dm) * inv2y;
  j.u_y = (dp - dm - mp + mm) * inv2y;
  j.v_x = (dp - dm) * inv2y;
  j.v_y = (dp + dm - mp - mm) * inv2y;
  j.jacobian = (dm * (dp - mp) + dp * (dm - mm)) / (2 * y * y);
  if (!(j.jacobian > 0))
    throw InternalError("extension Jacobian is not positive; the map is not increasing");
  const double sq =
      j.u_x * j.u_x + j.u_y * j.u_y + j.v_x * j.v_x + j.v_y * j.v_y;
  double trace = sq / j.jacobian;
  if (trace < 2 - 10 * tol)
    throw InternalError("extension trace fell below 2 beyond tolerance");
  trace = std::max(trace, 2.0);
  j.trace = trace;
  j.dilatation = 0.5 * (trace + std::sqrt(trace * trace - 4));
  return j;
}

ExtensionJet jet(const LineHomeo& h, double x, double y, double tol) {
  if (!(y > 0)) throw InputError("jet needs y > 0");
  return jet_from_offsets(x, y, h(x), h.offsets(x, y, tol * y), tol);
}

std::pair<double, double> extend(const LineHomeo& h, double x, double y,
                                 double tol) {
  if (!(y > 0)) throw InputError("extend needs y > 0");
  const OffsetStats o = h.offsets(x, y, tol);
  return {h(x) + 0.5 * (o.mean_plus - o.mean_minus),
          0.5 * (o.mean_plus + o.mean_minus)};
}

std::complex<double> extend_circle(const CircleHomeo& hc,
                                   std::complex<double> z, double tol) {
  const double r = std::abs(z);
  if (r >= 1) throw InputError("extend_circle needs |z| < 1");
  if (r == 0) return {0, 0};
  double phi = std::atan2(z.imag(), z.real());
  if (phi < 0) phi += kTwoPi;
  const double xt = phi / kTwoPi;
  const double yt = -std::log(r) / kTwoPi;
  const auto [u, v] = extend(hc.lift(), xt, yt, tol);
  return std::polar(std::exp(-kTwoPi * v),
                    hc.rotation_offset() + kTwoPi * u);
}

}  // namespace qcx
