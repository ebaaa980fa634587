#include "qcx/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qcx/distortion.hpp"
#include "qcx/errors.hpp"
#include "qcx/extension.hpp"
#include "qcx/quadrature.hpp"

namespace qcx {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double spherical_density(double x, double y) {
  const double r = 1 + x * x + y * y;
  return 4 / (r * r);
}

std::string format_ratios(const std::vector<double>& ratios, double limit) {
  std::ostringstream os;
  char buf[64];
  os << "trailing layer ratios [";
  for (size_t i = 0; i < ratios.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", ratios[i]);
    os << (i ? ", " : "") << buf;
  }
  std::snprintf(buf, sizeof buf, "%.6g", limit);
  os << "], extrapolated limit " << buf;
  return os.str();
}

// Shared engine: integral of F(x, y) dx dy over [x_lo, x_hi] x (y_min,
// y_max], with the y range below y_top = min(1, y_max) cut into dyadic
// layers and the rest reported as bulk.  The tolerance is split evenly
// across regions; the inner x-quadrature gets a share scaled by the layer
// height so the accumulated inner error stays within the region's share.
IntegrabilityReport layered_integral(
    const std::function<double(double, double)>& F, double x_lo, double x_hi,
    const TruncationBox& box, double tol, const std::vector<double>& x_seeds) {
  IntegrabilityReport rep;
  rep.box = box;

  const double y_top = std::min(1.0, box.y_max);
  std::vector<LayerContribution> layers;
  double hi = y_top;
  for (int k = 0; hi > box.y_min && k < 60; ++k) {
    LayerContribution layer;
    layer.k = k;
    layer.y_hi = hi;
    layer.y_lo = std::max(box.y_min, 0.5 * hi);
    layers.push_back(layer);
    hi = layer.y_lo;
  }
  const bool has_bulk = box.y_max > y_top;
  const int regions = static_cast<int>(layers.size()) + (has_bulk ? 1 : 0);
  const double tol_region = tol / std::max(1, regions);

  bool all_converged = true;
  const auto region_value = [&](double lo, double up) {
    const double tol_inner = 0.5 * tol_region / (up - lo);
    const auto slice = [&](double y) {
      const QuadResult inner = gk_adaptive_seeded(
          [&](double x) { return F(x, y); }, x_lo, x_hi, x_seeds, tol_inner);
      if (!inner.converged) all_converged = false;
      return inner.value;
    };
    const QuadResult outer = gk_adaptive(slice, lo, up, 0.5 * tol_region);
    if (!outer.converged) all_converged = false;
    return outer.value;
  };

  if (has_bulk) rep.bulk = region_value(y_top, box.y_max);
  double sum = rep.bulk;
  for (LayerContribution& layer : layers) {
    layer.value = region_value(layer.y_lo, layer.y_hi);
    sum += layer.value;
  }
  rep.layers = std::move(layers);
  rep.total = sum;

  std::vector<double> values;
  values.reserve(rep.layers.size());
  for (const LayerContribution& layer : rep.layers) values.push_back(layer.value);
  rep.verdict = classify_layer_trend(values, all_converged, &rep.verdict_basis);
  return rep;
}

}  // namespace

double PhiFamily::gauge(double s) const {
  switch (kind) {
    case Kind::exponential:
      return std::exp(s);
    case Kind::power:
      return std::pow(s, p);
    case Kind::subexponential:
      return std::exp(s / std::log(std::exp(1.0) + s));
    case Kind::linear:
      return s;
  }
  throw InternalError("unreachable gauge kind");
}

std::string PhiFamily::label() const {
  switch (kind) {
    case Kind::exponential:
      return "exp";
    case Kind::power: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "power:%.17g", p);
      return buf;
    }
    case Kind::subexponential:
      return "subexp";
    case Kind::linear:
      return "linear";
  }
  throw InternalError("unreachable gauge kind");
}

PhiFamily PhiFamily::parse(const std::string& text, double q) {
  if (!(q > 0) || !std::isfinite(q)) {
    throw InputError("gauge scale q must be a positive finite number");
  }
  PhiFamily phi;
  phi.q = q;
  if (text == "exp") {
    phi.kind = Kind::exponential;
  } else if (text == "subexp") {
    phi.kind = Kind::subexponential;
  } else if (text == "linear") {
    phi.kind = Kind::linear;
  } else if (text.rfind("power:", 0) == 0) {
    phi.kind = Kind::power;
    try {
      size_t used = 0;
      phi.p = std::stod(text.substr(6), &used);
      if (used != text.size() - 6) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw InputError("cannot parse gauge exponent in '" + text + "'");
    }
    if (!(phi.p >= 1) || !std::isfinite(phi.p)) {
      throw InputError("gauge exponent must be at least 1");
    }
  } else {
    throw InputError("unknown gauge '" + text +
                     "'; expected exp, power:<p>, subexp, or linear");
  }
  return phi;
}

void TruncationBox::validate() const {
  if (!(x_extent > 0)) throw InputError("truncation box needs x_extent > 0");
  if (!(0 < y_min) || !(y_min < y_max)) {
    throw InputError("truncation box needs 0 < y_min < y_max");
  }
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::converging:
      return "converging";
    case Verdict::diverging:
      return "diverging";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  throw InternalError("unreachable verdict");
}

Verdict classify_layer_trend(const std::vector<double>& values,
                             bool all_converged, std::string* basis) {
  double vmax = 0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0) {
    if (basis) *basis = "all layers vanish";
    return Verdict::converging;
  }
  if (!all_converged) {
    if (basis) *basis = "quadrature budget exhausted; partial values only";
    return Verdict::inconclusive;
  }

  // Trailing ratios r_k = L_{k+1} / L_k over the last up-to-5 layer pairs.
  const int n = static_cast<int>(values.size());
  std::vector<double> ratios;
  std::vector<double> abscissae;  // 1/(k+2) for the pair ending at layer k+1
  const int first = std::max(0, n - 6);
  for (int k = first; k + 1 < n; ++k) {
    if (!(values[k] > 0) || !(values[k + 1] >= 0)) {
      if (basis) *basis = "nonpositive trailing layer; no ratio trend";
      return Verdict::inconclusive;
    }
    ratios.push_back(values[k + 1] / values[k]);
    abscissae.push_back(1.0 / (k + 2));
  }
  if (ratios.size() < 2) {
    if (basis) *basis = "too few layers for a trend";
    return Verdict::inconclusive;
  }

  double rmin = ratios[0], rmax = ratios[0];
  bool increasing = true;
  for (size_t i = 0; i < ratios.size(); ++i) {
    rmin = std::min(rmin, ratios[i]);
    rmax = std::max(rmax, ratios[i]);
    if (i > 0 && ratios[i] < ratios[i - 1] - 1e-12) increasing = false;
  }

  // Least-squares line of ratio against 1/(k+2); the intercept is the
  // extrapolated limit ratio.  Harmonic layer decay L_k ~ 1/(k+1), whose
  // series diverges, has ratios exactly 1 - 1/(k+2) and extrapolates to 1.
  double su = 0, sr = 0, suu = 0, sur = 0;
  const double m = static_cast<double>(ratios.size());
  for (size_t i = 0; i < ratios.size(); ++i) {
    su += abscissae[i];
    sr += ratios[i];
    suu += abscissae[i] * abscissae[i];
    sur += abscissae[i] * ratios[i];
  }
  const double var = suu - su * su / m;
  const double slope = var > 0 ? (sur - su * sr / m) / var : 0;
  const double limit = sr / m - slope * su / m;

  if (basis) *basis = format_ratios(ratios, limit);
  if (rmin >= 0.999 || (increasing && limit >= 0.995)) return Verdict::diverging;
  if (rmax <= 0.98 && limit <= 0.98) return Verdict::converging;
  return Verdict::inconclusive;
}

IntegrabilityReport spherical_integral(
    const std::function<double(double, double)>& f, const TruncationBox& box,
    double tol, const std::vector<double>& x_seeds) {
  box.validate();
  const auto weighted = [&](double x, double y) {
    return f(x, y) * spherical_density(x, y);
  };
  return layered_integral(weighted, -box.x_extent, box.x_extent, box, tol,
                          x_seeds);
}

TransferCheck transfer_check(const LineHomeo& h, const PhiFamily& phi,
                             const TruncationBox& box, double tol) {
  box.validate();
  std::vector<double> seeds;
  h.kinks_in(-box.x_extent, box.x_extent, seeds);

  TransferCheck out;
  const auto slack = [](double rhs) { return 1e-8 * std::max(1.0, std::abs(rhs)); };

  const auto middle_field = [&](double x, double y) {
    const double K = jet(h, x, y).dilatation;
    const DistortionSample raw = segment_average(h, x, y, 1e-9);
    const DistortionSample mapped = segment_average_of(
        h, x, y, 1e-9, [&](double s) { return phi.scaled(s); });
    const double lhs_lower = phi.scaled(raw.rho / (4 * kBoundConstant));
    const double mid = phi.scaled(K / kBoundConstant);
    const double rhs_upper = std::max(mapped.rho, mapped.avg_combined);
    const double lhs_jensen = phi.scaled(raw.avg_combined);
    ++out.nodes;
    if (lhs_lower > mid + slack(mid)) ++out.lower_violations;
    if (mid > rhs_upper + slack(rhs_upper)) ++out.upper_violations;
    if (lhs_jensen > mapped.avg_combined + slack(mapped.avg_combined)) {
      ++out.jensen_violations;
    }
    return mid;
  };

  const IntegrabilityReport mid_rep =
      spherical_integral(middle_field, box, tol, seeds);
  const IntegrabilityReport left_rep = spherical_integral(
      [&](double x, double y) {
        return phi.scaled(rho(h, x, y) / (4 * kBoundConstant));
      },
      box, tol, seeds);
  const IntegrabilityReport right_rep = spherical_integral(
      [&](double x, double y) { return phi.scaled(rho(h, x, y)); }, box, tol,
      seeds);

  out.left = left_rep.total;
  out.middle = mid_rep.total;
  out.right = right_rep.total;
  out.pointwise_ok = out.lower_violations == 0 && out.upper_violations == 0 &&
                     out.jensen_violations == 0;
  out.empirical_constant = out.right > 0 ? out.middle / out.right : 0;
  return out;
}

CircleIntegrability circle_integrability(const CircleHomeo& hc,
                                         const PhiFamily& phi, double tol) {
  const LineHomeo& lift = hc.lift();
  std::vector<double> knot_seeds;
  lift.kinks_in(0.0, 1.0, knot_seeds);

  CircleIntegrability out;

  // Boundary side: Phi(q rho^c(theta, t)) dt dtheta.  Work in turn units
  // (a, s) = (theta, t) / 2pi, where rho^c(theta, t) = rho_lift(a, s); the
  // Jacobian of the substitution is (2pi)^2.
  {
    TruncationBox tbox;
    tbox.x_extent = kTwoPi;
    tbox.y_min = 0.25 * std::pow(2.0, -14);
    tbox.y_max = 0.25;  // t = pi/2 in turn units
    const auto field = [&](double a, double s) {
      return kTwoPi * kTwoPi * phi.scaled(rho(lift, a, s));
    };
    out.boundary = layered_integral(field, 0.0, 1.0, tbox, tol, knot_seeds);
  }

  // Disk side: Phi(q K / 50) dx dy through the covering strip, area
  // element (2pi)^2 e^{-4 pi y} dx dy; y capped at 2 since the core
  // beyond carries area below 1e-10.
  {
    TruncationBox dbox;
    dbox.x_extent = 1;
    dbox.y_min = std::pow(2.0, -14);
    dbox.y_max = 2;
    const auto field = [&](double x, double y) {
      const double K = jet(lift, x, y).dilatation;
      return kTwoPi * kTwoPi * std::exp(-2 * kTwoPi * y) *
             phi.scaled(K / kBoundConstant);
    };
    out.disk = layered_integral(field, 0.0, 1.0, dbox, tol, knot_seeds);
  }
  return out;
}

LogTailCheck log_tail_criterion(const CircleHomeo& hc,
                                const std::function<double(double)>& g,
                                double t_min) {
  if (!(t_min > 0)) throw InputError("log tail criterion needs t_min > 0");
  const LineHomeo& lift = hc.lift();
  std::vector<double> knots;
  lift.kinks_in(0.0, 1.0, knots);

  std::vector<double> thetas;
  const int n_uniform = 256;
  thetas.reserve(n_uniform + knots.size());
  for (int j = 0; j < n_uniform; ++j) thetas.push_back(kTwoPi * j / n_uniform);
  for (double a : knots) {
    if (a < 1.0) thetas.push_back(kTwoPi * a);
  }

  LogTailCheck out;
  for (double t = 0.5; t >= t_min; t *= 0.5) {
    double sup = 0;
    for (double theta : thetas) {
      const double gv = g(theta);
      if (!(gv >= 0)) {
        throw InputError("log tail criterion needs a nonnegative g");
      }
      const double denom = std::log((1 + gv) / t);
      const double ratio = rho_circular(hc, theta, t) / denom;
      sup = std::max(sup, ratio);
    }
    out.per_scale_sup.push_back(sup);
    out.sup_ratio = std::max(out.sup_ratio, sup);
  }

  // Trend on the trailing scales: growth beyond 2 percent per halving in
  // any of the last four steps reads as unbounded log-relative growth.
  const size_t n = out.per_scale_sup.size();
  const size_t steps = std::min<size_t>(4, n > 0 ? n - 1 : 0);
  out.satisfied = true;
  for (size_t i = n - steps; i < n; ++i) {
    if (out.per_scale_sup[i] > out.per_scale_sup[i - 1] * 1.02 + 1e-12) {
      out.satisfied = false;
    }
  }
  return out;
}

WeldingReport welding_l1_test(const CircleHomeo& hc, double tol) {
  if (!(tol > 0)) throw InputError("welding test needs tol > 0");
  const LineHomeo& lift = hc.lift();
  std::vector<double> knots;
  lift.kinks_in(0.0, 1.0, knots);

  // Kinks of b -> L(b+s) - L(b) sit where b or b+s meets a knot.
  const auto inner_seeds = [&](double s) {
    std::vector<double> seeds = knots;
    for (double a : knots) {
      double shifted = a - s;
      shifted -= std::floor(shifted);
      seeds.push_back(shifted);
    }
    return seeds;
  };

  // G(s) = int_0^1 |log(2 sin(pi (L(b+s) - L(b))))| db; the s integral over
  // (0, 1/2] is doubled for the symmetric negative side, and the angle
  // substitution contributes (2pi)^2.
  const auto G = [&](double s) {
    const auto f = [&](double b) {
      const double d = lift.increments(b, s).first;
      return std::abs(std::log(2 * std::sin(3.14159265358979324 * d)));
    };
    return gk_adaptive_seeded(f, 0.0, 1.0, inner_seeds(s), 1e-10).value;
  };

  // Kinks of G in s at knot differences.
  std::vector<double> s_seeds;
  for (double a : knots) {
    for (double b : knots) {
      double d = a - b;
      d -= std::floor(d);
      if (d > 0 && d < 1) s_seeds.push_back(d);
    }
  }

  WeldingReport rep;
  const double factor = 2 * kTwoPi * kTwoPi;
  double running = 0;
  for (int m = 1; m <= 40; ++m) {
    const double lo = std::pow(2.0, -m - 1);
    const double hi = std::pow(2.0, -m);
    WeldingShell shell;
    shell.m = m;
    shell.value = factor * gk_adaptive_seeded(G, lo, hi, s_seeds, 1e-9).value;
    rep.shells.push_back(shell);
    running += shell.value;
    if (m >= 4 && shell.value < tol * std::max(1.0, running)) {
      const double prev = rep.shells[rep.shells.size() - 2].value;
      const double r = prev > 0 ? shell.value / prev : 0;
      // A clean geometric decay supports extrapolating the remaining tail;
      // anything slower leaves the truncated sum as a lower bound.
      if (r < 0.95) {
        rep.tail_estimate = shell.value * r / (1 - r);
        rep.converged = true;
      }
      break;
    }
  }
  rep.total = running + rep.tail_estimate;
  return rep;
}

}  // namespace qcx
