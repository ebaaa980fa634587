#include "qcx/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "qcx/errors.hpp"
#include "qcx/extension.hpp"
#include "qcx/quadrature.hpp"

namespace qcx {
namespace {

constexpr double kQuarterTurn = 1.5707963267948966192313216916398;

// Identity post-map shared by segment_average.
double pass_through(double r) { return r; }

DistortionSample averages_of(const LineHomeo& h, double x, double y,
                             double tol,
                             const std::function<double(double)>& post) {
  if (!(y > 0)) throw InputError("segment averages need y > 0");
  // Along the right segment the three evaluation points of rho are x+y
  // (fixed), x+z, and x-y+2z; along the left one they are x+y+2z, x+z, and
  // x-y (fixed).  Each slope break b of h therefore kinks the integrands at
  // z = b-x and z = (b-x+y)/2 or (b-x-y)/2, which seed the subdivision.
  std::vector<double> kinks;
  h.kinks_in(x - y, x + y, kinks);
  std::vector<double> seeds_r, seeds_l;
  seeds_r.reserve(2 * kinks.size());
  seeds_l.reserve(2 * kinks.size());
  for (double b : kinks) {
    seeds_r.push_back(b - x);
    seeds_r.push_back(0.5 * (b - x + y));
    seeds_l.push_back(b - x);
    seeds_l.push_back(0.5 * (b - x - y));
  }
  const auto f_right = [&](double z) { return post(rho(h, x + z, y - z)); };
  const auto f_left = [&](double z) { return post(rho(h, x + z, y + z)); };
  // Convex gauges can push the integrand scale far past 1 (exp of a large
  // rho), where a fixed absolute tolerance is unreachable in doubles.  A
  // probe of each side rescales the request so tol acts relative to the
  // integrand's magnitude once that magnitude exceeds 1.  Between seeds rho
  // is a Moebius function of z, hence monotone, so the maximum over the
  // endpoints and seed points is the exact peak for piecewise-linear maps.
  const auto probe = [](const std::function<double(double)>& f, double a,
                        double b, const std::vector<double>& seeds) {
    double peak = std::max({1.0, std::abs(f(a)), std::abs(f(b))});
    for (double s : seeds) {
      if (s > a && s < b) peak = std::max(peak, std::abs(f(s)));
    }
    return peak;
  };
  const double tol_int = 0.5 * tol * y / 4;
  const double scale_r = probe(f_right, 0, y / 4, seeds_r);
  const double scale_l = probe(f_left, -y / 4, 0, seeds_l);
  const double right = simpson_adaptive_seeded(
      f_right, 0, y / 4, std::move(seeds_r), tol_int * scale_r);
  const double left = simpson_adaptive_seeded(
      f_left, -y / 4, 0, std::move(seeds_l), tol_int * scale_l);
  DistortionSample s;
  s.rho = post(rho(h, x, y));
  s.avg_right = right * 4 / y;
  s.avg_left = left * 4 / y;
  s.avg_combined = 0.5 * (s.avg_right + s.avg_left);
  return s;
}

}  // namespace

double rho(const LineHomeo& h, double x, double t) {
  if (!(t > 0)) throw InputError("rho needs t > 0");
  const auto [dp, dm] = h.increments(x, t);
  const double r = dp / dm;
  return std::max(r, 1 / r);
}

double rho_circular(const CircleHomeo& hc, double theta, double t) {
  if (!(t > 0) || !(t < kQuarterTurn))
    throw InputError("rho_circular needs 0 < t < pi/2");
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  return rho(hc.lift(), theta / kTwoPi, t / kTwoPi);
}

DistortionSample segment_average(const LineHomeo& h, double x, double y,
                                 double tol) {
  return averages_of(h, x, y, tol, pass_through);
}

DistortionSample segment_average_of(
    const LineHomeo& h, double x, double y, double tol,
    const std::function<double(double)>& post) {
  return averages_of(h, x, y, tol, post);
}

NormalizedTriple beta_xi_eta(const LineHomeo& h, double x, double y,
                             double tol) {
  if (!(y > 0)) throw InputError("beta_xi_eta needs y > 0");
  const auto [dp0, dm0] = h.increments(x, y);
  const OffsetStats o = h.offsets(x, y, tol * std::min(dp0, dm0));
  NormalizedTriple t;
  t.beta = o.diff_minus / o.diff_plus;
  t.xi = 1 - o.mean_plus / o.diff_plus;
  t.eta = 1 - o.mean_minus / o.diff_minus;
  t.beta_is_rho = t.beta >= 1;
  return t;
}

double F_value(double beta, double xi, double eta) {
  if (!(beta > 0)) throw InputError("F_value needs beta > 0");
  if (!(xi + eta > 0)) throw InputError("F_value needs xi + eta > 0");
  return (beta * (1 + eta * eta) + (1 / beta) * (1 + xi * xi)) / (xi + eta);
}

BoundsReport check_bounds(const LineHomeo& h, const GridSpec& grid,
                          double tol, std::vector<BoundsRow>* rows,
                          int threads) {
  grid.validate();
  const std::vector<double> xs = grid.xs();
  const std::vector<double> ys = grid.ys();
  const double slack = h.exact_integrals() ? 1e-9 : 10 * tol;
  std::vector<BoundsRow> buf(xs.size() * ys.size());

  auto run_rows = [&](size_t j_begin, size_t j_end) {
    for (size_t j = j_begin; j < j_end; ++j) {
      for (size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i], y = ys[j];
        BoundsRow& r = buf[j * xs.size() + i];
        r.x = x;
        r.y = y;
        r.dilatation = jet(h, x, y, tol).dilatation;
        const DistortionSample s = segment_average(h, x, y, tol);
        r.rho = s.rho;
        r.avg_left = s.avg_left;
        r.avg_right = s.avg_right;
        r.avg_combined = s.avg_combined;
        r.lower_ok = s.rho / 4 <= r.dilatation + slack;
        r.upper_ok = r.dilatation <=
                     kBoundConstant * std::max(s.rho, s.avg_combined) + slack;
      }
    }
  };

  threads = std::clamp(threads, 1, static_cast<int>(ys.size()));
  if (threads <= 1) {
    run_rows(0, ys.size());
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const size_t chunk = (ys.size() + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const size_t lo = w * chunk;
      const size_t hi = std::min(ys.size(), lo + chunk);
      pool.emplace_back([&, w, lo, hi] {
        try {
          run_rows(lo, hi);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  BoundsReport rep;
  for (const BoundsRow& r : buf) {
    ++rep.points_checked;
    rep.max_ratio_lower =
        std::max(rep.max_ratio_lower, r.rho / (4 * r.dilatation));
    rep.max_ratio_upper = std::max(
        rep.max_ratio_upper,
        r.dilatation / (kBoundConstant * std::max(r.rho, r.avg_combined)));
    if (!r.lower_ok) ++rep.lower_violations;
    if (!r.upper_ok) ++rep.upper_violations;
  }
  if (rows) *rows = std::move(buf);
  return rep;
}

}  // namespace qcx
