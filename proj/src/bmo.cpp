#include "qcx/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <utility>

#include "qcx/distortion.hpp"
#include "qcx/errors.hpp"
#include "qcx/extension.hpp"
#include "qcx/quadrature.hpp"

namespace qcx {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2 * kPi;

double parse_strict_double(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(value))
    throw InputError(std::string(what) + " \"" + text + "\" is not a number");
  return value;
}

void validate_ball(const Ball& b) {
  if (!std::isfinite(b.cx) || !(b.cy > 0) || !std::isfinite(b.cy))
    throw InputError("ball center must lie in the upper half-plane");
  if (!(b.r > 0) || !(b.r < b.cy))
    throw InputError(
        "ball radius must be positive and smaller than the center height");
}

// Both passes below integrate the field relative to a fixed offset, so a
// constant field produces an identically zero integrand and the quadrature
// returns an exact zero.  That makes "averages preserve constants" hold to
// the bit, and it keeps the integrand scale small for fields with a large
// value at the center.
//
// Tolerance split: the ring mean gets half the budget and the radial
// integral the other half.  An absolute tolerance of pi*tol on the angular
// integral bounds the ring mean error by tol/2, and that bound survives the
// radial averaging unchanged because (2/r^2) int_0^r s ds = 1.

struct RadialMean {
  double base = 0;   // field value at the center
  double shift = 0;  // mean minus base
  std::vector<std::pair<double, double>> cells;
};

RadialMean ball_mean_shift(const PlaneField& A, const Ball& b, double tol) {
  RadialMean out;
  out.base = A(b.cx, b.cy);
  const auto ring = [&](double s) {
    if (s == 0) return 0.0;
    return periodic_integral(
               [&](double th) {
                 return A(b.cx + s * std::cos(th), b.cy + s * std::sin(th)) -
                        out.base;
               },
               0, kTwoPi, kPi * tol) /
           kTwoPi;
  };
  PartitionedQuadResult radial = gk_adaptive_partitioned(
      [&](double s) { return s * ring(s); }, 0, b.r, 0.25 * tol * b.r * b.r);
  if (!radial.result.converged)
    throw NumericError("ball average quadrature exhausted its cell budget",
                       radial.result.error * 2 / (b.r * b.r));
  out.shift = radial.result.value * 2 / (b.r * b.r);
  out.cells = std::move(radial.cells);
  return out;
}

// Second pass for the mean oscillation, refining from the first pass's
// radial partition so both passes resolve the same structure.
BallOscillation ball_two_pass(const PlaneField& A, const Ball& b, double tol) {
  validate_ball(b);
  const RadialMean first = ball_mean_shift(A, b, tol);
  BallOscillation out;
  out.ball = b;
  out.mean = first.base + first.shift;
  const auto ring = [&](double s) {
    if (s == 0) return std::abs(first.shift);
    return periodic_integral(
               [&](double th) {
                 return std::abs(A(b.cx + s * std::cos(th),
                                   b.cy + s * std::sin(th)) -
                                 first.base - first.shift);
               },
               0, kTwoPi, kPi * tol) /
           kTwoPi;
  };
  QuadResult radial = gk_adaptive_from_cells(
      [&](double s) { return s * ring(s); }, first.cells,
      0.25 * tol * b.r * b.r);
  if (!radial.converged)
    throw NumericError("ball oscillation quadrature exhausted its cell budget",
                       radial.error * 2 / (b.r * b.r));
  out.oscillation = radial.value * 2 / (b.r * b.r);
  return out;
}

// Fixed polar midpoint rule about the ball center, used for the seminorms
// of the averaged fields where every sample is itself a quadrature.  An
// estimator feeding a stability ratio does not warrant nested adaptivity.
double midpoint_oscillation(const std::function<double(double, double)>& F,
                            const Ball& b) {
  constexpr int kRadial = 16;
  constexpr int kAngular = 32;
  const double center = F(b.cx, b.cy);
  std::vector<double> values(kRadial * kAngular);
  double weight_sum = 0;
  double value_sum = 0;
  for (int i = 0; i < kRadial; ++i) {
    const double s = b.r * (i + 0.5) / kRadial;
    for (int k = 0; k < kAngular; ++k) {
      const double th = kTwoPi * (k + 0.5) / kAngular;
      const double g =
          F(b.cx + s * std::cos(th), b.cy + s * std::sin(th)) - center;
      values[i * kAngular + k] = g;
      value_sum += s * g;
      weight_sum += s;
    }
  }
  const double shift = value_sum / weight_sum;
  double osc_sum = 0;
  for (int i = 0; i < kRadial; ++i) {
    const double s = b.r * (i + 0.5) / kRadial;
    for (int k = 0; k < kAngular; ++k)
      osc_sum += s * std::abs(values[i * kAngular + k] - shift);
  }
  return osc_sum / weight_sum;
}

double ratio_or_zero(double num, double den) {
  if (num == 0 && den == 0) return 0;
  if (den == 0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

PlaneField PlaneField::constant(double c) {
  char tag[48];
  std::snprintf(tag, sizeof tag, "const:%.17g", c);
  return {[c](double, double) { return c; }, tag};
}

PlaneField PlaneField::log_inv_y() {
  return {[](double, double y) { return -std::log(y); }, "log_inv_y"};
}

PlaneField PlaneField::inv_y() {
  return {[](double, double y) { return 1 / y; }, "inv_y"};
}

PlaneField PlaneField::sin_log_inv_y() {
  return {[](double, double y) { return std::sin(-std::log(y)); },
          "sin_log_inv_y"};
}

PlaneField PlaneField::bilinear_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("csv field: cannot open " + path);

  const auto split = [](const std::string& line) {
    std::vector<std::string> tokens;
    std::string::size_type start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      std::string cell = line.substr(start, comma - start);
      const auto lo = cell.find_first_not_of(" \t\r");
      if (lo == std::string::npos) {
        cell.clear();
      } else {
        cell = cell.substr(lo, cell.find_last_not_of(" \t\r") - lo + 1);
      }
      tokens.push_back(cell);
      if (comma == std::string::npos) return tokens;
      start = comma + 1;
    }
  };

  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto tokens = split(line);
    if (!header_done) {
      if (tokens.size() < 3)
        throw InputError("csv field: header row needs at least two x values");
      for (std::size_t i = 1; i < tokens.size(); ++i)
        xs.push_back(parse_strict_double(tokens[i], "csv field: x coordinate"));
      header_done = true;
      continue;
    }
    if (tokens.size() != xs.size() + 1)
      throw InputError("csv field: row has " + std::to_string(tokens.size()) +
                       " cells, expected " + std::to_string(xs.size() + 1));
    const double y = parse_strict_double(tokens[0], "csv field: y coordinate");
    if (!(y > 0)) throw InputError("csv field: y coordinates must be positive");
    ys.push_back(y);
    std::vector<double> row;
    for (std::size_t i = 1; i < tokens.size(); ++i)
      row.push_back(parse_strict_double(tokens[i], "csv field: value"));
    rows.push_back(std::move(row));
  }
  if (!header_done) throw InputError("csv field: file is empty");
  if (ys.size() < 2) throw InputError("csv field: need at least two rows");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i]))
      throw InputError("csv field: x coordinates must be strictly increasing");
  for (std::size_t i = 1; i < ys.size(); ++i)
    if (!(ys[i - 1] < ys[i]))
      throw InputError("csv field: y coordinates must be strictly increasing");

  struct Table {
    std::vector<double> xs, ys;
    std::vector<std::vector<double>> rows;
  };
  auto table = std::make_shared<Table>(Table{std::move(xs), std::move(ys),
                                             std::move(rows)});
  const auto locate = [](const std::vector<double>& grid, double t,
                         std::size_t* index) {
    if (t <= grid.front()) {
      *index = 0;
      return 0.0;
    }
    if (t >= grid.back()) {
      *index = grid.size() - 2;
      return 1.0;
    }
    const auto it = std::upper_bound(grid.begin(), grid.end(), t);
    *index = static_cast<std::size_t>(it - grid.begin()) - 1;
    return (t - grid[*index]) / (grid[*index + 1] - grid[*index]);
  };
  return {[table, locate](double x, double y) {
            std::size_t i = 0;
            std::size_t j = 0;
            const double ty = locate(table->ys, y, &j);
            const double tx = locate(table->xs, x, &i);
            const double lo = table->rows[j][i] * (1 - tx) +
                              table->rows[j][i + 1] * tx;
            const double hi = table->rows[j + 1][i] * (1 - tx) +
                              table->rows[j + 1][i + 1] * tx;
            return lo * (1 - ty) + hi * ty;
          },
          "csv:" + path};
}

PlaneField PlaneField::builtin(const std::string& name) {
  if (name.rfind("const:", 0) == 0)
    return constant(parse_strict_double(name.substr(6), "field constant"));
  if (name == "log_inv_y") return log_inv_y();
  if (name == "inv_y") return inv_y();
  if (name == "sin_log_inv_y") return sin_log_inv_y();
  if (name.rfind("csv:", 0) == 0) return bilinear_csv(name.substr(4));
  throw InputError("unknown field \"" + name +
                   "\"; expected const:<c>, log_inv_y, inv_y, "
                   "sin_log_inv_y, or csv:<path>");
}

double ball_average(const PlaneField& A, double x, double y, double tol) {
  const Ball b{x, y, y / 2};
  validate_ball(b);
  const RadialMean m = ball_mean_shift(A, b, tol);
  return m.base + m.shift;
}

double rect_average(const PlaneField& A, double x, double y, double tol) {
  if (!(y > 0) || !std::isfinite(x) || !std::isfinite(y))
    throw InputError("rectangle average needs a center with y > 0");
  const double base = A(x, y);
  // Same shifted-integrand scheme and budget split as the ball: the inner
  // row mean carries error at most tol/2 through the outer average, and the
  // outer integral contributes the other half.
  const auto row_mean = [&](double v) {
    return gk_integrate([&](double u) { return A(u, v) - base; }, x - y,
                        x + y, tol * y) /
           (2 * y);
  };
  const QuadResult outer =
      gk_adaptive(row_mean, y / 2, 1.5 * y, 0.5 * tol * y);
  if (!outer.converged)
    throw NumericError(
        "rectangle average quadrature exhausted its cell budget",
        outer.error / y);
  return base + outer.value / y;
}

std::vector<Ball> dyadic_ball_family(int k_min, int k_max) {
  if (k_min > k_max)
    throw InputError("ball family needs k_min <= k_max");
  const double height_mults[] = {1.0, 1.5, 2.0};
  const double radius_mults[] = {0.25, 0.5 * (1 - 0x1p-6)};
  std::vector<Ball> family;
  for (int k = k_min; k <= k_max; ++k) {
    const double scale = std::ldexp(1.0, -k);
    for (int j = -2; j <= 2; ++j)
      for (const double hm : height_mults)
        for (const double rm : radius_mults)
          family.push_back({j * scale, hm * scale, rm * hm * scale});
  }
  return family;
}

BmoEstimate bmo_seminorm(const PlaneField& A, const std::vector<Ball>& family,
                         double tol) {
  BmoEstimate est;
  est.balls.reserve(family.size());
  for (const Ball& b : family) {
    est.balls.push_back(ball_two_pass(A, b, tol));
    const double osc = est.balls.back().oscillation;
    if (osc > est.seminorm_lower_bound) {
      est.seminorm_lower_bound = osc;
      est.argmax_index = est.balls.size() - 1;
    }
  }
  return est;
}

AverageOperatorReport average_operator_check(const PlaneField& A,
                                             const std::vector<Ball>& family,
                                             double tol) {
  AverageOperatorReport rep;
  rep.source_seminorm = bmo_seminorm(A, family, tol).seminorm_lower_bound;

  std::vector<std::pair<double, double>> centers;
  centers.reserve(family.size());
  for (const Ball& b : family) centers.emplace_back(b.cx, b.cy);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  for (const auto& [cx, cy] : centers) {
    const double gap =
        std::abs(rect_average(A, cx, cy, tol) - ball_average(A, cx, cy, tol));
    rep.sup_center_gap = std::max(rep.sup_center_gap, gap);
  }

  // Every sample of an averaged field is a full quadrature, so the derived
  // seminorms run on a strided subfamily with a looser inner tolerance.
  std::vector<Ball> reduced;
  const std::size_t stride = std::max<std::size_t>(1, family.size() / 24);
  for (std::size_t i = 0; i < family.size() && reduced.size() < 24;
       i += stride)
    reduced.push_back(family[i]);
  const auto ball_field = [&](double x, double y) {
    return ball_average(A, x, y, 1e-6);
  };
  const auto rect_field = [&](double x, double y) {
    return rect_average(A, x, y, 1e-6);
  };
  for (const Ball& b : reduced) {
    rep.ball_image_seminorm =
        std::max(rep.ball_image_seminorm, midpoint_oscillation(ball_field, b));
    rep.rect_image_seminorm =
        std::max(rep.rect_image_seminorm, midpoint_oscillation(rect_field, b));
  }

  rep.gap_ratio = ratio_or_zero(rep.sup_center_gap, rep.source_seminorm);
  rep.ball_ratio = ratio_or_zero(rep.ball_image_seminorm, rep.source_seminorm);
  rep.rect_ratio = ratio_or_zero(rep.rect_image_seminorm, rep.source_seminorm);
  return rep;
}

MajorantReport bmo_majorant_check(const LineHomeo& h, const PlaneField& A,
                                  const std::vector<Ball>& family,
                                  const GridSpec& grid, double tol) {
  grid.validate();
  MajorantReport rep;
  rep.seminorm_estimate = bmo_seminorm(A, family, tol).seminorm_lower_bound;
  const std::vector<double> xs = grid.xs();
  const std::vector<double> ys = grid.ys();
  for (const double y : ys) {
    for (const double x : xs) {
      ++rep.points;
      const double k_val = jet(h, x, y).dilatation;
      const double rho_val = rho(h, x, y);
      const double avg = ball_average(A, x, y, tol);
      const double slack = 1e-9 * std::max(1.0, std::abs(avg));
      bool admitted = false;
      if (k_val <= avg + slack) {
        ++rep.dilatation_hypothesis_points;
        admitted = true;
        if (rho_val > 4 * (avg + slack)) ++rep.dilatation_violations;
      }
      if (rho_val <= avg + slack) {
        ++rep.distortion_hypothesis_points;
        admitted = true;
        const double denom = avg + rep.seminorm_estimate;
        if (denom > 0)
          rep.growth_sup_ratio = std::max(rep.growth_sup_ratio, k_val / denom);
      }
      if (!admitted) ++rep.excluded_points;
    }
  }
  return rep;
}

}  // namespace qcx
