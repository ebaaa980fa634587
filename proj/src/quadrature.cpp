#include "qcx/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "qcx/errors.hpp"

namespace qcx {
namespace {

// Gauss-Kronrod 15(7) nodes and weights on [-1,1], positive half.
// Even-indexed nodes are the embedded Gauss-7 points.
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

struct Cell {
  double a, b, value, error;
  bool operator<(const Cell& o) const { return error < o.error; }
};

Cell evaluate_cell(const Integrand& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kKronrodWeights[7] * f(mid);
  double gauss = kGaussWeights[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  // Plain |K15 - G7| as the cell estimate: conservative but robust, and the
  // adaptive loop only cares about relative ordering of cells.
  const double err = std::max(std::abs(kronrod - gauss), std::abs(kronrod) * 1e-16);
  return {a, b, kronrod, err};
}

QuadResult run_adaptive(const Integrand& f, std::vector<Cell> heap,
                        double tol_abs, int max_cells) {
  std::make_heap(heap.begin(), heap.end());
  double total_err = 0, total_val = 0;
  for (const Cell& c : heap) {
    total_err += c.error;
    total_val += c.value;
  }
  while (total_err > tol_abs && static_cast<int>(heap.size()) < max_cells) {
    std::pop_heap(heap.begin(), heap.end());
    Cell worst = heap.back();
    heap.pop_back();
    if (!(worst.b - worst.a > 0) || worst.b - worst.a < 1e-15 * (std::abs(worst.a) + 1)) {
      // Cell too narrow to split further; freeze it.
      worst.error = 0;
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      bool all_frozen = std::all_of(heap.begin(), heap.end(),
                                    [](const Cell& c) { return c.error == 0; });
      total_err = 0;
      for (const Cell& c : heap) total_err += c.error;
      if (all_frozen) break;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Cell left = evaluate_cell(f, worst.a, mid);
    Cell right = evaluate_cell(f, mid, worst.b);
    total_val += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
  }
  // Recompute sums in a fixed order for determinism.
  std::sort(heap.begin(), heap.end(),
            [](const Cell& x, const Cell& y) { return x.a < y.a; });
  QuadResult r;
  r.value = 0;
  r.error = 0;
  for (const Cell& c : heap) {
    r.value += c.value;
    r.error += c.error;
  }
  r.cells = static_cast<int>(heap.size());
  r.converged = r.error <= tol_abs;
  return r;
}

std::vector<Cell> initial_cells(const Integrand& f, double a, double b,
                                std::vector<double> seeds) {
  seeds.erase(std::remove_if(seeds.begin(), seeds.end(),
                             [&](double s) { return !(s > a && s < b); }),
              seeds.end());
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<Cell> cells;
  double cur = a;
  for (double s : seeds) {
    if (s - cur > 1e-14 * (std::abs(cur) + 1)) {
      cells.push_back(evaluate_cell(f, cur, s));
      cur = s;
    }
  }
  cells.push_back(evaluate_cell(f, cur, b));
  return cells;
}

double simpson_recurse(const Integrand& f, double a, double fa, double m,
                       double fm, double b, double fb, double whole,
                       double tol, int depth, int max_depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || b - a < 1e-14 * (std::abs(a) + 1))
    return left + right + delta / 15.0;
  if (depth >= max_depth)
    throw NumericError("adaptive Simpson exceeded depth budget",
                       std::abs(delta) / 15.0);
  return simpson_recurse(f, a, fa, lm, flm, m, fm, left, tol / 2, depth + 1,
                         max_depth) +
         simpson_recurse(f, m, fm, rm, frm, b, fb, right, tol / 2, depth + 1,
                         max_depth);
}

double simpson_interval(const Integrand& f, double a, double b, double tol,
                        int max_depth) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, a, fa, m, fm, b, fb, whole, tol, 0, max_depth);
}

}  // namespace

QuadResult gk_panel(const Integrand& f, double a, double b) {
  Cell c = evaluate_cell(f, a, b);
  return {c.value, c.error, 1, true};
}

QuadResult gk_adaptive(const Integrand& f, double a, double b, double tol_abs,
                       int max_cells) {
  if (!(b > a)) return {0, 0, 0, true};
  return run_adaptive(f, {evaluate_cell(f, a, b)}, tol_abs, max_cells);
}

QuadResult gk_adaptive_seeded(const Integrand& f, double a, double b,
                              std::vector<double> seeds, double tol_abs,
                              int max_cells) {
  if (!(b > a)) return {0, 0, 0, true};
  return run_adaptive(f, initial_cells(f, a, b, std::move(seeds)), tol_abs,
                      max_cells);
}

double gk_integrate(const Integrand& f, double a, double b, double tol_abs,
                    int max_cells) {
  QuadResult r = gk_adaptive(f, a, b, tol_abs, max_cells);
  if (!r.converged)
    throw NumericError("adaptive quadrature exhausted its cell budget",
                       r.error);
  return r.value;
}

double gk_integrate_seeded(const Integrand& f, double a, double b,
                           std::vector<double> seeds, double tol_abs,
                           int max_cells) {
  QuadResult r =
      gk_adaptive_seeded(f, a, b, std::move(seeds), tol_abs, max_cells);
  if (!r.converged)
    throw NumericError("adaptive quadrature exhausted its cell budget",
                       r.error);
  return r.value;
}

double simpson_adaptive(const Integrand& f, double a, double b, double tol_abs,
                        int max_depth) {
  return simpson_interval(f, a, b, tol_abs, max_depth);
}

double simpson_adaptive_seeded(const Integrand& f, double a, double b,
                               std::vector<double> seeds, double tol_abs,
                               int max_depth) {
  if (!(b > a)) return 0.0;
  seeds.erase(std::remove_if(seeds.begin(), seeds.end(),
                             [&](double s) { return !(s > a && s < b); }),
              seeds.end());
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<double> knots;
  knots.push_back(a);
  for (double s : seeds)
    if (s - knots.back() > 1e-14 * (std::abs(s) + 1)) knots.push_back(s);
  knots.push_back(b);
  const double total_len = b - a;
  double acc = 0;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    const double len = knots[i + 1] - knots[i];
    acc += simpson_interval(f, knots[i], knots[i + 1],
                            tol_abs * std::max(len / total_len, 1e-3),
                            max_depth);
  }
  return acc;
}

double periodic_integral(const Integrand& f, double a, double b,
                         double tol_abs, int max_doublings) {
  const double len = b - a;
  int n = 16;
  auto trapz = [&](int m) {
    double s = 0;
    const double h = len / m;
    for (int i = 0; i < m; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
  };
  double prev = trapz(n);
  for (int d = 0; d < max_doublings; ++d) {
    n *= 2;
    double cur = trapz(n);
    if (std::abs(cur - prev) <= tol_abs) return cur;
    prev = cur;
  }
  return prev;
}

PartitionedQuadResult gk_adaptive_partitioned(const Integrand& f, double a,
                                              double b, double tol_abs,
                                              int max_cells) {
  PartitionedQuadResult out;
  if (!(b > a)) {
    out.result = {0, 0, 0, true};
    return out;
  }
  std::vector<Cell> heap = {evaluate_cell(f, a, b)};
  // Duplicate of run_adaptive that keeps the partition; kept separate so the
  // hot path above stays allocation-light.
  std::make_heap(heap.begin(), heap.end());
  double total_err = heap[0].error;
  while (total_err > tol_abs && static_cast<int>(heap.size()) < max_cells) {
    std::pop_heap(heap.begin(), heap.end());
    Cell worst = heap.back();
    heap.pop_back();
    if (worst.b - worst.a < 1e-15 * (std::abs(worst.a) + 1)) {
      worst.error = 0;
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      total_err = 0;
      for (const Cell& c : heap) total_err += c.error;
      if (total_err == 0) break;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Cell left = evaluate_cell(f, worst.a, mid);
    Cell right = evaluate_cell(f, mid, worst.b);
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
  }
  std::sort(heap.begin(), heap.end(),
            [](const Cell& x, const Cell& y) { return x.a < y.a; });
  QuadResult r;
  for (const Cell& c : heap) {
    r.value += c.value;
    r.error += c.error;
    out.cells.emplace_back(c.a, c.b);
  }
  r.cells = static_cast<int>(heap.size());
  r.converged = r.error <= tol_abs;
  out.result = r;
  return out;
}

QuadResult gk_adaptive_from_cells(
    const Integrand& f, const std::vector<std::pair<double, double>>& cells,
    double tol_abs, int max_cells) {
  if (cells.empty()) return {0, 0, 0, true};
  std::vector<Cell> heap;
  heap.reserve(cells.size());
  for (auto [a, b] : cells) heap.push_back(evaluate_cell(f, a, b));
  return run_adaptive(f, std::move(heap), tol_abs,
                      std::max<int>(max_cells, static_cast<int>(cells.size()) + 8));
}

}  // namespace qcx
