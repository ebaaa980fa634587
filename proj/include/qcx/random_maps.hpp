#pragma once

// Deterministic sampling helpers for stress tests. std::uniform_real_distribution
// is not pinned down across standard libraries, so the uniforms here are built
// directly from the mt19937_64 word stream and reproduce bit-for-bit anywhere.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qcx/boundary_map.hpp"

namespace qcx {

inline double unit_real(std::mt19937_64& rng) {
  // Top 53 bits of the 64-bit word give a uniform double in [0, 1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * unit_real(rng);
}

// Log-uniform over [lo, hi], lo > 0. Used for slopes and heights so the
// samples cover several orders of magnitude evenly.
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform_real(rng, std::log(lo), std::log(hi)));
}

// Random increasing piecewise linear map: 2 to 9 knots in [-8, 8] with
// log-uniform segment and tail slopes in [e^-2, e^2].
inline LineHomeo random_pl_map(std::mt19937_64& rng) {
  const int knots = 2 + static_cast<int>(rng() % 8);
  std::vector<double> ts(knots), hs(knots);
  ts[0] = uniform_real(rng, -8, 0);
  hs[0] = uniform_real(rng, -8, 8);
  for (int i = 1; i < knots; ++i) {
    ts[i] = ts[i - 1] + uniform_real(rng, 0.05, 16.0 / knots);
    hs[i] = hs[i - 1] + (ts[i] - ts[i - 1]) * log_uniform(rng, std::exp(-2.0),
                                                          std::exp(2.0));
  }
  const double left = log_uniform(rng, std::exp(-2.0), std::exp(2.0));
  const double right = log_uniform(rng, std::exp(-2.0), std::exp(2.0));
  return LineHomeo::piecewise_linear(ts, hs, left, right);
}

// Random evaluation point with log-uniform height in [y_lo, y_hi].
inline std::pair<double, double> random_point(std::mt19937_64& rng, double x_lo,
                                              double x_hi, double y_lo,
                                              double y_hi) {
  return {uniform_real(rng, x_lo, x_hi), log_uniform(rng, y_lo, y_hi)};
}

}  // namespace qcx
