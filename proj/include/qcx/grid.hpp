#pragma once

#include <cmath>
#include <vector>

#include "qcx/errors.hpp"

namespace qcx {

// Rectangular sample grid over a window of the upper half-plane.  The y
// axis can be spaced uniformly or geometrically (constant ratio, refining
// toward the boundary); x is always uniform.
struct GridSpec {
  double x0 = -5, x1 = 5;
  double y0 = 1e-4, y1 = 5;
  int nx = 2, ny = 2;
  enum class Spacing { uniform, geometric_y } spacing = Spacing::uniform;

  void validate() const {
    if (!(x0 < x1)) throw InputError("grid needs x0 < x1");
    if (!(0 < y0) || !(y0 < y1)) throw InputError("grid needs 0 < y0 < y1");
    if (nx < 2 || ny < 2) throw InputError("grid needs nx, ny >= 2");
  }

  std::vector<double> xs() const {
    std::vector<double> v(nx);
    for (int i = 0; i < nx; ++i)
      v[i] = x0 + (x1 - x0) * static_cast<double>(i) / (nx - 1);
    return v;
  }

  std::vector<double> ys() const {
    std::vector<double> v(ny);
    if (spacing == Spacing::uniform) {
      for (int j = 0; j < ny; ++j)
        v[j] = y0 + (y1 - y0) * static_cast<double>(j) / (ny - 1);
    } else {
      const double lr = std::log(y1 / y0);
      for (int j = 0; j < ny; ++j)
        v[j] = y0 * std::exp(lr * static_cast<double>(j) / (ny - 1));
      v.front() = y0;
      v.back() = y1;
    }
    return v;
  }
};

}  // namespace qcx
