#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcx/boundary_map.hpp"

namespace qcx {

// Source grid description for an SVG render.  The window fields give the
// half-plane rectangle to cover with grid lines; for the disk the same y
// range selects ring radii through r = e^{-2 pi y}, so y0 fixes the
// outermost ring and y1 the innermost.
struct RenderSpec {
  enum class Domain { half_plane, disk } domain = Domain::half_plane;
  double x0 = -2;
  double x1 = 2;
  double y0 = 0.05;
  double y1 = 2;
  int horizontal_lines = 9;  // horizontals, or rings on the disk
  int vertical_lines = 9;    // verticals, or rays on the disk
  int samples_per_line = 129;
  double stroke_width = 0.01;
  std::string output_path = "render.svg";

  void validate() const;
};

// One source grid line pushed through the extension.
struct Polyline {
  std::vector<std::pair<double, double>> points;
  bool from_vertical = false;
};

// Images of the window's horizontal and vertical grid lines under the
// extension of h.  Horizontal lines and the vertical sampling are spaced
// geometrically in y, matching the hyperbolic geometry of the strip.
std::vector<Polyline> half_plane_grid_image(const LineHomeo& h,
                                            const RenderSpec& spec);

// Images of concentric rings and radial rays under the disk extension of
// the circle map: a point r e^{i theta} maps through the lift's extension
// at (theta / 2 pi, -log(r) / 2 pi) and back.
std::vector<Polyline> disk_grid_image(const CircleHomeo& hc,
                                      const RenderSpec& spec);

// Deterministic SVG document around the polylines: horizontal sources in
// the first group, vertical sources in the second, coordinates y-flipped
// and printed with six decimals, view box fitted to the data.
std::string svg_document(const std::vector<Polyline>& lines,
                         double stroke_width);

std::string render_svg(const LineHomeo& h, const RenderSpec& spec);
std::string render_svg(const CircleHomeo& hc, const RenderSpec& spec);

}  // namespace qcx
