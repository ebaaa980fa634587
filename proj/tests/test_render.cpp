#include "qcx/render.hpp"

#include <cmath>
#include <string>

#include "doctest.h"
#include "qcx/errors.hpp"

using namespace qcx;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("identity grid image halves heights and keeps verticals in place") {
  RenderSpec spec;
  spec.x0 = -1;
  spec.x1 = 1;
  spec.y0 = 0.25;
  spec.y1 = 1;
  spec.horizontal_lines = 3;
  spec.vertical_lines = 3;
  spec.samples_per_line = 5;
  const auto lines = half_plane_grid_image(LineHomeo::identity(), spec);
  REQUIRE(lines.size() == 6);
  // Horizontals come first, spaced geometrically: y = 1/4, 1/2, 1.
  const double heights[] = {0.25, 0.5, 1.0};
  for (int i = 0; i < 3; ++i) {
    CHECK_FALSE(lines[i].from_vertical);
    REQUIRE(lines[i].points.size() == 5);
    CHECK(lines[i].points.front().first == doctest::Approx(-1.0));
    CHECK(lines[i].points.back().first == doctest::Approx(1.0));
    for (const auto& [u, v] : lines[i].points)
      CHECK(v == doctest::Approx(heights[i] / 2).epsilon(1e-12));
  }
  // Verticals keep their x and span the halved height range.
  const double columns[] = {-1.0, 0.0, 1.0};
  for (int i = 0; i < 3; ++i) {
    const Polyline& line = lines[3 + i];
    CHECK(line.from_vertical);
    for (const auto& [u, v] : line.points)
      CHECK(u == doctest::Approx(columns[i]).epsilon(1e-12));
    CHECK(line.points.front().second == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(line.points.back().second == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("rotation circle map renders as a rotated polar grid") {
  const double rot = 1.0471975511965977;  // pi / 3
  const CircleHomeo hc = CircleHomeo::from_lift(CircleHomeo::identity().lift(), rot);
  RenderSpec spec;
  spec.domain = RenderSpec::Domain::disk;
  spec.y0 = 0.05;
  spec.y1 = 0.5;
  spec.horizontal_lines = 2;
  spec.vertical_lines = 4;
  spec.samples_per_line = 9;
  const auto lines = disk_grid_image(hc, spec);
  REQUIRE(lines.size() == 6);
  const double two_pi = 6.283185307179586;
  // Rings stay concentric circles; the extension halves heights, so the
  // image radius is the square root of the source radius.
  const double radii[] = {std::exp(-two_pi * 0.025), std::exp(-two_pi * 0.25)};
  for (int i = 0; i < 2; ++i) {
    for (const auto& [px, py] : lines[i].points)
      CHECK(std::hypot(px, py) == doctest::Approx(radii[i]).epsilon(1e-12));
  }
  // Rays stay radial, turned by exactly the rotation offset.
  for (int j = 0; j < 4; ++j) {
    const Polyline& ray = lines[2 + j];
    CHECK(ray.from_vertical);
    const double want = rot + two_pi * j / 4;
    for (const auto& [px, py] : ray.points) {
      const double angle = std::atan2(py, px);
      const double diff = std::remainder(angle - want, two_pi);
      CHECK(std::abs(diff) < 1e-12);
    }
  }
}

TEST_CASE("two slope map shears the vertical lines") {
  RenderSpec spec;
  spec.x0 = -2;
  spec.x1 = 2;
  spec.y0 = 0.1;
  spec.y1 = 2;
  spec.horizontal_lines = 3;
  spec.vertical_lines = 3;
  spec.samples_per_line = 17;
  const auto lines = half_plane_grid_image(LineHomeo::two_slope(2), spec);
  // The source line x = 0 sits on the slope break, so its image drifts with
  // height instead of staying a vertical segment.
  const Polyline& center = lines[4];
  REQUIRE(center.from_vertical);
  double min_u = center.points.front().first;
  double max_u = min_u;
  for (const auto& [u, v] : center.points) {
    min_u = std::min(min_u, u);
    max_u = std::max(max_u, u);
  }
  CHECK(max_u - min_u > 0.01);
}

TEST_CASE("svg document structure is deterministic") {
  RenderSpec spec;
  spec.horizontal_lines = 4;
  spec.vertical_lines = 5;
  spec.samples_per_line = 9;
  const std::string svg = render_svg(LineHomeo::two_slope(2), spec);
  CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"", 0) == 0);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
  CHECK(count_occurrences(svg, "<polyline") == 9);
  CHECK(count_occurrences(svg, "<g ") == 2);
  CHECK(svg.find("stroke-width=\"0.010000\"") != std::string::npos);
  CHECK(render_svg(LineHomeo::two_slope(2), spec) == svg);

  const std::string disk_svg = [&] {
    RenderSpec d = spec;
    d.domain = RenderSpec::Domain::disk;
    d.y0 = 0.02;
    d.y1 = 1;
    return render_svg(CircleHomeo::identity(), d);
  }();
  CHECK(count_occurrences(disk_svg, "<polyline") == 9);
}

TEST_CASE("render spec validation") {
  RenderSpec spec;
  spec.y0 = 0;
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec = {};
  spec.samples_per_line = 1;
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec = {};
  spec.horizontal_lines = 0;
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec = {};
  spec.x1 = spec.x0;
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec = {};
  spec.stroke_width = 0;
  CHECK_THROWS_AS(spec.validate(), InputError);
  CHECK_THROWS_AS(svg_document({}, 0.01), InputError);
}
