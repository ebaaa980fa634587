#include "qcx/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qcx/errors.hpp"
#include "qcx/extension.hpp"

namespace qcx {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Geometric ladder from lo to hi with n rungs, endpoints exact.
std::vector<double> geometric_levels(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo * std::exp(ratio * i / (n - 1));
  if (n > 1) {
    v.front() = lo;
    v.back() = hi;
  }
  return v;
}

std::vector<double> uniform_levels(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

void append_number(std::string* out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  *out += buf;
}

}  // namespace

void RenderSpec::validate() const {
  if (!(x0 < x1)) throw InputError("render window needs x0 < x1");
  if (!(0 < y0) || !(y0 < y1))
    throw InputError("render window needs 0 < y0 < y1");
  if (horizontal_lines < 1 || vertical_lines < 1)
    throw InputError("render needs positive grid line counts");
  if (samples_per_line < 2)
    throw InputError("render needs at least two samples per line");
  if (!(stroke_width > 0)) throw InputError("render needs a positive stroke width");
}

std::vector<Polyline> half_plane_grid_image(const LineHomeo& h,
                                            const RenderSpec& spec) {
  spec.validate();
  std::vector<Polyline> lines;
  lines.reserve(spec.horizontal_lines + spec.vertical_lines);
  const std::vector<double> heights =
      geometric_levels(spec.y0, spec.y1, spec.horizontal_lines);
  const std::vector<double> xs =
      uniform_levels(spec.x0, spec.x1, spec.vertical_lines);
  const std::vector<double> x_samples =
      uniform_levels(spec.x0, spec.x1, spec.samples_per_line);
  const std::vector<double> y_samples =
      geometric_levels(spec.y0, spec.y1, spec.samples_per_line);

  for (const double y : heights) {
    Polyline line;
    line.points.reserve(x_samples.size());
    for (const double x : x_samples) {
      const ExtensionJet j = jet(h, x, y);
      line.points.emplace_back(j.u, j.v);
    }
    lines.push_back(std::move(line));
  }
  for (const double x : xs) {
    Polyline line;
    line.from_vertical = true;
    line.points.reserve(y_samples.size());
    for (const double y : y_samples) {
      const ExtensionJet j = jet(h, x, y);
      line.points.emplace_back(j.u, j.v);
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<Polyline> disk_grid_image(const CircleHomeo& hc,
                                      const RenderSpec& spec) {
  spec.validate();
  const LineHomeo& lift = hc.lift();
  const double rot = hc.rotation_offset();
  const auto image_point = [&](double tau, double y) {
    const ExtensionJet j = jet(lift, tau, y);
    const double radius = std::exp(-kTwoPi * j.v);
    const double angle = rot + kTwoPi * j.u;
    return std::make_pair(radius * std::cos(angle), radius * std::sin(angle));
  };

  std::vector<Polyline> lines;
  lines.reserve(spec.horizontal_lines + spec.vertical_lines);
  const std::vector<double> ring_heights =
      geometric_levels(spec.y0, spec.y1, spec.horizontal_lines);
  const std::vector<double> tau_samples =
      uniform_levels(0, 1, spec.samples_per_line);
  const std::vector<double> y_samples =
      geometric_levels(spec.y0, spec.y1, spec.samples_per_line);

  for (const double y : ring_heights) {
    Polyline ring;
    ring.points.reserve(tau_samples.size());
    for (const double tau : tau_samples) ring.points.push_back(image_point(tau, y));
    lines.push_back(std::move(ring));
  }
  for (int j = 0; j < spec.vertical_lines; ++j) {
    const double tau = static_cast<double>(j) / spec.vertical_lines;
    Polyline ray;
    ray.from_vertical = true;
    ray.points.reserve(y_samples.size());
    for (const double y : y_samples) ray.points.push_back(image_point(tau, y));
    lines.push_back(std::move(ray));
  }
  return lines;
}

std::string svg_document(const std::vector<Polyline>& lines,
                         double stroke_width) {
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -min_x;
  double min_y = min_x;
  double max_y = -min_x;
  for (const Polyline& line : lines) {
    for (const auto& [u, v] : line.points) {
      min_x = std::min(min_x, u);
      max_x = std::max(max_x, u);
      min_y = std::min(min_y, -v);
      max_y = std::max(max_y, -v);
    }
  }
  if (!(min_x <= max_x))
    throw InputError("svg document needs at least one point");
  const double pad =
      0.05 * std::max({max_x - min_x, max_y - min_y, 1e-6}) + stroke_width;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  append_number(&out, min_x - pad);
  out += ' ';
  append_number(&out, min_y - pad);
  out += ' ';
  append_number(&out, max_x - min_x + 2 * pad);
  out += ' ';
  append_number(&out, max_y - min_y + 2 * pad);
  out += "\">\n";

  const auto group = [&](bool vertical, const char* stroke) {
    out += "<g fill=\"none\" stroke=\"";
    out += stroke;
    out += "\" stroke-width=\"";
    append_number(&out, stroke_width);
    out += "\">\n";
    for (const Polyline& line : lines) {
      if (line.from_vertical != vertical) continue;
      out += "<polyline points=\"";
      bool first = true;
      for (const auto& [u, v] : line.points) {
        if (!first) out += ' ';
        first = false;
        append_number(&out, u);
        out += ',';
        append_number(&out, -v);
      }
      out += "\"/>\n";
    }
    out += "</g>\n";
  };
  group(false, "#335e8d");
  group(true, "#a54242");
  out += "</svg>\n";
  return out;
}

std::string render_svg(const LineHomeo& h, const RenderSpec& spec) {
  return svg_document(half_plane_grid_image(h, spec), spec.stroke_width);
}

std::string render_svg(const CircleHomeo& hc, const RenderSpec& spec) {
  return svg_document(disk_grid_image(hc, spec), spec.stroke_width);
}

}  // namespace qcx
