// Command-line surface for the extension toolkit: evaluate jets and
// distortion fields over grids, check the two-sided dilatation bounds,
// produce integrability and BMO reports, render grid images as SVG, and
// cross-check the fast paths against the finite-difference oracle.
//
// Exit codes: 0 success, 2 bad input, 3 numerical failure, 4 bound
// violations detected.  Output is deterministic for fixed inputs; numbers
// are printed with 17 significant digits.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcx/bmo.hpp"
#include "qcx/boundary_map.hpp"
#include "qcx/distortion.hpp"
#include "qcx/errors.hpp"
#include "qcx/extension.hpp"
#include "qcx/grid.hpp"
#include "qcx/integrability.hpp"
#include "qcx/map_io.hpp"
#include "qcx/oracle.hpp"
#include "qcx/random_maps.hpp"
#include "qcx/render.hpp"

namespace {

using namespace qcx;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string esc(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::uint64_t env_seed() {
  const char* raw = std::getenv("QCX_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw InputError("QCX_SEED must be an unsigned integer");
  return v;
}

GridSpec make_grid(const std::vector<double>& g, const std::string& spacing) {
  if (g.size() != 6)
    throw InputError("--grid needs six values: x0,x1,y0,y1,nx,ny");
  GridSpec spec;
  spec.x0 = g[0];
  spec.x1 = g[1];
  spec.y0 = g[2];
  spec.y1 = g[3];
  spec.nx = static_cast<int>(std::llround(g[4]));
  spec.ny = static_cast<int>(std::llround(g[5]));
  if (spacing == "uniform") {
    spec.spacing = GridSpec::Spacing::uniform;
  } else if (spacing == "geometric") {
    spec.spacing = GridSpec::Spacing::geometric_y;
  } else {
    throw InputError("--spacing must be uniform or geometric");
  }
  spec.validate();
  return spec;
}

std::string jet_json(const ExtensionJet& j) {
  std::string out = "{\n";
  out += "  \"x\": " + fmt(j.x) + ",\n";
  out += "  \"y\": " + fmt(j.y) + ",\n";
  out += "  \"u\": " + fmt(j.u) + ",\n";
  out += "  \"v\": " + fmt(j.v) + ",\n";
  out += "  \"u_x\": " + fmt(j.u_x) + ",\n";
  out += "  \"u_y\": " + fmt(j.u_y) + ",\n";
  out += "  \"v_x\": " + fmt(j.v_x) + ",\n";
  out += "  \"v_y\": " + fmt(j.v_y) + ",\n";
  out += "  \"jacobian\": " + fmt(j.jacobian) + ",\n";
  out += "  \"trace\": " + fmt(j.trace) + ",\n";
  out += "  \"dilatation\": " + fmt(j.dilatation) + "\n";
  out += "}\n";
  return out;
}

std::string report_json(const IntegrabilityReport& rep, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  std::string out = "{\n";
  out += inner + "\"box\": {\"x_extent\": " + fmt(rep.box.x_extent) +
         ", \"y_min\": " + fmt(rep.box.y_min) +
         ", \"y_max\": " + fmt(rep.box.y_max) + "},\n";
  out += inner + "\"layers\": [\n";
  for (std::size_t i = 0; i < rep.layers.size(); ++i) {
    const LayerContribution& layer = rep.layers[i];
    out += inner + "  {\"k\": " + std::to_string(layer.k) +
           ", \"y_lo\": " + fmt(layer.y_lo) + ", \"y_hi\": " +
           fmt(layer.y_hi) + ", \"value\": " + fmt(layer.value) + "}";
    out += i + 1 < rep.layers.size() ? ",\n" : "\n";
  }
  out += inner + "],\n";
  out += inner + "\"bulk\": " + fmt(rep.bulk) + ",\n";
  out += inner + "\"total\": " + fmt(rep.total) + ",\n";
  out += inner + "\"verdict\": \"" + verdict_name(rep.verdict) + "\",\n";
  out += inner + "\"verdict_basis\": \"" + esc(rep.verdict_basis) + "\"\n";
  out += pad + "}";
  return out;
}

int cmd_jet(const std::string& map_path, const std::vector<double>& point,
            double tol, const std::string& out_path) {
  if (point.size() != 2) throw InputError("--point needs x,y");
  const LoadedMap m = load_map(map_path);
  const ExtensionJet j = jet(m.line(), point[0], point[1], tol);
  write_text(out_path, jet_json(j));
  return 0;
}

int cmd_extend(const std::string& map_path, const GridSpec& grid, double tol,
               const std::string& out_path) {
  const LoadedMap m = load_map(map_path);
  const LineHomeo& h = m.line();
  std::string csv = "x,y,u,v\n";
  for (const double y : grid.ys()) {
    for (const double x : grid.xs()) {
      const ExtensionJet j = jet(h, x, y, tol);
      csv += fmt(x) + "," + fmt(y) + "," + fmt(j.u) + "," + fmt(j.v) + "\n";
    }
  }
  write_text(out_path, csv);
  return 0;
}

int cmd_rho_point(const LoadedMap& m, const std::vector<double>& point,
                  double tol, const std::string& out_path) {
  if (point.size() != 2) throw InputError("--point needs x,t with t > 0");
  std::string out = "{\n";
  if (m.is_circle()) {
    const double value = rho_circular(m.circle(), point[0], point[1]);
    out += "  \"theta\": " + fmt(point[0]) + ",\n";
    out += "  \"t\": " + fmt(point[1]) + ",\n";
    out += "  \"rho\": " + fmt(value) + "\n";
  } else {
    const DistortionSample s =
        segment_average(m.line(), point[0], point[1], tol);
    out += "  \"x\": " + fmt(point[0]) + ",\n";
    out += "  \"t\": " + fmt(point[1]) + ",\n";
    out += "  \"rho\": " + fmt(s.rho) + ",\n";
    out += "  \"avg_left\": " + fmt(s.avg_left) + ",\n";
    out += "  \"avg_right\": " + fmt(s.avg_right) + ",\n";
    out += "  \"avg_combined\": " + fmt(s.avg_combined) + "\n";
  }
  out += "}\n";
  write_text(out_path, out);
  return 0;
}

int cmd_rho_grid(const LoadedMap& m, const GridSpec& grid, double tol,
                 const std::string& out_path) {
  const LineHomeo& h = m.line();
  std::string csv = "x,y,rho,avg_left,avg_right,avg_combined\n";
  for (const double y : grid.ys()) {
    for (const double x : grid.xs()) {
      const DistortionSample s = segment_average(h, x, y, tol);
      csv += fmt(x) + "," + fmt(y) + "," + fmt(s.rho) + "," +
             fmt(s.avg_left) + "," + fmt(s.avg_right) + "," +
             fmt(s.avg_combined) + "\n";
    }
  }
  write_text(out_path, csv);
  return 0;
}

int cmd_bounds(const std::string& map_path, const GridSpec& grid, double tol,
               int threads, const std::string& out_path) {
  const LoadedMap m = load_map(map_path);
  std::vector<BoundsRow> rows;
  const BoundsReport rep = check_bounds(
      m.line(), grid, tol, out_path.empty() ? nullptr : &rows, threads);
  if (!out_path.empty()) {
    std::string csv = "x,y,K,rho,avg_left,avg_right,avg_combined,lower_ok,upper_ok\n";
    for (const BoundsRow& r : rows) {
      csv += fmt(r.x) + "," + fmt(r.y) + "," + fmt(r.dilatation) + "," +
             fmt(r.rho) + "," + fmt(r.avg_left) + "," + fmt(r.avg_right) +
             "," + fmt(r.avg_combined) + "," + (r.lower_ok ? "1" : "0") +
             "," + (r.upper_ok ? "1" : "0") + "\n";
    }
    write_text(out_path, csv);
  }
  std::string out = "{\n";
  out += "  \"points_checked\": " + std::to_string(rep.points_checked) + ",\n";
  out += "  \"lower_violations\": " + std::to_string(rep.lower_violations) + ",\n";
  out += "  \"upper_violations\": " + std::to_string(rep.upper_violations) + ",\n";
  out += "  \"max_ratio_lower\": " + fmt(rep.max_ratio_lower) + ",\n";
  out += "  \"max_ratio_upper\": " + fmt(rep.max_ratio_upper) + ",\n";
  out += "  \"bound_constant\": " + fmt(kBoundConstant) + "\n";
  out += "}\n";
  write_text("", out);
  return rep.lower_violations + rep.upper_violations > 0 ? 4 : 0;
}

int cmd_integrate(const std::string& map_path, const std::string& phi_name,
                  double q, const std::vector<double>& box_values, double tol,
                  const std::string& out_path) {
  const LoadedMap m = load_map(map_path);
  const PhiFamily phi = PhiFamily::parse(phi_name, q);
  std::string out = "{\n";
  out += "  \"map\": \"" + esc(map_path) + "\",\n";
  out += "  \"gauge\": \"" + esc(phi.label()) + "\",\n";
  out += "  \"q\": " + fmt(phi.q) + ",\n";
  if (m.is_circle()) {
    const CircleIntegrability rep = circle_integrability(m.circle(), phi, tol);
    out += "  \"boundary\": " + report_json(rep.boundary, 2) + ",\n";
    out += "  \"disk\": " + report_json(rep.disk, 2) + "\n";
  } else {
    if (box_values.size() != 3)
      throw InputError("--box needs three values: x_extent,y_min,y_max");
    TruncationBox box;
    box.x_extent = box_values[0];
    box.y_min = box_values[1];
    box.y_max = box_values[2];
    box.validate();
    const LineHomeo& h = m.line();
    std::vector<double> seeds;
    h.kinks_in(-box.x_extent, box.x_extent, seeds);
    const IntegrabilityReport rep = spherical_integral(
        [&](double x, double y) { return phi.scaled(rho(h, x, y)); }, box,
        tol, seeds);
    out += "  \"report\": " + report_json(rep, 2) + "\n";
  }
  out += "}\n";
  write_text(out_path, out);
  return 0;
}

int cmd_bmo(const std::string& field_name, const std::string& map_path,
            const std::vector<int>& scales, const std::vector<double>& g,
            const std::string& spacing, double tol,
            const std::string& out_path) {
  if (scales.size() != 2) throw InputError("--scales needs k_min,k_max");
  const PlaneField A = PlaneField::builtin(field_name);
  const std::vector<Ball> family = dyadic_ball_family(scales[0], scales[1]);
  const BmoEstimate est = bmo_seminorm(A, family, tol);

  std::string out = "{\n";
  out += "  \"field\": \"" + esc(A.description) + "\",\n";
  out += "  \"scales\": [" + std::to_string(scales[0]) + ", " +
         std::to_string(scales[1]) + "],\n";
  out += "  \"family\": [\n";
  for (std::size_t i = 0; i < est.balls.size(); ++i) {
    const BallOscillation& b = est.balls[i];
    out += "    {\"cx\": " + fmt(b.ball.cx) + ", \"cy\": " + fmt(b.ball.cy) +
           ", \"r\": " + fmt(b.ball.r) + ", \"mean\": " + fmt(b.mean) +
           ", \"oscillation\": " + fmt(b.oscillation) + "}";
    out += i + 1 < est.balls.size() ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"seminorm_lower_bound\": " + fmt(est.seminorm_lower_bound) + ",\n";
  out += "  \"argmax_ball\": " + std::to_string(est.argmax_index);
  if (!map_path.empty()) {
    const LoadedMap m = load_map(map_path);
    GridSpec grid;
    if (g.empty()) {
      grid.x0 = -2;
      grid.x1 = 2;
      grid.y0 = 0x1p-6;
      grid.y1 = 1;
      grid.nx = 9;
      grid.ny = 7;
      grid.spacing = GridSpec::Spacing::geometric_y;
    } else {
      grid = make_grid(g, spacing);
    }
    const MajorantReport rep =
        bmo_majorant_check(m.line(), A, family, grid, tol);
    out += ",\n  \"majorant\": {\n";
    out += "    \"map\": \"" + esc(map_path) + "\",\n";
    out += "    \"points\": " + std::to_string(rep.points) + ",\n";
    out += "    \"dilatation_hypothesis_points\": " +
           std::to_string(rep.dilatation_hypothesis_points) + ",\n";
    out += "    \"dilatation_violations\": " +
           std::to_string(rep.dilatation_violations) + ",\n";
    out += "    \"distortion_hypothesis_points\": " +
           std::to_string(rep.distortion_hypothesis_points) + ",\n";
    out += "    \"growth_sup_ratio\": " + fmt(rep.growth_sup_ratio) + ",\n";
    out += "    \"seminorm_estimate\": " + fmt(rep.seminorm_estimate) + ",\n";
    out += "    \"excluded_points\": " + std::to_string(rep.excluded_points) +
           "\n  }";
  }
  out += "\n}\n";
  write_text(out_path, out);
  return 0;
}

int cmd_render(const std::string& map_path, const std::vector<double>& window,
               const std::vector<int>& lines, int samples, double stroke,
               const std::string& out_path) {
  const LoadedMap m = load_map(map_path);
  RenderSpec spec;
  spec.domain =
      m.is_circle() ? RenderSpec::Domain::disk : RenderSpec::Domain::half_plane;
  if (!window.empty()) {
    if (window.size() != 4)
      throw InputError("--window needs four values: x0,x1,y0,y1");
    spec.x0 = window[0];
    spec.x1 = window[1];
    spec.y0 = window[2];
    spec.y1 = window[3];
  }
  if (lines.size() != 2) throw InputError("--lines needs two counts");
  spec.horizontal_lines = lines[0];
  spec.vertical_lines = lines[1];
  spec.samples_per_line = samples;
  spec.stroke_width = stroke;
  if (!out_path.empty()) spec.output_path = out_path;
  const std::string svg = m.is_circle() ? render_svg(m.circle(), spec)
                                        : render_svg(m.line(), spec);
  write_text(spec.output_path, svg);
  return 0;
}

// Distance from the fd stencil columns {x, x-y, x+y} to the nearest slope
// break of h; central differences straddling a kink lose their accuracy
// budget, so verification resamples such points.
double stencil_margin(const LineHomeo& h, double x, double y) {
  std::vector<double> kinks;
  h.kinks_in(x - 2 * y, x + 2 * y, kinks);
  double margin = y;
  for (const double p : {x - y, x, x + y})
    for (const double k : kinks) margin = std::min(margin, std::abs(p - k));
  return margin;
}

int cmd_oracle_verify(const std::string& map_path, int points, double tol) {
  if (points < 1) throw InputError("--points must be positive");
  const LoadedMap m = load_map(map_path);
  const LineHomeo& h = m.line();
  std::mt19937_64 rng(env_seed());

  std::string table =
      "  idx             x             y   jet_rel_err         K_gap  status\n";
  int failures = 0;
  int accepted = 0;
  int attempts = 0;
  while (accepted < points && attempts < 50 * points) {
    ++attempts;
    const auto [x, y] = random_point(rng, -10, 10, 1e-2, 10);
    if (stencil_margin(h, x, y) < 1e-2 * y) continue;
    const FdPartials fd = fd_jet(h, x, y);
    const ExtensionJet j = jet(h, x, y, tol);
    double rel = 0;
    const double pairs[4][2] = {{fd.u_x, j.u_x},
                                {fd.u_y, j.u_y},
                                {fd.v_x, j.v_x},
                                {fd.v_y, j.v_y}};
    for (const auto& p : pairs)
      rel = std::max(rel,
                     std::abs(p[0] - p[1]) / std::max(1.0, std::abs(p[1])));
    const FdPartials closed{j.u_x, j.u_y, j.v_x, j.v_y};
    const double k_gap = std::abs(norm_dilatation(closed) - j.dilatation);
    const bool ok = rel < 1e-6 && k_gap < 1e-9;
    failures += ok ? 0 : 1;
    char row[128];
    std::snprintf(row, sizeof row, "%5d %13.6g %13.6g %13.3e %13.3e  %s\n",
                  accepted, x, y, rel, k_gap, ok ? "PASS" : "FAIL");
    table += row;
    ++accepted;
  }
  char summary[128];
  std::snprintf(summary, sizeof summary,
                "%d/%d pass (seed %" PRIu64 ", %d points resampled)\n",
                accepted - failures, accepted, env_seed(),
                attempts - accepted);
  table += summary;
  write_text("", table);
  if (accepted < points)
    throw NumericError("could not place the fd stencil away from kinks",
                       static_cast<double>(points - accepted));
  return failures > 0 ? 3 : 0;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Constructive extension toolkit: jets, distortion and dilatation "
      "fields, two-sided bound checks, integrability and BMO reports, SVG "
      "grid renders, and oracle cross-checks."};
  app.require_subcommand(1);
  int exit_code = 0;

  struct {
    std::string map, out;
    std::vector<double> point;
    double tol = 1e-10;
  } jet_a;
  CLI::App* jet_cmd =
      app.add_subcommand("jet", "Extension jet at one point (JSON)");
  jet_cmd->add_option("--map", jet_a.map, "map JSON file")->required();
  jet_cmd->add_option("--point", jet_a.point, "x,y with y > 0")
      ->delimiter(',')
      ->required();
  jet_cmd->add_option("--tol", jet_a.tol, "offset integral tolerance");
  jet_cmd->add_option("--out", jet_a.out, "output file (default stdout)");
  jet_cmd->callback([&] {
    exit_code = cmd_jet(jet_a.map, jet_a.point, jet_a.tol, jet_a.out);
  });

  struct {
    std::string map, out, spacing = "uniform";
    std::vector<double> grid;
    double tol = 1e-10;
  } ext_a;
  CLI::App* ext_cmd = app.add_subcommand(
      "extend", "Extension values over a grid (CSV x,y,u,v)");
  ext_cmd->add_option("--map", ext_a.map, "map JSON file")->required();
  ext_cmd->add_option("--grid", ext_a.grid, "x0,x1,y0,y1,nx,ny")
      ->delimiter(',')
      ->required();
  ext_cmd->add_option("--spacing", ext_a.spacing, "uniform or geometric");
  ext_cmd->add_option("--tol", ext_a.tol, "offset integral tolerance");
  ext_cmd->add_option("--out", ext_a.out, "output file (default stdout)");
  ext_cmd->callback([&] {
    exit_code = cmd_extend(ext_a.map, make_grid(ext_a.grid, ext_a.spacing),
                           ext_a.tol, ext_a.out);
  });

  struct {
    std::string map, out, spacing = "uniform";
    std::vector<double> point, grid;
    double tol = 1e-8;
  } rho_a;
  CLI::App* rho_cmd = app.add_subcommand(
      "rho", "Distortion and segment averages at a point (JSON) or over a "
             "grid (CSV)");
  rho_cmd->add_option("--map", rho_a.map, "map JSON file")->required();
  rho_cmd->add_option("--point", rho_a.point,
                      "x,t (line) or theta,t (circle)")
      ->delimiter(',');
  rho_cmd->add_option("--grid", rho_a.grid, "x0,x1,y0,y1,nx,ny")
      ->delimiter(',');
  rho_cmd->add_option("--spacing", rho_a.spacing, "uniform or geometric");
  rho_cmd->add_option("--tol", rho_a.tol, "segment average tolerance");
  rho_cmd->add_option("--out", rho_a.out, "output file (default stdout)");
  rho_cmd->callback([&] {
    const bool has_point = !rho_a.point.empty();
    const bool has_grid = !rho_a.grid.empty();
    if (has_point == has_grid)
      throw InputError("rho needs exactly one of --point or --grid");
    const LoadedMap m = load_map(rho_a.map);
    exit_code = has_point
                    ? cmd_rho_point(m, rho_a.point, rho_a.tol, rho_a.out)
                    : cmd_rho_grid(m, make_grid(rho_a.grid, rho_a.spacing),
                                   rho_a.tol, rho_a.out);
  });

  struct {
    std::string map, out, spacing = "uniform";
    std::vector<double> grid;
    double tol = 1e-10;
    int threads = 1;
  } bounds_a;
  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "Two-sided dilatation bound check over a grid (CSV rows via "
                "--out, JSON summary on stdout; exit 4 on violations)");
  bounds_cmd->add_option("--map", bounds_a.map, "map JSON file")->required();
  bounds_cmd->add_option("--grid", bounds_a.grid, "x0,x1,y0,y1,nx,ny")
      ->delimiter(',')
      ->required();
  bounds_cmd->add_option("--spacing", bounds_a.spacing,
                         "uniform or geometric");
  bounds_cmd->add_option("--tol", bounds_a.tol, "per-point tolerance");
  bounds_cmd->add_option("--threads", bounds_a.threads,
                         "worker threads (grid rows partitioned)");
  bounds_cmd->add_option("--out", bounds_a.out, "CSV output file");
  bounds_cmd->callback([&] {
    exit_code =
        cmd_bounds(bounds_a.map, make_grid(bounds_a.grid, bounds_a.spacing),
                   bounds_a.tol, bounds_a.threads, bounds_a.out);
  });

  struct {
    std::string map, out, phi = "exp";
    double q = 1;
    std::vector<double> box = {20, 1e-4, 20};
    double tol = 1e-8;
  } int_a;
  CLI::App* int_cmd = app.add_subcommand(
      "integrate",
      "Integrability report for the gauge-transformed distortion field "
      "(line maps: truncated spherical integral over --box; circle maps: "
      "boundary and disk reports)");
  int_cmd->add_option("--map", int_a.map, "map JSON file")->required();
  int_cmd->add_option("--phi", int_a.phi,
                      "gauge: exp, power:<p>, subexp, linear");
  int_cmd->add_option("--q", int_a.q, "inner scale of the gauge");
  int_cmd->add_option("--box", int_a.box, "x_extent,y_min,y_max (line maps)")
      ->delimiter(',');
  int_cmd->add_option("--tol", int_a.tol, "integral tolerance");
  int_cmd->add_option("--out", int_a.out, "output file (default stdout)");
  int_cmd->callback([&] {
    exit_code = cmd_integrate(int_a.map, int_a.phi, int_a.q, int_a.box,
                              int_a.tol, int_a.out);
  });

  struct {
    std::string field, map, out, spacing = "geometric";
    std::vector<int> scales = {0, 3};
    std::vector<double> grid;
    double tol = 1e-8;
  } bmo_a;
  CLI::App* bmo_cmd = app.add_subcommand(
      "bmo", "Seminorm estimate over the dyadic ball family (JSON); with "
             "--map, also the majorant transfer check on a grid");
  bmo_cmd->add_option("--field", bmo_a.field,
                      "const:<c>, log_inv_y, inv_y, sin_log_inv_y, or "
                      "csv:<path>")
      ->required();
  bmo_cmd->add_option("--scales", bmo_a.scales, "k_min,k_max dyadic range")
      ->delimiter(',');
  bmo_cmd->add_option("--map", bmo_a.map, "line map for the majorant check");
  bmo_cmd->add_option("--grid", bmo_a.grid,
                      "x0,x1,y0,y1,nx,ny for the majorant check");
  bmo_cmd->add_option("--spacing", bmo_a.spacing, "uniform or geometric");
  bmo_cmd->add_option("--tol", bmo_a.tol, "quadrature tolerance");
  bmo_cmd->add_option("--out", bmo_a.out, "output file (default stdout)");
  bmo_cmd->callback([&] {
    exit_code = cmd_bmo(bmo_a.field, bmo_a.map, bmo_a.scales, bmo_a.grid,
                        bmo_a.spacing, bmo_a.tol, bmo_a.out);
  });

  struct {
    std::string map, out;
    std::vector<double> window;
    std::vector<int> lines = {9, 9};
    int samples = 129;
    double stroke = 0.01;
  } render_a;
  CLI::App* render_cmd = app.add_subcommand(
      "render", "SVG image of the source grid under the extension "
                "(half-plane for line maps, disk for circle maps)");
  render_cmd->add_option("--map", render_a.map, "map JSON file")->required();
  render_cmd->add_option("--window", render_a.window,
                         "x0,x1,y0,y1 source window")
      ->delimiter(',');
  render_cmd->add_option("--lines", render_a.lines,
                         "horizontal,vertical line counts")
      ->delimiter(',');
  render_cmd->add_option("--samples", render_a.samples, "points per line");
  render_cmd->add_option("--stroke", render_a.stroke, "stroke width");
  render_cmd->add_option("--out", render_a.out,
                         "output file (default render.svg)");
  render_cmd->callback([&] {
    exit_code = cmd_render(render_a.map, render_a.window, render_a.lines,
                           render_a.samples, render_a.stroke, render_a.out);
  });

  struct {
    std::string map;
    int points = 100;
    double tol = 1e-10;
  } ver_a;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Independent slow-path cross-checks");
  oracle_cmd->require_subcommand(1);
  CLI::App* verify_cmd = oracle_cmd->add_subcommand(
      "verify", "Compare closed-form jets against finite differences and "
                "the operator-norm dilatation at random points (QCX_SEED)");
  verify_cmd->add_option("--map", ver_a.map, "map JSON file")->required();
  verify_cmd->add_option("--points", ver_a.points, "number of sample points");
  verify_cmd->add_option("--tol", ver_a.tol, "offset integral tolerance");
  verify_cmd->callback([&] {
    exit_code = cmd_oracle_verify(ver_a.map, ver_a.points, ver_a.tol);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numerical failure: %s (achieved %.3g)\n", e.what(),
                 e.achieved_error());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 3;
  }
}
