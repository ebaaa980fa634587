#include "qcx/map_io.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "qcx/errors.hpp"

using namespace qcx;

namespace {

// Parses text expecting failure and returns the message for path checks.
std::string parse_error(const std::string& text) {
  try {
    parse_map(text, "m.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& msg, const std::string& needle) {
  return msg.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("piecewise linear maps round-trip through JSON") {
  const LoadedMap m = parse_map(
      R"({"kind": "piecewise_linear", "points": [[0, 0], [1, 2], [3, 5]],
          "left_slope": 0.5, "right_slope": 2})",
      "m.json");
  CHECK(!m.is_circle());
  const LineHomeo& h = m.line();
  CHECK(h(0.0) == 0.0);
  CHECK(h(1.0) == 2.0);
  CHECK(h(3.0) == 5.0);
  CHECK(h(2.0) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(h(-2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(h(4.0) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("builtin maps parse with and without parameters") {
  const LoadedMap id =
      parse_map(R"({"kind": "builtin", "name": "identity"})", "m.json");
  CHECK(id.line()(2.5) == 2.5);

  const LoadedMap two = parse_map(
      R"({"kind": "builtin", "name": "two_slope", "params": {"a": 3}})",
      "m.json");
  CHECK(two.line()(-3.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(two.line()(1.0) == 1.0);

  const LoadedMap pw = parse_map(
      R"({"kind": "builtin", "name": "power", "params": {"alpha": 2}})",
      "m.json");
  CHECK(pw.line()(3.0) == doctest::Approx(9.0).epsilon(1e-15));

  const LoadedMap ls =
      parse_map(R"({"kind": "builtin", "name": "log_singular"})", "m.json");
  CHECK(ls.line()(0.0) == 0.0);
}

TEST_CASE("circle maps parse from angle samples") {
  // Quarter-turn rotation sampled at four points.
  const double pi = 3.14159265358979324;
  const LoadedMap m = parse_map(
      R"({"kind": "circle", "samples": [[0, 1.5707963267948966],
          [1.5707963267948966, 3.141592653589793],
          [3.141592653589793, 4.71238898038469],
          [4.71238898038469, 6.283185307179586]]})",
      "m.json");
  CHECK(m.is_circle());
  const CircleHomeo& hc = m.circle();
  CHECK(hc.rotation_offset() == doctest::Approx(pi / 2).epsilon(1e-15));
  // The lift of a rotation is the identity on [0, 1].
  CHECK(hc.lift()(0.25) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("kind mismatch on access raises a clear error") {
  const LoadedMap line =
      parse_map(R"({"kind": "builtin", "name": "identity"})", "m.json");
  CHECK_THROWS_AS(line.circle(), InputError);
  const LoadedMap circ = parse_map(
      R"({"kind": "circle", "samples": [[0, 0], [2, 2], [4, 4]]})", "m.json");
  CHECK_THROWS_AS(circ.line(), InputError);
}

TEST_CASE("parse errors cite the JSON path of the offending value") {
  CHECK(mentions(parse_error("not json at all"), "invalid JSON"));
  CHECK(mentions(parse_error("[1, 2]"), "$ must be an object"));
  CHECK(mentions(parse_error(R"({"kind": "nope"})"), "$.kind"));
  CHECK(mentions(parse_error(R"({"points": []})"), "$.kind"));

  // Pair shape and entry errors carry the element index.
  CHECK(mentions(
      parse_error(
          R"({"kind": "piecewise_linear", "points": [[0, 0], [1]],
              "left_slope": 1, "right_slope": 1})"),
      "$.points[1]"));
  CHECK(mentions(
      parse_error(
          R"({"kind": "piecewise_linear", "points": [[0, 0], [1, "x"]],
              "left_slope": 1, "right_slope": 1})"),
      "$.points[1][1]"));

  // Monotonicity violations name the first bad breakpoint or value.
  CHECK(mentions(
      parse_error(
          R"({"kind": "piecewise_linear", "points": [[0, 0], [0, 1]],
              "left_slope": 1, "right_slope": 1})"),
      "$.points[1][0]"));
  CHECK(mentions(
      parse_error(
          R"({"kind": "piecewise_linear", "points": [[0, 0], [1, -1]],
              "left_slope": 1, "right_slope": 1})"),
      "$.points[1][1]"));

  CHECK(mentions(
      parse_error(
          R"({"kind": "piecewise_linear", "points": [[0, 0], [1, 1]],
              "left_slope": 0, "right_slope": 1})"),
      "$.left_slope"));
  CHECK(mentions(
      parse_error(R"({"kind": "builtin", "name": "two_slope"})"),
      "$.params.a"));
  CHECK(mentions(
      parse_error(
          R"({"kind": "builtin", "name": "two_slope", "params": {"a": -1}})"),
      "$.params.a"));
  CHECK(mentions(
      parse_error(R"({"kind": "builtin", "name": "gauss"})"), "$.name"));
  CHECK(mentions(parse_error(R"({"kind": "circle", "samples": "x"})"),
                 "$.samples"));
}

TEST_CASE("unknown keys are rejected rather than ignored") {
  CHECK(mentions(
      parse_error(
          R"({"kind": "piecewise_linear", "points": [[0, 0], [1, 1]],
              "left_slope": 1, "right_slope": 1, "extra": 3})"),
      "$.extra"));
  CHECK(mentions(
      parse_error(
          R"({"kind": "builtin", "name": "identity", "params": {"a": 1}})"),
      "$.params.a"));
}

TEST_CASE("circle sample validation failures are reported under $.samples") {
  // Angles must wind exactly once; a repeated image angle breaks monotonicity.
  const std::string msg = parse_error(
      R"({"kind": "circle", "samples": [[0, 0], [2, 0], [4, 4]]})");
  CHECK(mentions(msg, "$.samples"));
}

TEST_CASE("load_map reads files and reports unopenable paths") {
  const std::string path = "qcx_test_map_io_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"kind": "builtin", "name": "two_slope", "params": {"a": 2}})";
  }
  const LoadedMap m = load_map(path);
  CHECK(m.line()(-2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_map(path), InputError);
}
