#pragma once

// JSON map-file loading for the CLI and tests.  Three kinds are accepted:
//
//   {"kind": "piecewise_linear", "points": [[t, h], ...],
//    "left_slope": s, "right_slope": s}
//   {"kind": "builtin", "name": "identity|two_slope|power|log_singular",
//    "params": {...}}
//   {"kind": "circle", "samples": [[theta, h_theta], ...]}
//
// Validation failures raise InputError whose message cites the JSON path of
// the offending value, e.g. "$.points[3][0]".

#include <iosfwd>
#include <string>
#include <variant>

#include "qcx/boundary_map.hpp"

namespace qcx {

class LoadedMap {
 public:
  explicit LoadedMap(LineHomeo h) : map_(std::move(h)) {}
  explicit LoadedMap(CircleHomeo h) : map_(std::move(h)) {}

  bool is_circle() const { return std::holds_alternative<CircleHomeo>(map_); }

  // Throws InputError when the file held the other kind, so CLI commands
  // that only make sense for one geometry fail with a clear message.
  const LineHomeo& line() const;
  const CircleHomeo& circle() const;

 private:
  std::variant<LineHomeo, CircleHomeo> map_;
};

// Parse a map from JSON text; name is used in error messages (a file path
// or a placeholder like "<stdin>").
LoadedMap parse_map(const std::string& json_text, const std::string& name);

// Read and parse a map file.
LoadedMap load_map(const std::string& path);

}  // namespace qcx
