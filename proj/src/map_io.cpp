#include "qcx/map_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qcx/errors.hpp"

namespace qcx {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& name, const std::string& what) {
  throw InputError(name + ": " + what);
}

double require_number(const json& j, const std::string& name,
                      const std::string& path) {
  if (!j.is_number()) fail(name, path + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(name, path + " must be finite");
  return v;
}

double require_positive(const json& j, const std::string& name,
                        const std::string& path) {
  const double v = require_number(j, name, path);
  if (!(v > 0)) fail(name, path + " must be positive");
  return v;
}

void reject_unknown_keys(const json& obj, const std::string& name,
                         const std::string& prefix,
                         std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(name, prefix + "." + it.key() + " is not a recognized key");
  }
}

// Reads an array of [t, value] pairs, checking shape and finiteness entry
// by entry so errors carry the exact path.
std::vector<std::pair<double, double>> read_pairs(const json& arr,
                                                  const std::string& name,
                                                  const std::string& path) {
  if (!arr.is_array() || arr.empty())
    fail(name, path + " must be a non-empty array of [t, value] pairs");
  std::vector<std::pair<double, double>> out;
  out.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& e = arr[i];
    const std::string epath = path + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2)
      fail(name, epath + " must be a pair [t, value]");
    out.emplace_back(require_number(e[0], name, epath + "[0]"),
                     require_number(e[1], name, epath + "[1]"));
  }
  return out;
}

LoadedMap parse_piecewise_linear(const json& root, const std::string& name) {
  reject_unknown_keys(root, name, "$",
                      {"kind", "points", "left_slope", "right_slope"});
  if (!root.contains("points")) fail(name, "$.points is required");
  if (!root.contains("left_slope")) fail(name, "$.left_slope is required");
  if (!root.contains("right_slope")) fail(name, "$.right_slope is required");
  const auto pts = read_pairs(root["points"], name, "$.points");
  std::vector<double> ts(pts.size()), hs(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    ts[i] = pts[i].first;
    hs[i] = pts[i].second;
    if (i > 0 && !(ts[i] > ts[i - 1]))
      fail(name, "$.points[" + std::to_string(i) +
                     "][0] must exceed the preceding breakpoint");
    if (i > 0 && !(hs[i] > hs[i - 1]))
      fail(name, "$.points[" + std::to_string(i) +
                     "][1] must exceed the preceding value");
  }
  const double ls = require_positive(root["left_slope"], name, "$.left_slope");
  const double rs = require_positive(root["right_slope"], name, "$.right_slope");
  return LoadedMap(LineHomeo::piecewise_linear(ts, hs, ls, rs));
}

LoadedMap parse_builtin(const json& root, const std::string& name) {
  reject_unknown_keys(root, name, "$", {"kind", "name", "params"});
  if (!root.contains("name") || !root["name"].is_string())
    fail(name, "$.name must be a string");
  const std::string family = root["name"].get<std::string>();
  const json params = root.value("params", json::object());
  if (!params.is_object()) fail(name, "$.params must be an object");

  if (family == "identity") {
    reject_unknown_keys(params, name, "$.params", {});
    return LoadedMap(LineHomeo::identity());
  }
  if (family == "two_slope") {
    reject_unknown_keys(params, name, "$.params", {"a"});
    if (!params.contains("a")) fail(name, "$.params.a is required");
    return LoadedMap(
        LineHomeo::two_slope(require_positive(params["a"], name, "$.params.a")));
  }
  if (family == "power") {
    reject_unknown_keys(params, name, "$.params", {"alpha"});
    if (!params.contains("alpha")) fail(name, "$.params.alpha is required");
    return LoadedMap(LineHomeo::power(
        require_positive(params["alpha"], name, "$.params.alpha")));
  }
  if (family == "log_singular") {
    reject_unknown_keys(params, name, "$.params", {});
    return LoadedMap(LineHomeo::log_singular());
  }
  fail(name, "$.name must be one of identity, two_slope, power, log_singular");
}

LoadedMap parse_circle(const json& root, const std::string& name) {
  reject_unknown_keys(root, name, "$", {"kind", "samples"});
  if (!root.contains("samples")) fail(name, "$.samples is required");
  const auto samples = read_pairs(root["samples"], name, "$.samples");
  try {
    return LoadedMap(lift_circle(samples));
  } catch (const InputError& e) {
    fail(name, std::string("$.samples: ") + e.what());
  }
}

}  // namespace

const LineHomeo& LoadedMap::line() const {
  if (is_circle())
    throw InputError("this operation needs a line map, but the file holds a circle map");
  return std::get<LineHomeo>(map_);
}

const CircleHomeo& LoadedMap::circle() const {
  if (!is_circle())
    throw InputError("this operation needs a circle map, but the file holds a line map");
  return std::get<CircleHomeo>(map_);
}

LoadedMap parse_map(const std::string& json_text, const std::string& name) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(name, std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail(name, "$ must be an object");
  if (!root.contains("kind") || !root["kind"].is_string())
    fail(name, "$.kind must be a string");
  const std::string kind = root["kind"].get<std::string>();
  if (kind == "piecewise_linear") return parse_piecewise_linear(root, name);
  if (kind == "builtin") return parse_builtin(root, name);
  if (kind == "circle") return parse_circle(root, name);
  fail(name, "$.kind must be one of piecewise_linear, builtin, circle");
}

LoadedMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open map file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str(), path);
}

}  // namespace qcx
