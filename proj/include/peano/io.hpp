#pragma once

#include "peano/curve.hpp"
#include "peano/dilation.hpp"
#include "peano/search.hpp"

#include <json.hpp>

#include <filesystem>

namespace peano {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Curve document:
/// {"dim", "div", "patterns": [{"proto": chain code or list of cubes,
///   "specs": [{"orient", "pattern", "reversed"} | null]}], "gates"?}
Curve curve_from_json(const Json& doc);
Json curve_to_json(const Curve& curve, bool with_gates = true);
Curve load_curve(const std::filesystem::path& path);
void save_curve(const Curve& curve, const std::filesystem::path& path);

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);
Json gates_to_json(const std::vector<GatePair>& gates);
std::vector<GatePair> gates_from_json(const Json& j);
Json witness_to_json(const Witness& w);
Json bounds_to_json(const Bounds& b, const Metric& metric);

/// {"dim", "div", "gates", "patterns": [{"proto", "local_gates"}]}
Json prototype_to_json(const PointedPrototype& pp);
PointedPrototype prototype_from_json(const Json& doc);

}  // namespace peano
