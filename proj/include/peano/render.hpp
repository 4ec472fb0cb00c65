#pragma once

#include "peano/curve.hpp"

#include <string>
#include <vector>

namespace peano {

/// Centers of the order-`depth` fractions of a pattern in traversal order,
/// in units where the unit cube has side div^depth (so centers are
/// half-integers, stored doubled as integers).
std::vector<Cube> fraction_centers(const Curve& curve, int pattern, int depth);

/// SVG drawing of the polyline through fraction centers (plane curves).
std::string render_svg(const Curve& curve, int depth, int pattern = 0, double size = 512);

/// JSON document {"dim", "depth", "scale", "points": [[x, y, z], ...]} with
/// coordinates in the unit cube (any dimension).
std::string render_polyline_json(const Curve& curve, int depth, int pattern = 0);

}  // namespace peano
