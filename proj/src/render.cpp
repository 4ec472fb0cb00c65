#include "peano/render.hpp"

#include "peano/io.hpp"

#include <cstdio>

namespace peano {

std::vector<Cube> fraction_centers(const Curve& curve, int pattern, int depth) {
  if (depth < 0) throw std::invalid_argument("render depth must be non-negative");
  std::vector<Cube> out;
  for (const auto& f : fractions_of_order(curve, pattern, depth)) {
    Cube c;
    for (int a = 0; a < curve.dim(); ++a) c[a] = 2 * f.cube[a] + 1;
    out.push_back(c);
  }
  return out;
}

std::string render_svg(const Curve& curve, int depth, int pattern, double size) {
  if (curve.dim() != 2) throw DimensionMismatch("SVG output needs a plane curve");
  const auto centers = fraction_centers(curve, pattern, depth);
  double side = 1;
  for (int i = 0; i < depth; ++i) side *= curve.div();
  const double unit = size / (2 * side);
  char buf[96];
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  std::snprintf(buf, sizeof buf, "%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", size, size, size, size);
  out += buf;
  std::snprintf(buf, sizeof buf, "<rect x=\"0\" y=\"0\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"#999\"/>\n", size, size);
  out += buf;
  out += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  bool first = true;
  for (const auto& c : centers) {
    // y axis points up in curve coordinates
    std::snprintf(buf, sizeof buf, "%s%g,%g", first ? "" : " ", c[0] * unit, size - c[1] * unit);
    out += buf;
    first = false;
  }
  out += "\"/>\n</svg>\n";
  return out;
}

std::string render_polyline_json(const Curve& curve, int depth, int pattern) {
  const auto centers = fraction_centers(curve, pattern, depth);
  Integer scale = 2 * int_pow(curve.div(), depth);
  Json points = Json::array();
  for (const auto& c : centers) {
    Json p = Json::array();
    for (int a = 0; a < curve.dim(); ++a) p.push_back(to_string(make_rational(to_integer(c[a]), scale)));
    points.push_back(std::move(p));
  }
  Json doc{{"dim", curve.dim()}, {"depth", depth}, {"pattern", pattern}, {"points", std::move(points)}};
  return doc.dump(1) + "\n";
}

}  // namespace peano
