#include "peano/junction.hpp"

#include <set>

namespace peano {

std::string to_string(const Junction& j, int dim) {
  return to_string(j.spec1) + " -> " + to_string(j.spec2) + " " + to_string(j.delta, dim);
}

Junction canonical(const Junction& j) {
  BaseMap inv = j.spec1.base.cube_map().inverse();
  Junction out;
  out.spec1 = Spec{inv * j.spec1.base, j.spec1.pattern};
  out.spec2 = Spec{inv * j.spec2.base, j.spec2.pattern};
  out.delta = inv.apply_vec(j.delta);
  return out;
}

Junction derived(const Curve& curve, const Junction& j) {
  const int g = curve.genus();
  const int s = curve.div();
  const BaseMap& b1 = j.spec1.base;
  const BaseMap& b2 = j.spec2.base;
  int i1 = time_index(g - 1, b1.time_reversed(), g);
  int i2 = time_index(0, b2.time_reversed(), g);
  const auto& sub1 = curve.spec(j.spec1.pattern, i1);
  const auto& sub2 = curve.spec(j.spec2.pattern, i2);
  if (!sub1 || !sub2) throw CurveNotDefined("derived junction needs defined boundary fractions");
  Cube c1 = b1.apply_cube(curve.cube(j.spec1.pattern, i1), s);
  Cube c2 = b2.apply_cube(curve.cube(j.spec2.pattern, i2), s);
  Junction out;
  out.spec1 = Spec{b1 * sub1->base, sub1->pattern};
  out.spec2 = Spec{b2 * sub2->base, sub2->pattern};
  for (int a = 0; a < curve.dim(); ++a) out.delta[a] = s * j.delta[a] + c2[a] - c1[a];
  return out;
}

std::vector<Junction> first_order_junctions(const Curve& curve) {
  std::set<Junction> seen;
  std::vector<Junction> out;
  for (int r = 0; r < curve.multiplicity(); ++r) {
    for (int k = 0; k + 1 < curve.genus(); ++k) {
      const auto& s1 = curve.spec(r, k);
      const auto& s2 = curve.spec(r, k + 1);
      if (!s1 || !s2) throw CurveNotDefined("junctions need a fully defined curve");
      Junction j{*s1, *s2, Cube{}};
      for (int a = 0; a < curve.dim(); ++a) j.delta[a] = curve.cube(r, k + 1)[a] - curve.cube(r, k)[a];
      j = canonical(j);
      if (seen.insert(j).second) out.push_back(j);
    }
  }
  return out;
}

JunctionClosure junction_closure(const Curve& curve, int max_depth) {
  JunctionClosure out;
  std::set<Junction> seen;
  std::vector<Junction> level = first_order_junctions(curve);
  for (const auto& j : level) {
    seen.insert(j);
    out.junctions.push_back(j);
    out.order.push_back(1);
  }
  out.depth = 1;
  for (int order = 2; !level.empty(); ++order) {
    std::vector<Junction> next;
    for (const auto& j : level) {
      Junction dj = canonical(derived(curve, j));
      if (seen.insert(dj).second) {
        next.push_back(dj);
        out.junctions.push_back(dj);
        out.order.push_back(order);
      }
    }
    if (!next.empty()) {
      out.depth = order;
      if (order > max_depth)
        throw ClosureTooDeep("junction closure still growing at order " + std::to_string(order));
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace peano
