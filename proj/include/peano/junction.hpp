#pragma once

#include "peano/curve.hpp"

#include <map>
#include <vector>

namespace peano {

/// Two time-adjacent fractions: the first placed on the unit cube with
/// spec1, the second on the unit cube shifted by delta with spec2.
struct Junction {
  Spec spec1;
  Spec spec2;
  Cube delta;

  auto operator<=>(const Junction&) const = default;
};

std::string to_string(const Junction& j, int dim);

/// Moves the first fraction to a spatially trivial orientation by applying
/// the inverse of its isometry to the whole pair.
Junction canonical(const Junction& j);

/// Junction formed by the last subfraction of the first fraction and the
/// first subfraction of the second one (not canonicalized).
Junction derived(const Curve& curve, const Junction& j);

/// Canonical junctions between consecutive first-order fractions.
std::vector<Junction> first_order_junctions(const Curve& curve);

struct JunctionClosure {
  std::vector<Junction> junctions;  // canonical, in order of discovery
  std::vector<int> order;           // order at which each one first appears
  int depth = 0;
};

class ClosureTooDeep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

JunctionClosure junction_closure(const Curve& curve, int max_depth = 20);

}  // namespace peano
