#pragma once

#include "peano/search.hpp"

#include <functional>

namespace peano {

/// Gate pairs of a multifractal, one per pattern.
struct GateConfiguration {
  std::vector<GatePair> pairs;

  bool operator==(const GateConfiguration&) const = default;
};

std::string to_string(const GateConfiguration& gc);

/// Smallest image of the pair under cube isometries and entrance/exit swap.
GatePair canonical_gate_pair(const GatePair& pair, int dim);
/// Pairs canonicalized one by one and sorted (patterns are unordered).
GateConfiguration canonical(const GateConfiguration& gc, int dim);

/// Points of the unit cube boundary that are fixed points of some word of
/// at most `word_depth` fraction maps x -> (c + b(x)) / div. With
/// `facet_only` exactly one coordinate is 0 or 1. Sorted, no repeats.
std::vector<Point> gate_candidates(int dim, int div, int word_depth, bool facet_only);

struct PrototypeFilters {
  bool no_diagonal_steps = false;  // consecutive cubes share a facet
};

/// Canonical gate configurations with candidate gates that admit at least
/// one pointed prototype.
std::vector<GateConfiguration> enumerate_gate_configurations(int dim, int mult, int div, bool facet_only,
                                                             int word_depth = 2, const PrototypeFilters& filters = {});

/// Depth-first enumeration of pointed prototypes, one per symmetry class.
/// The visitor returns false to stop early.
void for_each_pointed_prototype(const GateConfiguration& gc, int dim, int div, const PrototypeFilters& filters,
                                const std::function<bool(const PointedPrototype&)>& visit);
std::vector<PointedPrototype> enumerate_pointed_prototypes(const GateConfiguration& gc, int dim, int div,
                                                           const PrototypeFilters& filters = {});
bool has_pointed_prototype(const GateConfiguration& gc, int dim, int div, const PrototypeFilters& filters = {});

/// Plane monofractal gate categories.
enum class PlaneGates { Side, Diagonal, Median, Other };
PlaneGates classify_plane_gates(const GatePair& pair);
std::string to_string(PlaneGates kind);

struct Complexity {
  double prototype_bits = 0;
  double equation_bits = 0;
};

/// m(g-1) log2 K and m g (log2 m + log2 |H|).
Complexity complexity_estimate(int dim, int mult, int genus, double k, double h_order);

}  // namespace peano
