#pragma once

#include "peano/dilation.hpp"
#include "peano/sat.hpp"

namespace peano {

/// Prototypes with entrance/exit points for every cube. Local gates are
/// given in the coordinates of the cube itself (as a unit cube).
struct PointedPrototype {
  int dim = 0;
  int div = 0;
  std::vector<std::vector<Cube>> protos;
  std::vector<std::vector<GatePair>> local_gates;
  std::vector<GatePair> gates;

  int genus() const { return static_cast<int>(protos.at(0).size()); }
  int multiplicity() const { return static_cast<int>(protos.size()); }
  bool operator==(const PointedPrototype&) const = default;
};

PointedPrototype pointed_prototype_of(const Curve& curve);

/// Specs of pattern r's fraction k compatible with the gates: base maps
/// and sub-patterns sending the sub-pattern's gates to the cube gates.
std::vector<Spec> valid_choices(const PointedPrototype& pp, int r, int k);

/// Family of all curves with the pointed prototype. Throws when a fraction
/// admits no spec.
CurveFamily family_of(const PointedPrototype& pp);

struct SearchConfig {
  Metric metric;
  double rebuild_base = 1.3;
  std::vector<Rational> epochs;  // strictly decreasing relative errors
  std::uint64_t pair_budget = 4'000'000'000ull;
  std::uint64_t seed = 0;
  int max_junction_depth = 20;
  int jobs = 1;  // worker threads for independent prototypes
};

/// Default epochs: first, first/4, ... down to the final error.
std::vector<Rational> default_epochs(const Rational& first, const Rational& last);

struct SearchStats {
  std::uint64_t bisect_steps = 0;
  std::uint64_t pairs = 0;
  std::uint64_t banned_pairs = 0;
  std::uint64_t solver_calls = 0;
  std::size_t largest_vars = 0, largest_clauses = 0, largest_literals = 0;

  void merge(const SearchStats& other);
};

struct ClassVerdict {
  enum class Kind { AllAtLeast, Witness };
  Kind kind = Kind::AllAtLeast;
  Rational threshold;
  std::optional<Curve> curve;
};

/// Branch and bound over all curves of a family with ban clauses and a
/// satisfiability check.
class ClassDilation {
 public:
  ClassDilation(CurveFamily family, const SearchConfig& config);

  const CurveFamily& family() const { return family_; }
  const FamilyJunctions& junctions() const { return junctions_; }
  /// Extra constraints on the choice variables, kept in every formula.
  void add_constraint(std::vector<int> clause) { extra_.push_back(std::move(clause)); }
  /// Base formula: exactly-one per fraction, junction occurrence, extras.
  Cnf base_formula() const;

  Bounds initial_bounds() const;
  ClassVerdict bisect(const Rational& lower, const Rational& upper);
  /// Narrows bounds on the minimal dilation until the relative error is
  /// reached or the lower bound exceeds `prune_above`.
  Bounds refine(Bounds bounds, const Rational& rel_err, const std::optional<Rational>& prune_above = std::nullopt);

  const SearchStats& stats() const { return stats_; }
  const std::optional<Curve>& example() const { return example_; }
  /// Some curve of the family (satisfying the extra constraints).
  std::optional<Curve> any_curve();
  const Cnf& last_formula() const { return last_formula_; }

 private:
  SatSolver::Result solve(const Cnf& base, const std::vector<std::vector<int>>& bans);
  int var_of(const std::pair<int, int>& choice) const;

  CurveFamily family_;
  SearchConfig config_;
  FamilyJunctions junctions_;
  PairEngine engine_;
  std::vector<std::vector<int>> extra_;
  SearchStats stats_;
  std::optional<Curve> example_;
  std::vector<bool> model_;
  Cnf last_formula_;
};

ClassVerdict bisect_class(const PointedPrototype& pp, const Rational& lower, const Rational& upper,
                          const SearchConfig& config);

struct MinimizeResult {
  Bounds bounds;
  std::vector<std::size_t> survivors;  // indices into the input list
  std::vector<Bounds> per_prototype;
  std::optional<Curve> example;
  SearchStats stats;
  double curves = 0;
};

MinimizeResult minimize_over_prototypes(const std::vector<PointedPrototype>& pps, const SearchConfig& config);

/// Runs one class per fraction of `curve`: the curve's pointed prototype
/// with that fraction forbidden from taking the curve's own spec. Passing
/// means every such class is AllAtLeast(lower), i.e. nearby curves with a
/// single changed orientation cannot beat `lower`.
struct ExclusionReport {
  int classes = 0;
  std::vector<std::pair<int, int>> witnesses;  // (pattern, fraction) with a curve below `upper`
  SearchStats stats;
  bool passed() const { return witnesses.empty(); }
};

ExclusionReport exclude_each_fraction(const Curve& curve, const Rational& lower, const Rational& upper,
                                      const SearchConfig& config);

}  // namespace peano
