#pragma once

#include "peano/pairs.hpp"

#include <optional>

namespace peano {

/// Bounds on a dilation key (see Metric for the key convention).
struct Bounds {
  Rational lower;
  Rational upper;
};

/// Bounds for one pair of boxes with time intervals; upper is absent when
/// the time intervals touch.
struct PairBounds {
  Rational lower;
  std::optional<Rational> upper;
};

/// Boxes are given by lower corner and side; times by [begin, end] with
/// the first interval preceding the second.
PairBounds pair_bounds(const Point& corner_a, const Rational& side_a, const Point& corner_b, const Rational& side_b,
                       const Rational& a_begin, const Rational& a_end, const Rational& b_begin, const Rational& b_end,
                       const Metric& metric);

/// Two curve points with their times, in the units of the frame the pair
/// was found in (pattern or junction); the key is scale invariant.
struct Witness {
  std::string frame;
  Point x, y;
  Rational tx, ty;
  Rational key;
};

struct EngineStats {
  std::uint64_t pairs = 0;         // pairs whose bounds were evaluated
  std::uint64_t subdivisions = 0;  // case (C) splits
  std::uint64_t max_queue = 0;
};

struct Verdict {
  enum class Kind { AtLeast, AtMost };
  Kind kind = Kind::AtMost;
  Rational threshold;  // lower threshold for AtLeast, upper for AtMost
  std::optional<Witness> witness;
  EngineStats stats;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DilationOptions {
  std::uint64_t pair_budget = 2'000'000'000ull;
  int max_junction_depth = 20;
};

/// Branch and bound on one defined curve. Thresholds are keys.
class CurveDilation {
 public:
  CurveDilation(const Curve& curve, const Metric& metric, DilationOptions options = {});

  const Curve& curve() const { return curve_; }
  const Metric& metric() const { return metric_; }
  const FamilyJunctions& junctions() const { return junctions_; }
  const PairEngine& engine() const { return engine_; }

  /// Rigorous starting bounds: the largest lower and upper pair bounds over
  /// all seed pairs.
  Bounds initial_bounds() const;
  Verdict bisect(const Rational& lower, const Rational& upper);
  Bounds estimate(const Rational& rel_err);
  /// Continues narrowing given bounds.
  Bounds refine(Bounds bounds, const Rational& rel_err);

  const EngineStats& total_stats() const { return total_; }
  int bisect_steps() const { return bisect_steps_; }

  Witness witness_of(const PairCandidate& pair);

 private:
  Curve curve_;
  Metric metric_;
  DilationOptions options_;
  CurveFamily family_;
  FamilyJunctions junctions_;
  PairEngine engine_;
  MomentTable moments_;
  EngineStats total_;
  int bisect_steps_ = 0;
};

Verdict bisect_fixed_curve(const Curve& curve, const Rational& lower, const Rational& upper, const Metric& metric);
Bounds estimate_dilation(const Curve& curve, const Rational& rel_err, const Metric& metric);

/// Maximal key over pairs of vertices of fractions of the given order,
/// computed with pruning; also covers the same junctions at larger orders,
/// so the result lies between the plain order-k maximum and the dilation.
struct VertexScan {
  Rational key;
  Witness witness;
  std::uint64_t leaves = 0;
};
VertexScan vertex_scan(const Curve& curve, int order, const Metric& metric);

/// Exhaustive maximum over all vertex pairs of order-k fractions. Throws
/// BudgetExceeded when more than `budget` vertex pairs would be compared.
Rational sampled_lower_bound(const Curve& curve, int order, const Metric& metric,
                             std::uint64_t budget = 200'000'000ull);

class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactResult {
  Rational value;        // exact l2 dilation (d = 2, so the key is the value)
  Rational linf_scan;    // vertex scan of the l_inf dilation at the same order
  Bounds l2_bounds;      // certified coarse bounds used for the order bound
  Bounds linf_bounds;
  int depth = 0;
  int order = 0;         // largest order allowed by the depth bound
  Witness witness;
};

/// Exact l2 dilation of a plane monofractal whose l_inf dilation is
/// certifiably smaller than its l2 dilation.
ExactResult exact_dilation_2d(const Curve& curve, const Rational& coarse_rel_err = make_rational(1, 1000));

}  // namespace peano
