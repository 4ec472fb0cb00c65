#pragma once

#include "peano/curve.hpp"
#include "peano/junction.hpp"
#include "peano/metric.hpp"

#include <memory>
#include <utility>

namespace peano {

/// One admissible spec of a fraction. `var` is the boolean variable that
/// selects it (0 when the fraction has a single option).
struct Option {
  Spec spec;
  int var = 0;
};

/// Curves sharing prototypes and gates where every fraction picks its spec
/// independently from a finite option list. A defined curve is the case of
/// one option per fraction.
class CurveFamily {
 public:
  CurveFamily() = default;
  CurveFamily(int dim, int div, std::vector<std::vector<Cube>> protos, std::vector<GatePair> gates,
              std::vector<std::vector<std::vector<Spec>>> options);
  static CurveFamily from_curve(const Curve& curve);

  int dim() const { return dim_; }
  int div() const { return div_; }
  int genus() const { return genus_; }
  int multiplicity() const { return static_cast<int>(protos_.size()); }
  const std::vector<Cube>& proto(int r) const { return protos_[r]; }
  const Cube& cube(int r, int k) const { return protos_[r][k]; }
  const std::vector<Option>& options(int r, int k) const { return options_[r][k]; }
  const std::vector<GatePair>& gates() const { return gates_; }

  int group(int r, int k) const { return r * genus_ + k; }
  int variable_count() const { return static_cast<int>(var_group_.size()); }
  /// (pattern, fraction, option index) of a variable id (1-based).
  int var_group(int var) const { return var_group_[var - 1]; }
  int var_option(int var) const { return var_option_[var - 1]; }

  /// Restricts fraction (r, k) to a single spec (used to fix a choice).
  CurveFamily restricted(int r, int k, const Spec& spec) const;
  /// Curve given by one true variable per group (model[var] for var >= 1).
  Curve decode(const std::vector<bool>& model) const;
  /// The curve obtained from option index choice[group].
  Curve instantiate(const std::vector<int>& choice) const;
  std::size_t curve_count_log2() const;
  double curve_count() const;

 private:
  void number_variables();

  int dim_ = 0, div_ = 0, genus_ = 0;
  std::vector<std::vector<Cube>> protos_;
  std::vector<GatePair> gates_;
  std::vector<std::vector<std::vector<Option>>> options_;
  std::vector<int> var_group_, var_option_;
};

/// Junctions that can occur in some curve of a family. Junction j occurs
/// when some trigger holds: the parent junction occurs (or parent == -1 for
/// first-order ones) and all listed variables are true.
struct JunctionTrigger {
  int parent = -1;
  std::vector<int> vars;
};

struct FamilyJunctions {
  std::vector<Junction> junctions;
  std::vector<int> order;
  std::vector<bool> certain;  // occurs in every curve of the family
  std::vector<std::vector<JunctionTrigger>> triggers;
  int depth = 0;
};

FamilyJunctions family_junctions(const CurveFamily& family, int max_depth = 20);

/// Sorted list of (group, option index) choices made while subdividing.
using History = std::vector<std::pair<int, int>>;
using HistoryPtr = std::shared_ptr<const History>;

/// A fraction inside a frame: integer cube corner at scale div^depth,
/// time index at scale genus^depth. When frac >= 0 the spec is still to be
/// chosen among the options of (pattern, frac), composed with head;
/// otherwise the spec is (head, pattern).
struct Node {
  std::array<std::int64_t, kMaxDim> cube{};
  std::int64_t time = 0;
  BaseMap head;
  std::int16_t pattern = 0;
  std::int16_t frac = -1;
  std::int8_t depth = 0;

  bool pending() const { return frac >= 0; }
};

struct PairCandidate {
  Node a, b;  // a precedes b in time
  int frame = 0;
  HistoryPtr history;
  double upper = 0;  // approximate U, used for ordering
};

struct PairGeometry {
  std::array<std::int64_t, kMaxDim> diff{};  // per-axis maximal distance
  std::int64_t gap = 0;
  std::int64_t span = 0;
  double numerator = 0;
  double upper = 0;  // +inf when gap == 0
  double lower = 0;
};

struct Threshold {
  Rational key;
  double approx = 0;

  static Threshold of(const Rational& key) { return {key, key.get_d()}; }
};

/// Frame in which pairs live: either the whole pattern (first-order
/// fractions that are not adjacent) or a junction.
struct Frame {
  int pattern = -1;   // auto frame of this pattern, or -1
  int junction = -1;  // index into FamilyJunctions, or -1
};

class DepthOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PairEngine {
 public:
  PairEngine(const CurveFamily& family, const Metric& metric, const FamilyJunctions& junctions);

  const CurveFamily& family() const { return *family_; }
  const Metric& metric() const { return metric_; }
  const FamilyJunctions& junctions() const { return *junctions_; }
  const std::vector<Frame>& frames() const { return frames_; }

  /// Initial pairs of all frames, with empty history.
  std::vector<PairCandidate> seeds() const;
  std::vector<PairCandidate> frame_seeds(int frame) const;

  PairGeometry geometry(const PairCandidate& pair) const;
  /// Exact checks of U <= t and L >= t.
  bool upper_at_most(const PairGeometry& geo, const Threshold& t) const;
  bool lower_at_least(const PairGeometry& geo, const Threshold& t) const;
  Rational upper_key(const PairGeometry& geo) const;  // requires gap > 0
  Rational lower_key(const PairGeometry& geo) const;

  /// Children of a pair: the node of smaller depth (first on ties) is
  /// split; pending specs are resolved by branching over options not fixed
  /// by the history. Children inherit the frame.
  void subdivide(const PairCandidate& pair, std::vector<PairCandidate>& out) const;
  /// Same, but always splits the given node (0 = a, 1 = b).
  void subdivide_node(const PairCandidate& pair, int which, std::vector<PairCandidate>& out) const;

  /// Resolved spec of a node; the node must not be pending.
  static Spec spec_of(const Node& n) { return Spec{n.head, n.pattern}; }

  /// Variable guarding the frame (0 when the frame always occurs).
  int frame_guard(int frame) const;
  std::string frame_name(int frame) const;

 private:
  Node make_child(const Node& parent, const Spec& spec, int j) const;
  void resolve_single(Node& n) const;

  const CurveFamily* family_;
  Metric metric_;
  const FamilyJunctions* junctions_;
  std::vector<Frame> frames_;
  std::int64_t time_limit_depth_ = 0;
};

}  // namespace peano
