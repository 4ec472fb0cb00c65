#pragma once

#include "peano/geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace peano {

/// How fraction k of a pattern is obtained: pattern `pattern` moved by
/// `base` (spatial isometry plus optional time reversal).
struct Spec {
  BaseMap base;
  int pattern = 0;

  auto operator<=>(const Spec&) const = default;
};

std::string to_string(const Spec& spec);

struct Pattern {
  std::vector<Cube> proto;
  std::vector<std::optional<Spec>> specs;  // nullopt marks an undefined fraction
};

struct GatePair {
  Point entrance;
  Point exit;

  bool operator==(const GatePair&) const = default;
};

class CurveNotDefined : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A Peano multifractal, possibly with undefined fractions.
class Curve {
 public:
  Curve() = default;
  Curve(int dim, int div, std::vector<Pattern> patterns, std::vector<GatePair> declared_gates = {});

  int dim() const { return dim_; }
  int div() const { return div_; }
  int genus() const { return genus_; }
  int multiplicity() const { return static_cast<int>(patterns_.size()); }

  const Pattern& pattern(int r) const { return patterns_.at(r); }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  const std::optional<Spec>& spec(int r, int k) const { return patterns_.at(r).specs.at(k); }
  const Cube& cube(int r, int k) const { return patterns_.at(r).proto.at(k); }

  bool fully_defined() const;
  /// Gates given in the curve document (needed for curves with undefined
  /// first or last fractions); empty when absent.
  const std::vector<GatePair>& declared_gates() const { return declared_; }

  Curve with_spec(int r, int k, std::optional<Spec> spec) const;
  Curve with_declared_gates(std::vector<GatePair> gates) const;
  /// sigma o gamma_r for every pattern; sigma must be spatial.
  Curve apply_isometry(const BaseMap& sigma) const;
  /// gamma_r(1 - t) for every pattern.
  Curve reverse_time() const;

  bool operator==(const Curve& other) const;

 private:
  int dim_ = 0;
  int div_ = 0;
  int genus_ = 0;
  std::vector<Pattern> patterns_;
  std::vector<GatePair> declared_;
};

/// Index within the pattern's prototype of the j-th fraction in time order
/// when the pattern is traversed with the given time flag.
inline int time_index(int j, bool reversed, int genus) { return reversed ? genus - 1 - j : j; }

/// Exact gates; computed from first/last fractions when they are defined,
/// otherwise taken from the declared gates.
std::vector<GatePair> gates(const Curve& curve);

/// Gates of a fraction in its own coordinates of the unit cube (entrance
/// first, time reversal already applied).
GatePair oriented_gates(const GatePair& pattern_gates, const BaseMap& base);

std::vector<std::string> validate(const Curve& curve);

bool is_facet_gated(const Curve& curve);

/// Face of the unit cube: per axis 0, 1 or kFree.
struct Face {
  static constexpr int kFree = -1;
  std::array<int, kMaxDim> side{};

  static Face vertex(const Cube& v, int dim);
  static Face whole(int dim);
  auto operator<=>(const Face&) const = default;
};

struct Moments {
  Rational first;
  Rational last;
};

/// First and last time a pattern touches a face.
Moments face_moments(const Curve& curve, int pattern, const Face& face);

/// Vertex moments of every vertex of the unit cube; the key is the vertex
/// as a 0/1 vector.
std::map<Cube, Moments> vertex_moments(const Curve& curve, int pattern);

/// Memoized moment solver shared by repeated queries on one curve.
class MomentTable {
 public:
  explicit MomentTable(const Curve& curve);
  Moments face(int pattern, const Face& face);
  /// Moment of a unit-cube vertex (visited once).
  const Rational& vertex(int pattern, const Cube& v);

 private:
  struct Key {
    int pattern;
    Face face;
    bool last;
    auto operator<=>(const Key&) const = default;
  };
  Rational solve(const Key& key);

  const Curve* curve_;
  std::map<Key, Rational> memo_;
  std::vector<std::vector<Rational>> vertex_cache_;
  std::vector<std::vector<bool>> vertex_known_;
};

/// Point gamma_r(t) approximated by following `depth` levels of fractions;
/// returns the corner of the final cube (exact rational coordinates).
Point locate(const Curve& curve, int pattern, const Rational& t, int depth);

/// Order-k fractions of a pattern in time order: their cubes (integers at
/// scale div^k) and specs. Requires the curve to be defined.
struct FractionInfo {
  Cube cube;
  Spec spec;
};
std::vector<FractionInfo> fractions_of_order(const Curve& curve, int pattern, int order);

}  // namespace peano
