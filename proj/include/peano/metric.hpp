#pragma once

#include "peano/geometry.hpp"

#include <cstdint>
#include <string>

namespace peano {

enum class Norm { L1, L2, Linf };

Norm parse_norm(std::string_view text);  // "1", "2", "inf"
std::string to_string(Norm norm);

/// Coordinate-monotone norm in dimension d, with all comparisons done on
/// exact "keys". The key of a ratio dist^d / dt is
///   l1, linf:        dist^d / dt
///   l2, d even:      (dist^2)^(d/2) / dt
///   l2, d odd:       (dist^2)^d / dt^2   (the square of the ratio)
/// so the key is rational whenever the inputs are.
struct Metric {
  Norm norm = Norm::L2;
  int dim = 2;

  /// Power e such that key = value^e.
  int key_power() const { return norm == Norm::L2 && dim % 2 == 1 ? 2 : 1; }
  /// Power applied to the time difference in the key.
  int time_power() const { return key_power(); }

  /// Numerator of the key from per-axis absolute coordinate differences.
  Integer numerator(const std::int64_t* diffs) const;
  double numerator_approx(const std::int64_t* diffs) const;
  Rational numerator(const Point& x, const Point& y) const;

  Rational key(const Point& x, const Point& y, const Rational& dt) const;
  /// Key of the set dilation diam^d / vol given the diameter numerator.
  Rational key_from_value(const Rational& value) const { return rat_pow(value, key_power()); }
  double value_from_key(const Rational& key) const;
  /// Bounds on the value from a key (rounded outward).
  std::pair<double, double> value_bounds(const Rational& key) const;

  std::string name() const;
};

}  // namespace peano
