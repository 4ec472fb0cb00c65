#pragma once

#include "peano/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace peano {

inline constexpr int kMaxDim = 6;

/// Point of R^d with exact coordinates.
using Point = std::vector<Rational>;

/// Integer lattice vector; entries past the dimension are kept at zero so
/// that comparison and hashing ignore the dimension.
struct Cube {
  std::array<int, kMaxDim> c{};

  int& operator[](int i) { return c[i]; }
  int operator[](int i) const { return c[i]; }
  auto operator<=>(const Cube&) const = default;
};

Cube make_cube(std::initializer_list<int> coords);
std::string to_string(const Cube& cube, int dim);

struct CubeHash {
  std::size_t operator()(const Cube& cube) const noexcept;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base orientation: a cube isometry x -> y with y[axis_map[a]] = x[a] or
/// 1 - x[a] (when axis a is flipped), together with a time-reversal flag.
/// The linear part sends basis vector e_a to +-e_{axis_map[a]}.
class BaseMap {
 public:
  BaseMap() = default;
  static BaseMap identity(int dim, bool time_reversed = false);
  static BaseMap from_parts(const std::vector<int>& axis_map, const std::vector<bool>& flips,
                            bool time_reversed);

  int dim() const { return dim_; }
  int image_axis(int a) const { return perm_[a]; }
  bool flipped(int a) const { return (flips_ >> a) & 1u; }
  bool time_reversed() const { return time_rev_; }
  std::uint8_t flip_mask() const { return flips_; }

  /// apply(compose(a, b), x) == apply(a, apply(b, x)); time flags xor.
  friend BaseMap compose(const BaseMap& a, const BaseMap& b);
  BaseMap operator*(const BaseMap& other) const { return compose(*this, other); }
  BaseMap inverse() const;
  /// Spatial part only (time flag cleared).
  BaseMap cube_map() const;
  BaseMap reversed_time() const;
  bool is_identity() const;

  Point apply(const Point& p) const;
  /// Linear part applied to an integer vector.
  Cube apply_vec(const Cube& v) const;
  /// Action on the index of an s-cube of the unit cube grid.
  Cube apply_cube(const Cube& cube, int div) const;
  /// Action on a point given by integer coordinates in [0, scale].
  Cube apply_lattice(const Cube& point, int scale) const;

  /// Orientation code: the images of the basis vectors as letters,
  /// e.g. "KiJ", with a trailing '~' for time reversal.
  std::string code() const;
  static BaseMap parse(std::string_view code, int dim);

  auto operator<=>(const BaseMap&) const = default;

 private:
  std::int8_t dim_ = 0;
  std::array<std::int8_t, kMaxDim> perm_{};
  std::uint8_t flips_ = 0;
  bool time_rev_ = false;
};

BaseMap compose(const BaseMap& a, const BaseMap& b);

struct BaseMapHash {
  std::size_t operator()(const BaseMap& m) const noexcept;
};

/// All 2^{d+1} d! base orientations, identity first.
std::vector<BaseMap> group_enumerate(int dim);
/// All 2^d d! spatial isometries (no time reversal), identity first.
std::vector<BaseMap> cube_isometries(int dim);

/// Letters used for chain and orientation codes: i, j, k, l, ...
char axis_letter(int axis, bool negative);

/// Decodes a chain code to a cube sequence anchored so that every
/// coordinate is non-negative and the minimum along each axis is zero.
std::vector<Cube> parse_chain_code(std::string_view code, int dim);
/// Inverse of parse_chain_code; steps must be unit vectors.
std::string emit_chain_code(const std::vector<Cube>& cubes, int dim);

/// Affine map x -> scale * L x + shift with L a signed permutation.
struct AffineMap {
  Rational scale{1};
  BaseMap linear;  // only the linear part (axis map and signs) is used
  Point shift;

  static AffineMap identity(int dim);
  /// x -> (cube + bm(x)) / div, the placement of a fraction.
  static AffineMap fraction(const Cube& cube, int div, const BaseMap& bm);

  Point apply(const Point& p) const;
  AffineMap then(const AffineMap& outer) const;  // outer o this
  /// Unique fixed point; requires |scale| < 1.
  Point fixed_point() const;
};

std::string to_string(const Point& p);
Point make_point(std::initializer_list<Rational> coords);

}  // namespace peano
