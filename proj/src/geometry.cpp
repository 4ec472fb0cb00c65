#include "peano/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace peano {

Cube make_cube(std::initializer_list<int> coords) {
  if (coords.size() > static_cast<std::size_t>(kMaxDim)) throw std::invalid_argument("cube dimension too large");
  Cube cube;
  int i = 0;
  for (int v : coords) cube[i++] = v;
  return cube;
}

std::string to_string(const Cube& cube, int dim) {
  std::string out = "(";
  for (int i = 0; i < dim; ++i) {
    if (i) out += ",";
    out += std::to_string(cube[i]);
  }
  return out + ")";
}

std::size_t CubeHash::operator()(const Cube& cube) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : cube.c) h = (h ^ static_cast<std::size_t>(v + 0x9e37)) * 1099511628211ull;
  return h;
}

std::size_t BaseMapHash::operator()(const BaseMap& m) const noexcept {
  std::size_t h = static_cast<std::size_t>(m.dim());
  for (int a = 0; a < m.dim(); ++a) h = h * 31 + static_cast<std::size_t>(m.image_axis(a));
  h = h * 257 + m.flip_mask();
  return h * 2 + (m.time_reversed() ? 1 : 0);
}

BaseMap BaseMap::identity(int dim, bool time_reversed) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension");
  BaseMap m;
  m.dim_ = static_cast<std::int8_t>(dim);
  for (int a = 0; a < dim; ++a) m.perm_[a] = static_cast<std::int8_t>(a);
  m.time_rev_ = time_reversed;
  return m;
}

BaseMap BaseMap::from_parts(const std::vector<int>& axis_map, const std::vector<bool>& flips,
                            bool time_reversed) {
  const int dim = static_cast<int>(axis_map.size());
  if (static_cast<int>(flips.size()) != dim) throw DimensionMismatch("axis map and flips differ in size");
  BaseMap m = identity(dim, time_reversed);
  std::vector<bool> seen(dim, false);
  for (int a = 0; a < dim; ++a) {
    int b = axis_map[a];
    if (b < 0 || b >= dim || seen[b]) throw std::invalid_argument("axis map is not a permutation");
    seen[b] = true;
    m.perm_[a] = static_cast<std::int8_t>(b);
    if (flips[a]) m.flips_ |= static_cast<std::uint8_t>(1u << a);
  }
  return m;
}

BaseMap compose(const BaseMap& a, const BaseMap& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("composing base maps of different dimension");
  BaseMap out = BaseMap::identity(a.dim_, a.time_rev_ != b.time_rev_);
  for (int i = 0; i < a.dim_; ++i) {
    int mid = b.perm_[i];
    out.perm_[i] = a.perm_[mid];
    bool flip = b.flipped(i) != a.flipped(mid);
    if (flip) out.flips_ |= static_cast<std::uint8_t>(1u << i);
  }
  return out;
}

BaseMap BaseMap::inverse() const {
  BaseMap out = identity(dim_, time_rev_);
  for (int a = 0; a < dim_; ++a) {
    int b = perm_[a];
    out.perm_[b] = static_cast<std::int8_t>(a);
    if (flipped(a)) out.flips_ |= static_cast<std::uint8_t>(1u << b);
  }
  return out;
}

BaseMap BaseMap::cube_map() const {
  BaseMap out = *this;
  out.time_rev_ = false;
  return out;
}

BaseMap BaseMap::reversed_time() const {
  BaseMap out = *this;
  out.time_rev_ = !time_rev_;
  return out;
}

bool BaseMap::is_identity() const {
  if (time_rev_ || flips_) return false;
  for (int a = 0; a < dim_; ++a)
    if (perm_[a] != a) return false;
  return true;
}

Point BaseMap::apply(const Point& p) const {
  if (static_cast<int>(p.size()) != dim_) throw DimensionMismatch("point dimension differs from base map");
  Point out(dim_);
  for (int a = 0; a < dim_; ++a) out[perm_[a]] = flipped(a) ? Rational(1 - p[a]) : p[a];
  return out;
}

Cube BaseMap::apply_vec(const Cube& v) const {
  Cube out;
  for (int a = 0; a < dim_; ++a) out[perm_[a]] = flipped(a) ? -v[a] : v[a];
  return out;
}

Cube BaseMap::apply_cube(const Cube& cube, int div) const {
  Cube out;
  for (int a = 0; a < dim_; ++a) out[perm_[a]] = flipped(a) ? div - 1 - cube[a] : cube[a];
  return out;
}

Cube BaseMap::apply_lattice(const Cube& point, int scale) const {
  Cube out;
  for (int a = 0; a < dim_; ++a) out[perm_[a]] = flipped(a) ? scale - point[a] : point[a];
  return out;
}

char axis_letter(int axis, bool negative) {
  static constexpr char kLetters[] = "ijklmn";
  if (axis < 0 || axis >= kMaxDim) throw std::invalid_argument("axis out of range");
  char c = kLetters[axis];
  return negative ? static_cast<char>(c - 'a' + 'A') : c;
}

namespace {

// Returns (axis, negative) for a letter, or axis = -1.
std::pair<int, bool> letter_axis(char c) {
  static constexpr std::string_view kLetters = "ijklmn";
  bool negative = c >= 'A' && c <= 'Z';
  char lower = negative ? static_cast<char>(c - 'A' + 'a') : c;
  auto pos = kLetters.find(lower);
  if (pos == std::string_view::npos) return {-1, false};
  return {static_cast<int>(pos), negative};
}

}  // namespace

std::string BaseMap::code() const {
  std::string out;
  for (int a = 0; a < dim_; ++a) out.push_back(axis_letter(perm_[a], flipped(a)));
  if (time_rev_) out.push_back('~');
  return out;
}

BaseMap BaseMap::parse(std::string_view code, int dim) {
  bool rev = false;
  if (!code.empty() && code.back() == '~') {
    rev = true;
    code.remove_suffix(1);
  }
  if (static_cast<int>(code.size()) != dim)
    throw DimensionMismatch("orientation code '" + std::string(code) + "' does not have " + std::to_string(dim) +
                            " letters");
  std::vector<int> axes(dim);
  std::vector<bool> flips(dim);
  for (int a = 0; a < dim; ++a) {
    auto [axis, negative] = letter_axis(code[a]);
    if (axis < 0 || axis >= dim) throw std::invalid_argument("unknown letter in orientation code: " + std::string(code));
    axes[a] = axis;
    flips[a] = negative;
  }
  return from_parts(axes, flips, rev);
}

std::vector<BaseMap> cube_isometries(int dim) {
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<BaseMap> out;
  do {
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
      std::vector<bool> flips(dim);
      for (int a = 0; a < dim; ++a) flips[a] = (mask >> a) & 1u;
      out.push_back(BaseMap::from_parts(perm, flips, false));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<BaseMap> group_enumerate(int dim) {
  auto iso = cube_isometries(dim);
  std::vector<BaseMap> out = iso;
  for (const auto& m : iso) out.push_back(m.reversed_time());
  return out;
}

std::vector<Cube> parse_chain_code(std::string_view code, int dim) {
  std::vector<Cube> cubes{Cube{}};
  for (char c : code) {
    auto [axis, negative] = letter_axis(c);
    if (axis < 0 || axis >= dim) throw std::invalid_argument(std::string("unknown chain code letter '") + c + "'");
    Cube next = cubes.back();
    next[axis] += negative ? -1 : 1;
    cubes.push_back(next);
  }
  for (int a = 0; a < dim; ++a) {
    int lo = 0;
    for (const auto& q : cubes) lo = std::min(lo, q[a]);
    for (auto& q : cubes) q[a] -= lo;
  }
  std::set<Cube> seen(cubes.begin(), cubes.end());
  if (seen.size() != cubes.size()) throw std::invalid_argument("chain code visits a cube twice: " + std::string(code));
  return cubes;
}

std::string emit_chain_code(const std::vector<Cube>& cubes, int dim) {
  std::string out;
  for (std::size_t i = 1; i < cubes.size(); ++i) {
    int axis = -1;
    bool negative = false;
    for (int a = 0; a < dim; ++a) {
      int d = cubes[i][a] - cubes[i - 1][a];
      if (d == 0) continue;
      if (axis >= 0 || (d != 1 && d != -1)) throw std::invalid_argument("chain step is not a unit vector");
      axis = a;
      negative = d < 0;
    }
    if (axis < 0) throw std::invalid_argument("repeated cube in chain");
    out.push_back(axis_letter(axis, negative));
  }
  return out;
}

AffineMap AffineMap::identity(int dim) {
  AffineMap m;
  m.scale = 1;
  m.linear = BaseMap::identity(dim);
  m.shift.assign(dim, Rational(0));
  return m;
}

AffineMap AffineMap::fraction(const Cube& cube, int div, const BaseMap& bm) {
  const int dim = bm.dim();
  AffineMap m;
  m.scale = make_rational(1, div);
  m.linear = bm.cube_map();
  m.shift.assign(dim, Rational(0));
  for (int a = 0; a < dim; ++a) {
    int b = bm.image_axis(a);
    m.shift[b] = make_rational(cube[b] + (bm.flipped(a) ? 1 : 0), div);
  }
  return m;
}

Point AffineMap::apply(const Point& p) const {
  const int dim = linear.dim();
  Point out(dim);
  for (int a = 0; a < dim; ++a) {
    Rational v = linear.flipped(a) ? Rational(-p[a]) : p[a];
    out[linear.image_axis(a)] = scale * v + shift[linear.image_axis(a)];
  }
  return out;
}

AffineMap AffineMap::then(const AffineMap& outer) const {
  AffineMap m;
  m.scale = outer.scale * scale;
  m.linear = compose(outer.linear.cube_map(), linear.cube_map());
  m.shift = outer.apply(shift);
  return m;
}

Point AffineMap::fixed_point() const {
  if (abs(scale) >= 1) throw std::domain_error("fixed point of a non-contracting map");
  const int dim = linear.dim();
  Point x(dim);
  std::vector<bool> done(dim, false);
  for (int start = 0; start < dim; ++start) {
    if (done[start]) continue;
    // cycle start -> perm[start] -> ...; x[perm[a]] = k*sign(a)*x[a] + shift[perm[a]]
    std::vector<int> cycle;
    for (int a = start; !done[a]; a = linear.image_axis(a)) {
      done[a] = true;
      cycle.push_back(a);
    }
    // express x[start] after one loop as coef * x[start] + constant
    Rational coef = 1, constant = 0;
    for (int a : cycle) {
      Rational k = linear.flipped(a) ? Rational(-scale) : scale;
      coef *= k;
      constant = k * constant + shift[linear.image_axis(a)];
    }
    x[start] = constant / (1 - coef);
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
      int a = cycle[i];
      Rational k = linear.flipped(a) ? Rational(-scale) : scale;
      x[linear.image_axis(a)] = k * x[a] + shift[linear.image_axis(a)];
    }
  }
  return x;
}

std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += to_string(p[i]);
  }
  return out + ")";
}

Point make_point(std::initializer_list<Rational> coords) { return Point(coords); }

}  // namespace peano
