#include "peano/curve.hpp"

#include <algorithm>
#include <set>

namespace peano {

std::string to_string(const Spec& spec) { return spec.base.code() + "(" + std::to_string(spec.pattern) + ")"; }

Curve::Curve(int dim, int div, std::vector<Pattern> patterns, std::vector<GatePair> declared_gates)
    : dim_(dim), div_(div), patterns_(std::move(patterns)), declared_(std::move(declared_gates)) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension " + std::to_string(dim));
  if (div < 2) throw std::invalid_argument("division must be at least 2");
  if (patterns_.empty()) throw std::invalid_argument("curve needs at least one pattern");
  genus_ = 1;
  for (int i = 0; i < dim; ++i) genus_ *= div;
  for (const auto& p : patterns_) {
    if (static_cast<int>(p.proto.size()) != genus_ || static_cast<int>(p.specs.size()) != genus_)
      throw std::invalid_argument("pattern must have genus " + std::to_string(genus_) + " fractions");
    for (const auto& s : p.specs) {
      if (!s) continue;
      if (s->base.dim() != dim) throw DimensionMismatch("orientation dimension differs from curve");
      if (s->pattern < 0 || s->pattern >= static_cast<int>(patterns_.size()))
        throw std::invalid_argument("spec refers to a missing pattern");
    }
  }
  if (!declared_.empty() && declared_.size() != patterns_.size())
    throw std::invalid_argument("declared gates must be given for every pattern");
}

bool Curve::fully_defined() const {
  for (const auto& p : patterns_)
    for (const auto& s : p.specs)
      if (!s) return false;
  return true;
}

Curve Curve::with_spec(int r, int k, std::optional<Spec> spec) const {
  Curve out = *this;
  out.patterns_.at(r).specs.at(k) = spec;
  return out;
}

Curve Curve::with_declared_gates(std::vector<GatePair> gates) const {
  return Curve(dim_, div_, patterns_, std::move(gates));
}

Curve Curve::apply_isometry(const BaseMap& sigma) const {
  if (sigma.time_reversed()) throw std::invalid_argument("isometry must not reverse time");
  BaseMap inv = sigma.inverse();
  std::vector<Pattern> out = patterns_;
  for (auto& p : out) {
    for (auto& q : p.proto) q = sigma.apply_cube(q, div_);
    for (auto& s : p.specs)
      if (s) s->base = sigma * s->base * inv;
  }
  std::vector<GatePair> declared;
  for (const auto& gp : declared_) declared.push_back({sigma.apply(gp.entrance), sigma.apply(gp.exit)});
  return Curve(dim_, div_, std::move(out), std::move(declared));
}

Curve Curve::reverse_time() const {
  std::vector<Pattern> out = patterns_;
  for (auto& p : out) {
    std::reverse(p.proto.begin(), p.proto.end());
    std::reverse(p.specs.begin(), p.specs.end());
  }
  std::vector<GatePair> declared;
  for (const auto& gp : declared_) declared.push_back({gp.exit, gp.entrance});
  return Curve(dim_, div_, std::move(out), std::move(declared));
}

bool Curve::operator==(const Curve& other) const {
  if (dim_ != other.dim_ || div_ != other.div_ || patterns_.size() != other.patterns_.size()) return false;
  for (std::size_t r = 0; r < patterns_.size(); ++r)
    if (patterns_[r].proto != other.patterns_[r].proto || patterns_[r].specs != other.patterns_[r].specs)
      return false;
  return true;
}

GatePair oriented_gates(const GatePair& pattern_gates, const BaseMap& base) {
  Point a = base.apply(pattern_gates.entrance);
  Point b = base.apply(pattern_gates.exit);
  if (base.time_reversed()) std::swap(a, b);
  return {a, b};
}

namespace {

bool first_last_defined(const Curve& curve) {
  for (int r = 0; r < curve.multiplicity(); ++r)
    if (!curve.spec(r, 0) || !curve.spec(r, curve.genus() - 1)) return false;
  return true;
}

Point place(const Curve& curve, const Cube& cube, const Point& local) {
  Point out(curve.dim());
  for (int a = 0; a < curve.dim(); ++a) out[a] = (Rational(cube[a]) + local[a]) / curve.div();
  return out;
}

}  // namespace

std::vector<GatePair> gates(const Curve& curve) {
  if (!first_last_defined(curve)) {
    if (curve.declared_gates().empty())
      throw CurveNotDefined("gates need defined first and last fractions or declared gates");
    return curve.declared_gates();
  }
  const int m = curve.multiplicity();
  const int g = curve.genus();
  // state 2r is the entrance of pattern r, 2r+1 its exit
  std::vector<int> next(2 * m);
  std::vector<AffineMap> step(2 * m);
  for (int r = 0; r < m; ++r) {
    for (int end = 0; end < 2; ++end) {
      int k = end == 0 ? 0 : g - 1;
      const Spec& s = *curve.spec(r, k);
      next[2 * r + end] = 2 * s.pattern + (end ^ (s.base.time_reversed() ? 1 : 0));
      step[2 * r + end] = AffineMap::fraction(curve.cube(r, k), curve.div(), s.base);
    }
  }
  std::vector<std::optional<Point>> value(2 * m);
  for (int start = 0; start < 2 * m; ++start) {
    if (value[start]) continue;
    std::vector<int> path;
    std::vector<int> pos(2 * m, -1);
    int cur = start;
    while (!value[cur] && pos[cur] < 0) {
      pos[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      cur = next[cur];
    }
    std::size_t stop = path.size();
    if (!value[cur]) {
      // cycle path[pos[cur]..]: compose maps around it
      std::size_t c0 = pos[cur];
      AffineMap loop = AffineMap::identity(curve.dim());
      for (std::size_t i = path.size(); i-- > c0;) loop = loop.then(step[path[i]]);
      value[cur] = loop.fixed_point();
      for (std::size_t i = path.size(); i-- > c0 + 1;) value[path[i]] = step[path[i]].apply(*value[next[path[i]]]);
      stop = c0;
    }
    for (std::size_t i = stop; i-- > 0;) value[path[i]] = step[path[i]].apply(*value[next[path[i]]]);
  }
  std::vector<GatePair> out(m);
  for (int r = 0; r < m; ++r) out[r] = {*value[2 * r], *value[2 * r + 1]};
  return out;
}

std::vector<std::string> validate(const Curve& curve) {
  std::vector<std::string> out;
  const int d = curve.dim();
  const int g = curve.genus();
  const int s = curve.div();
  for (int r = 0; r < curve.multiplicity(); ++r) {
    const auto& proto = curve.pattern(r).proto;
    std::set<Cube> seen;
    for (int k = 0; k < g; ++k) {
      for (int a = 0; a < d; ++a)
        if (proto[k][a] < 0 || proto[k][a] >= s)
          out.push_back("pattern " + std::to_string(r) + ": cube " + std::to_string(k) + " outside the grid");
      if (!seen.insert(proto[k]).second)
        out.push_back("pattern " + std::to_string(r) + ": cube " + std::to_string(k) + " repeated");
      if (k == 0) continue;
      bool moved = false, far = false;
      for (int a = 0; a < d; ++a) {
        int delta = proto[k][a] - proto[k - 1][a];
        moved |= delta != 0;
        far |= delta < -1 || delta > 1;
      }
      if (!moved || far)
        out.push_back("pattern " + std::to_string(r) + ": step " + std::to_string(k) + " is not a unit step");
    }
  }
  if (!out.empty()) return out;

  std::vector<GatePair> gp;
  try {
    gp = gates(curve);
  } catch (const CurveNotDefined&) {
    return out;  // nothing more can be checked without gates
  }
  if (!curve.declared_gates().empty() && first_last_defined(curve) && curve.declared_gates() != gp)
    out.push_back("declared gates differ from the computed fixed points");

  for (int r = 0; r < curve.multiplicity(); ++r) {
    std::vector<std::optional<GatePair>> placed(g);
    for (int k = 0; k < g; ++k) {
      const auto& spec = curve.spec(r, k);
      if (!spec) continue;
      GatePair local = oriented_gates(gp[spec->pattern], spec->base);
      placed[k] = GatePair{place(curve, curve.cube(r, k), local.entrance), place(curve, curve.cube(r, k), local.exit)};
    }
    // joints[k]: between fraction k-1 and k (0 and g are the pattern gates)
    std::vector<int> broken(g + 1, 0);
    for (int k = 0; k <= g; ++k) {
      const Point* left = k == 0 ? &gp[r].entrance : (placed[k - 1] ? &placed[k - 1]->exit : nullptr);
      const Point* right = k == g ? &gp[r].exit : (placed[k] ? &placed[k]->entrance : nullptr);
      if (left && right && *left != *right) broken[k] = 1;
    }
    for (int k = 0; k < g; ++k) {
      if (broken[k] && broken[k + 1]) {
        out.push_back("pattern " + std::to_string(r) + ": fraction " + std::to_string(k) + " orientation " +
                      to_string(*curve.spec(r, k)) + " does not match its gates");
        broken[k] = broken[k + 1] = 2;
      }
    }
    for (int k = 0; k <= g; ++k)
      if (broken[k] == 1)
        out.push_back("pattern " + std::to_string(r) + ": discontinuity before fraction " + std::to_string(k));
  }
  return out;
}

bool is_facet_gated(const Curve& curve) {
  for (const auto& gp : gates(curve)) {
    for (const Point* p : {&gp.entrance, &gp.exit}) {
      int on_boundary = 0;
      for (const auto& x : *p)
        if (x == 0 || x == 1) ++on_boundary;
      if (on_boundary != 1) return false;
    }
  }
  return true;
}

Face Face::vertex(const Cube& v, int dim) {
  Face f = whole(dim);
  for (int a = 0; a < dim; ++a) f.side[a] = v[a] ? 1 : 0;
  return f;
}

Face Face::whole(int dim) {
  Face f;
  for (int a = 0; a < kMaxDim; ++a) f.side[a] = a < dim ? kFree : 0;
  return f;
}

MomentTable::MomentTable(const Curve& curve)
    : curve_(&curve),
      vertex_cache_(curve.multiplicity(), std::vector<Rational>(1u << curve.dim())),
      vertex_known_(curve.multiplicity(), std::vector<bool>(1u << curve.dim(), false)) {}

Moments MomentTable::face(int pattern, const Face& face) {
  return {solve({pattern, face, false}), solve({pattern, face, true})};
}

const Rational& MomentTable::vertex(int pattern, const Cube& v) {
  unsigned idx = 0;
  for (int a = 0; a < curve_->dim(); ++a)
    if (v[a]) idx |= 1u << a;
  if (!vertex_known_[pattern][idx]) {
    vertex_cache_[pattern][idx] = solve({pattern, Face::vertex(v, curve_->dim()), false});
    vertex_known_[pattern][idx] = true;
  }
  return vertex_cache_[pattern][idx];
}

Rational MomentTable::solve(const Key& key) {
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const Curve& c = *curve_;
  const int d = c.dim(), s = c.div(), g = c.genus();
  // t(key) = offset + slope * t(next)
  struct Step {
    Key key;
    Rational offset, slope;
  };
  std::vector<Step> path;
  std::map<Key, std::size_t> pos;
  Key cur = key;
  while (!memo_.count(cur) && !pos.count(cur)) {
    pos[cur] = path.size();
    const auto& proto = c.pattern(cur.pattern).proto;
    int found = -1;
    for (int j = 0; j < g; ++j) {
      int k = cur.last ? g - 1 - j : j;
      bool touches = true;
      for (int a = 0; a < d && touches; ++a)
        if (cur.face.side[a] != Face::kFree && proto[k][a] != cur.face.side[a] * (s - 1)) touches = false;
      if (touches) {
        found = k;
        break;
      }
    }
    if (found < 0) throw std::logic_error("face is not touched by any fraction");
    const auto& spec = c.spec(cur.pattern, found);
    if (!spec) throw CurveNotDefined("moments need a fully defined curve");
    Key nk{spec->pattern, Face::whole(d), cur.last != spec->base.time_reversed()};
    for (int a = 0; a < d; ++a) {
      int img = spec->base.image_axis(a);
      int side = cur.face.side[img];
      if (side != Face::kFree) nk.face.side[a] = spec->base.flipped(a) ? 1 - side : side;
    }
    Rational gg(g);
    if (spec->base.time_reversed())
      path.push_back({cur, Rational(found + 1) / gg, Rational(-1) / gg});
    else
      path.push_back({cur, Rational(found) / gg, Rational(1) / gg});
    cur = nk;
  }
  std::size_t stop = path.size();
  if (!memo_.count(cur)) {
    std::size_t c0 = pos[cur];
    // t0 = A + B t0 around the cycle
    Rational a = 0, b = 1;
    for (std::size_t i = c0; i < path.size(); ++i) {
      a += b * path[i].offset;
      b *= path[i].slope;
    }
    memo_[cur] = a / (1 - b);
    for (std::size_t i = path.size(); i-- > c0 + 1;) {
      const Key& nxt = i + 1 < path.size() ? path[i + 1].key : cur;
      memo_[path[i].key] = path[i].offset + path[i].slope * memo_.at(nxt);
    }
    stop = c0;
  }
  for (std::size_t i = stop; i-- > 0;) {
    const Key& nxt = i + 1 < path.size() ? path[i + 1].key : cur;
    memo_[path[i].key] = path[i].offset + path[i].slope * memo_.at(nxt);
  }
  return memo_.at(key);
}

Moments face_moments(const Curve& curve, int pattern, const Face& face) {
  MomentTable table(curve);
  return table.face(pattern, face);
}

std::map<Cube, Moments> vertex_moments(const Curve& curve, int pattern) {
  MomentTable table(curve);
  std::map<Cube, Moments> out;
  for (unsigned mask = 0; mask < (1u << curve.dim()); ++mask) {
    Cube v;
    for (int a = 0; a < curve.dim(); ++a) v[a] = (mask >> a) & 1u;
    out[v] = table.face(pattern, Face::vertex(v, curve.dim()));
  }
  return out;
}

Point locate(const Curve& curve, int pattern, const Rational& t, int depth) {
  const int g = curve.genus();
  AffineMap map = AffineMap::identity(curve.dim());
  Rational tau = t;
  int r = pattern;
  for (int level = 0; level < depth; ++level) {
    Rational scaled = tau * g;
    Integer fl = scaled.get_num() / scaled.get_den();
    int k = std::min(static_cast<int>(fl.get_si()), g - 1);
    tau = scaled - k;
    const auto& spec = curve.spec(r, k);
    if (!spec) throw CurveNotDefined("locate needs a fully defined curve");
    map = AffineMap::fraction(curve.cube(r, k), curve.div(), spec->base).then(map);
    if (spec->base.time_reversed()) tau = 1 - tau;
    r = spec->pattern;
  }
  Point zero(curve.dim(), Rational(0)), one(curve.dim(), Rational(1));
  Point a = map.apply(zero), b = map.apply(one);
  for (int i = 0; i < curve.dim(); ++i)
    if (b[i] < a[i]) a[i] = b[i];
  return a;
}

std::vector<FractionInfo> fractions_of_order(const Curve& curve, int pattern, int order) {
  const int g = curve.genus();
  std::vector<FractionInfo> cur{{Cube{}, Spec{BaseMap::identity(curve.dim()), pattern}}};
  for (int level = 0; level < order; ++level) {
    std::vector<FractionInfo> next;
    next.reserve(cur.size() * g);
    for (const auto& f : cur) {
      const auto& pat = curve.pattern(f.spec.pattern);
      for (int j = 0; j < g; ++j) {
        int i = time_index(j, f.spec.base.time_reversed(), g);
        const auto& sub = pat.specs[i];
        if (!sub) throw CurveNotDefined("fraction expansion needs a fully defined curve");
        Cube q = f.spec.base.apply_cube(pat.proto[i], curve.div());
        Cube cube;
        for (int a = 0; a < curve.dim(); ++a) cube[a] = f.cube[a] * curve.div() + q[a];
        next.push_back({cube, Spec{f.spec.base * sub->base, sub->pattern}});
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace peano
