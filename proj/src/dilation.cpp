#include "peano/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace peano {

PairBounds pair_bounds(const Point& corner_a, const Rational& side_a, const Point& corner_b, const Rational& side_b,
                       const Rational& a_begin, const Rational& a_end, const Rational& b_begin, const Rational& b_end,
                       const Metric& metric) {
  if (a_end > b_begin) throw std::invalid_argument("first time interval must precede the second");
  Point x(metric.dim), y(metric.dim, Rational(0));
  for (int i = 0; i < metric.dim; ++i) {
    Rational forward = corner_b[i] + side_b - corner_a[i];
    Rational backward = corner_a[i] + side_a - corner_b[i];
    x[i] = std::max(forward, backward);
  }
  Rational num = metric.numerator(x, y);
  PairBounds out;
  out.lower = num / rat_pow(b_end - a_begin, metric.time_power());
  if (b_begin > a_end) out.upper = num / rat_pow(b_begin - a_end, metric.time_power());
  return out;
}

namespace {

struct Entry {
  PairCandidate pair;
  std::uint64_t seq;
};

struct LowerPriority {
  bool operator()(const Entry& x, const Entry& y) const {
    if (x.pair.upper != y.pair.upper) return x.pair.upper < y.pair.upper;
    int dx = x.pair.a.depth + x.pair.b.depth, dy = y.pair.a.depth + y.pair.b.depth;
    if (dx != dy) return dx > dy;
    return x.seq > y.seq;
  }
};

using PairQueue = std::priority_queue<Entry, std::vector<Entry>, LowerPriority>;

Cube vertex_cube(unsigned mask, int dim) {
  Cube v;
  for (int a = 0; a < dim; ++a) v[a] = (mask >> a) & 1u;
  return v;
}

// Time of a unit-cube corner (given in frame axes) inside a resolved node,
// as an offset in [0, 1] from the node's start.
Rational corner_time(MomentTable& table, const Node& node, const Cube& corner) {
  Cube local = node.head.inverse().apply_lattice(corner, 1);
  Rational tau = table.vertex(node.pattern, local);
  if (node.head.time_reversed()) tau = 1 - tau;
  return tau;
}

}  // namespace

CurveDilation::CurveDilation(const Curve& curve, const Metric& metric, DilationOptions options)
    : curve_(curve),
      metric_(metric),
      options_(options),
      family_(CurveFamily::from_curve(curve_)),
      junctions_(family_junctions(family_, options.max_junction_depth)),
      engine_(family_, metric_, junctions_),
      moments_(curve_) {}

Bounds CurveDilation::initial_bounds() const {
  std::optional<Rational> lo, hi;
  for (const auto& seed : engine_.seeds()) {
    PairGeometry geo = engine_.geometry(seed);
    Rational l = engine_.lower_key(geo), u = engine_.upper_key(geo);
    if (!lo || l > *lo) lo = l;
    if (!hi || u > *hi) hi = u;
  }
  if (!lo) throw std::logic_error("curve has no seed pairs");
  return {*lo, *hi};
}

Witness CurveDilation::witness_of(const PairCandidate& pair) {
  const int d = curve_.dim();
  const Node& a = pair.a;
  const Node& b = pair.b;
  const int depth = std::max(a.depth, b.depth);
  Integer sa = int_pow(curve_.div(), depth - a.depth), sb = int_pow(curve_.div(), depth - b.depth);
  Cube ua, ub;
  Witness w;
  w.frame = engine_.frame_name(pair.frame);
  w.x.resize(d);
  w.y.resize(d);
  Integer scale = int_pow(curve_.div(), depth);
  for (int i = 0; i < d; ++i) {
    Integer alo = to_integer(a.cube[i]) * sa, ahi = alo + sa;
    Integer blo = to_integer(b.cube[i]) * sb, bhi = blo + sb;
    if (bhi - alo >= ahi - blo) {
      ua[i] = 0;
      ub[i] = 1;
      w.x[i] = make_rational(alo, scale);
      w.y[i] = make_rational(bhi, scale);
    } else {
      ua[i] = 1;
      ub[i] = 0;
      w.x[i] = make_rational(ahi, scale);
      w.y[i] = make_rational(blo, scale);
    }
  }
  w.tx = (Rational(to_integer(a.time)) + corner_time(moments_, a, ua)) / int_pow(curve_.genus(), a.depth);
  w.ty = (Rational(to_integer(b.time)) + corner_time(moments_, b, ub)) / int_pow(curve_.genus(), b.depth);
  w.key = metric_.key(w.x, w.y, w.ty - w.tx);
  return w;
}

Verdict CurveDilation::bisect(const Rational& lower, const Rational& upper) {
  if (!(lower < upper)) throw std::invalid_argument("bisection needs lower < upper");
  ++bisect_steps_;
  const Threshold lo = Threshold::of(lower), hi = Threshold::of(upper);
  Verdict out;
  PairQueue queue;
  std::uint64_t seq = 0;
  std::optional<PairCandidate> hit;

  auto consider = [&](PairCandidate&& p) {
    ++out.stats.pairs;
    PairGeometry geo = engine_.geometry(p);
    if (engine_.upper_at_most(geo, hi)) return;
    if (engine_.lower_at_least(geo, lo)) {
      hit = std::move(p);
      return;
    }
    queue.push(Entry{std::move(p), seq++});
  };

  for (auto& seed : engine_.seeds()) {
    consider(std::move(seed));
    if (hit) break;
  }
  std::vector<PairCandidate> children;
  while (!hit && !queue.empty()) {
    if (out.stats.pairs > options_.pair_budget) throw BudgetExceeded("pair budget exhausted");
    out.stats.max_queue = std::max<std::uint64_t>(out.stats.max_queue, queue.size());
    PairCandidate top = queue.top().pair;
    queue.pop();
    children.clear();
    engine_.subdivide(top, children);
    ++out.stats.subdivisions;
    for (auto& c : children) {
      consider(std::move(c));
      if (hit) break;
    }
  }
  total_.pairs += out.stats.pairs;
  total_.subdivisions += out.stats.subdivisions;
  total_.max_queue = std::max(total_.max_queue, out.stats.max_queue);
  if (hit) {
    out.kind = Verdict::Kind::AtLeast;
    out.threshold = lower;
    out.witness = witness_of(*hit);
    if (out.witness->key < lower) throw std::logic_error("witness ratio below the pair lower bound");
  } else {
    out.kind = Verdict::Kind::AtMost;
    out.threshold = upper;
  }
  return out;
}

Bounds CurveDilation::refine(Bounds b, const Rational& rel_err) {
  if (rel_err <= 0) throw std::invalid_argument("relative error must be positive");
  while (b.upper - b.lower > rel_err * b.lower) {
    Rational lo = (2 * b.lower + b.upper) / 3;
    Rational hi = (b.lower + 2 * b.upper) / 3;
    Verdict v = bisect(lo, hi);
    if (v.kind == Verdict::Kind::AtLeast)
      b.lower = std::max(lo, v.witness->key);
    else
      b.upper = hi;
  }
  return b;
}

Bounds CurveDilation::estimate(const Rational& rel_err) { return refine(initial_bounds(), rel_err); }

Verdict bisect_fixed_curve(const Curve& curve, const Rational& lower, const Rational& upper, const Metric& metric) {
  CurveDilation cd(curve, metric);
  return cd.bisect(lower, upper);
}

Bounds estimate_dilation(const Curve& curve, const Rational& rel_err, const Metric& metric) {
  CurveDilation cd(curve, metric);
  return cd.estimate(rel_err);
}

VertexScan vertex_scan(const Curve& curve, int order, const Metric& metric) {
  if (order < 1) throw std::invalid_argument("scan order must be positive");
  CurveFamily family = CurveFamily::from_curve(curve);
  FamilyJunctions junctions = family_junctions(family);
  PairEngine engine(family, metric, junctions);
  MomentTable moments(curve);
  const int d = curve.dim();
  const unsigned corners = 1u << d;

  VertexScan out;
  out.key = 0;
  double best = 0;
  std::optional<PairCandidate> best_pair;
  std::pair<unsigned, unsigned> best_corners{0, 0};
  PairQueue queue;
  std::uint64_t seq = 0;
  std::vector<int> limit(engine.frames().size());
  for (std::size_t f = 0; f < engine.frames().size(); ++f) {
    const Frame& fr = engine.frames()[f];
    limit[f] = fr.pattern >= 0 ? order : order - junctions.order[fr.junction];
    if (limit[f] < 1) continue;
    for (auto& p : engine.frame_seeds(static_cast<int>(f))) queue.push(Entry{std::move(p), seq++});
  }

  std::vector<Rational> ta(corners), tb(corners);
  std::vector<PairCandidate> children;
  while (!queue.empty()) {
    PairCandidate top = queue.top().pair;
    if (best_pair) {
      PairGeometry geo = engine.geometry(top);
      if (engine.upper_at_most(geo, Threshold{out.key, best})) break;
    }
    queue.pop();
    const int lim = limit[top.frame];
    if (top.a.depth < lim || top.b.depth < lim) {
      int which = top.a.depth <= top.b.depth ? 0 : 1;
      children.clear();
      engine.subdivide_node(top, which, children);
      for (auto& c : children) queue.push(Entry{std::move(c), seq++});
      continue;
    }
    ++out.leaves;
    for (unsigned m = 0; m < corners; ++m) {
      ta[m] = Rational(to_integer(top.a.time)) + corner_time(moments, top.a, vertex_cube(m, d));
      tb[m] = Rational(to_integer(top.b.time)) + corner_time(moments, top.b, vertex_cube(m, d));
    }
    for (unsigned u = 0; u < corners; ++u) {
      for (unsigned v = 0; v < corners; ++v) {
        std::array<std::int64_t, kMaxDim> diff{};
        for (int i = 0; i < d; ++i) {
          std::int64_t x = top.a.cube[i] + ((u >> i) & 1u);
          std::int64_t y = top.b.cube[i] + ((v >> i) & 1u);
          diff[i] = x > y ? x - y : y - x;
        }
        Rational dt = tb[v] - ta[u];
        if (dt <= 0) continue;
        double approx = metric.numerator_approx(diff.data()) / std::pow(dt.get_d(), metric.time_power());
        if (best_pair && approx < best * (1 - 1e-9)) continue;
        Rational key = Rational(metric.numerator(diff.data())) / rat_pow(dt, metric.time_power());
        if (!best_pair || key > out.key) {
          out.key = key;
          best = key.get_d();
          best_pair = top;
          best_corners = {u, v};
        }
      }
    }
  }
  if (!best_pair) throw std::logic_error("vertex scan found no pairs");
  const PairCandidate& p = *best_pair;
  Witness& w = out.witness;
  w.frame = engine.frame_name(p.frame);
  Integer scale = int_pow(curve.div(), p.a.depth);
  Integer tscale = int_pow(curve.genus(), p.a.depth);
  w.x.resize(d);
  w.y.resize(d);
  for (int i = 0; i < d; ++i) {
    w.x[i] = make_rational(to_integer(p.a.cube[i] + ((best_corners.first >> i) & 1u)), scale);
    w.y[i] = make_rational(to_integer(p.b.cube[i] + ((best_corners.second >> i) & 1u)), scale);
  }
  w.tx = (Rational(to_integer(p.a.time)) + corner_time(moments, p.a, vertex_cube(best_corners.first, d))) / tscale;
  w.ty = (Rational(to_integer(p.b.time)) + corner_time(moments, p.b, vertex_cube(best_corners.second, d))) / tscale;
  w.key = metric.key(w.x, w.y, w.ty - w.tx);
  if (w.key != out.key) throw std::logic_error("vertex scan witness disagrees with its key");
  return out;
}

Rational sampled_lower_bound(const Curve& curve, int order, const Metric& metric, std::uint64_t budget) {
  if (order < 0) throw std::invalid_argument("order must be non-negative");
  const int d = curve.dim();
  const unsigned corners = 1u << d;
  long double items = static_cast<long double>(corners) * std::pow(static_cast<long double>(curve.genus()), order);
  if (items * items / 2 > static_cast<long double>(budget))
    throw BudgetExceeded("vertex pair enumeration exceeds the budget");
  MomentTable moments(curve);
  Rational best = 0;
  double best_d = 0;
  for (int r = 0; r < curve.multiplicity(); ++r) {
    auto fr = fractions_of_order(curve, r, order);
    struct Item {
      std::array<std::int64_t, kMaxDim> point;
      Rational time;
      double time_d;
    };
    std::vector<Item> list;
    list.reserve(fr.size() * corners);
    for (std::size_t i = 0; i < fr.size(); ++i) {
      Node n;
      n.head = fr[i].spec.base;
      n.pattern = static_cast<std::int16_t>(fr[i].spec.pattern);
      for (unsigned m = 0; m < corners; ++m) {
        Item it;
        it.point = {};
        for (int a = 0; a < d; ++a) it.point[a] = fr[i].cube[a] + ((m >> a) & 1u);
        it.time = Rational(static_cast<long>(i)) + corner_time(moments, n, vertex_cube(m, d));
        it.time_d = it.time.get_d();
        list.push_back(std::move(it));
      }
    }
    std::sort(list.begin(), list.end(), [](const Item& x, const Item& y) { return x.time < y.time; });
    std::array<std::int64_t, kMaxDim> diff{};
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        double dt_d = list[j].time_d - list[i].time_d;
        for (int a = 0; a < d; ++a) {
          std::int64_t x = list[i].point[a] - list[j].point[a];
          diff[a] = x < 0 ? -x : x;
        }
        double num = metric.numerator_approx(diff.data());
        if (num == 0) continue;
        if (dt_d > 0 && num / std::pow(dt_d, metric.time_power()) < best_d * (1 - 1e-9)) continue;
        Rational dt = list[j].time - list[i].time;
        if (dt <= 0) continue;
        Rational key = Rational(metric.numerator(diff.data())) / rat_pow(dt, metric.time_power());
        if (key > best) {
          best = key;
          best_d = key.get_d();
        }
      }
    }
  }
  return best;
}

ExactResult exact_dilation_2d(const Curve& curve, const Rational& coarse_rel_err) {
  if (curve.dim() != 2 || curve.multiplicity() != 1)
    throw std::invalid_argument("exact dilation needs a plane monofractal");
  CurveDilation l2(curve, Metric{Norm::L2, 2});
  CurveDilation linf(curve, Metric{Norm::Linf, 2});
  Rational rel = coarse_rel_err;
  Bounds b2 = l2.estimate(rel), bi = linf.estimate(rel);
  const Rational finest = make_rational(1, 10'000'000);
  while (!(bi.upper < b2.lower)) {
    if (bi.lower >= b2.upper) throw PreconditionFailed("l_inf dilation is not smaller than l2 dilation");
    rel /= 10;
    if (rel < finest) throw PreconditionFailed("could not separate l_inf and l2 dilations");
    b2 = l2.refine(b2, rel);
    bi = linf.refine(bi, rel);
  }
  ExactResult out;
  out.l2_bounds = b2;
  out.linf_bounds = bi;
  out.depth = junction_closure(curve).depth;
  Rational ratio = b2.upper * b2.upper / (4 * (b2.lower - bi.upper));
  // largest e with g^e < ratio; the order bound is k < depth + 3 + log_g(ratio)
  int e = 0;
  const Rational g(curve.genus());
  Rational p = 1;
  if (p < ratio) {
    while (p * g < ratio) {
      p *= g;
      ++e;
    }
  } else {
    while (p >= ratio) {
      p /= g;
      --e;
    }
  }
  out.order = std::max(1, out.depth + 3 + e);
  VertexScan scan = vertex_scan(curve, out.order, Metric{Norm::L2, 2});
  out.value = scan.key;
  out.witness = scan.witness;
  if (out.value < b2.lower || out.value > b2.upper)
    throw std::logic_error("vertex scan value outside the certified bounds");
  out.linf_scan = vertex_scan(curve, out.order, Metric{Norm::Linf, 2}).key;
  return out;
}

}  // namespace peano
