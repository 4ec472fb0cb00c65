#include "peano/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace peano {

CurveFamily::CurveFamily(int dim, int div, std::vector<std::vector<Cube>> protos, std::vector<GatePair> gates,
                         std::vector<std::vector<std::vector<Spec>>> options)
    : dim_(dim), div_(div), protos_(std::move(protos)), gates_(std::move(gates)) {
  genus_ = 1;
  for (int i = 0; i < dim; ++i) genus_ *= div;
  if (options.size() != protos_.size()) throw std::invalid_argument("options must be given for every pattern");
  options_.resize(options.size());
  for (std::size_t r = 0; r < options.size(); ++r) {
    if (static_cast<int>(protos_[r].size()) != genus_ || static_cast<int>(options[r].size()) != genus_)
      throw std::invalid_argument("family pattern must have genus fractions");
    options_[r].resize(genus_);
    for (int k = 0; k < genus_; ++k) {
      if (options[r][k].empty())
        throw std::invalid_argument("fraction " + std::to_string(k) + " of pattern " + std::to_string(r) +
                                    " has no admissible spec");
      for (const auto& s : options[r][k]) options_[r][k].push_back(Option{s, 0});
    }
  }
  number_variables();
}

void CurveFamily::number_variables() {
  var_group_.clear();
  var_option_.clear();
  for (int r = 0; r < multiplicity(); ++r) {
    for (int k = 0; k < genus_; ++k) {
      auto& opts = options_[r][k];
      for (std::size_t i = 0; i < opts.size(); ++i) {
        if (opts.size() == 1) {
          opts[i].var = 0;
          continue;
        }
        var_group_.push_back(group(r, k));
        var_option_.push_back(static_cast<int>(i));
        opts[i].var = static_cast<int>(var_group_.size());
      }
    }
  }
}

CurveFamily CurveFamily::from_curve(const Curve& curve) {
  if (!curve.fully_defined()) throw CurveNotDefined("family from a curve needs every fraction defined");
  std::vector<std::vector<Cube>> protos;
  std::vector<std::vector<std::vector<Spec>>> options;
  for (int r = 0; r < curve.multiplicity(); ++r) {
    protos.push_back(curve.pattern(r).proto);
    std::vector<std::vector<Spec>> per;
    for (const auto& s : curve.pattern(r).specs) per.push_back({*s});
    options.push_back(std::move(per));
  }
  return CurveFamily(curve.dim(), curve.div(), std::move(protos), peano::gates(curve), std::move(options));
}

CurveFamily CurveFamily::restricted(int r, int k, const Spec& spec) const {
  CurveFamily out = *this;
  out.options_[r][k] = {Option{spec, 0}};
  out.number_variables();
  return out;
}

Curve CurveFamily::instantiate(const std::vector<int>& choice) const {
  std::vector<Pattern> patterns;
  for (int r = 0; r < multiplicity(); ++r) {
    Pattern p;
    p.proto = protos_[r];
    for (int k = 0; k < genus_; ++k) p.specs.push_back(options_[r][k].at(choice.at(group(r, k))).spec);
    patterns.push_back(std::move(p));
  }
  return Curve(dim_, div_, std::move(patterns));
}

Curve CurveFamily::decode(const std::vector<bool>& model) const {
  std::vector<int> choice(multiplicity() * genus_, 0);
  for (int r = 0; r < multiplicity(); ++r) {
    for (int k = 0; k < genus_; ++k) {
      const auto& opts = options_[r][k];
      if (opts.size() == 1) continue;
      int picked = -1;
      for (std::size_t i = 0; i < opts.size(); ++i)
        if (model.at(opts[i].var)) {
          if (picked >= 0) throw std::logic_error("model selects two specs for one fraction");
          picked = static_cast<int>(i);
        }
      if (picked < 0) throw std::logic_error("model selects no spec for a fraction");
      choice[group(r, k)] = picked;
    }
  }
  return instantiate(choice);
}

double CurveFamily::curve_count() const {
  double n = 1;
  for (const auto& per : options_)
    for (const auto& opts : per) n *= static_cast<double>(opts.size());
  return n;
}

std::size_t CurveFamily::curve_count_log2() const {
  return static_cast<std::size_t>(std::llround(std::log2(curve_count())));
}

FamilyJunctions family_junctions(const CurveFamily& family, int max_depth) {
  FamilyJunctions out;
  std::map<Junction, int> index;
  const int g = family.genus();
  const int s = family.div();
  auto add = [&](const Junction& j, int order, JunctionTrigger trig, std::vector<int>& fresh) {
    auto [it, inserted] = index.emplace(j, static_cast<int>(out.junctions.size()));
    if (inserted) {
      out.junctions.push_back(j);
      out.order.push_back(order);
      out.triggers.emplace_back();
      fresh.push_back(it->second);
    }
    out.triggers[it->second].push_back(std::move(trig));
  };
  auto vars_of = [](int v1, int v2) {
    std::vector<int> v;
    if (v1) v.push_back(v1);
    if (v2 && v2 != v1) v.push_back(v2);
    std::sort(v.begin(), v.end());
    return v;
  };

  std::vector<int> level;
  for (int r = 0; r < family.multiplicity(); ++r) {
    for (int k = 0; k + 1 < g; ++k) {
      Cube delta;
      for (int a = 0; a < family.dim(); ++a) delta[a] = family.cube(r, k + 1)[a] - family.cube(r, k)[a];
      for (const auto& o1 : family.options(r, k))
        for (const auto& o2 : family.options(r, k + 1))
          add(canonical(Junction{o1.spec, o2.spec, delta}), 1, JunctionTrigger{-1, vars_of(o1.var, o2.var)}, level);
    }
  }
  out.depth = 1;
  for (int order = 2; !level.empty(); ++order) {
    std::vector<int> next;
    for (int ji : level) {
      const Junction j = out.junctions[ji];
      const BaseMap& b1 = j.spec1.base;
      const BaseMap& b2 = j.spec2.base;
      int i1 = time_index(g - 1, b1.time_reversed(), g);
      int i2 = time_index(0, b2.time_reversed(), g);
      Cube c1 = b1.apply_cube(family.cube(j.spec1.pattern, i1), s);
      Cube c2 = b2.apply_cube(family.cube(j.spec2.pattern, i2), s);
      Cube delta;
      for (int a = 0; a < family.dim(); ++a) delta[a] = s * j.delta[a] + c2[a] - c1[a];
      bool same_group = family.group(j.spec1.pattern, i1) == family.group(j.spec2.pattern, i2);
      const auto& opts1 = family.options(j.spec1.pattern, i1);
      const auto& opts2 = family.options(j.spec2.pattern, i2);
      for (std::size_t x = 0; x < opts1.size(); ++x) {
        for (std::size_t y = 0; y < opts2.size(); ++y) {
          if (same_group && x != y) continue;
          Junction dj{Spec{b1 * opts1[x].spec.base, opts1[x].spec.pattern},
                      Spec{b2 * opts2[y].spec.base, opts2[y].spec.pattern}, delta};
          add(canonical(dj), order, JunctionTrigger{ji, vars_of(opts1[x].var, opts2[y].var)}, next);
        }
      }
    }
    if (!next.empty()) {
      out.depth = order;
      if (order > max_depth)
        throw ClosureTooDeep("junction closure still growing at order " + std::to_string(order));
    }
    level = std::move(next);
  }

  out.certain.assign(out.junctions.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < out.junctions.size(); ++i) {
      if (out.certain[i]) continue;
      for (const auto& t : out.triggers[i]) {
        if (t.vars.empty() && (t.parent < 0 || out.certain[t.parent])) {
          out.certain[i] = true;
          changed = true;
          break;
        }
      }
    }
  }
  return out;
}

namespace {

const HistoryPtr& empty_history() {
  static const HistoryPtr empty = std::make_shared<const History>();
  return empty;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

}  // namespace

PairEngine::PairEngine(const CurveFamily& family, const Metric& metric, const FamilyJunctions& junctions)
    : family_(&family), metric_(metric), junctions_(&junctions) {
  if (metric.dim != family.dim()) throw DimensionMismatch("metric dimension differs from curve");
  for (int r = 0; r < family.multiplicity(); ++r) frames_.push_back(Frame{r, -1});
  for (std::size_t j = 0; j < junctions.junctions.size(); ++j) frames_.push_back(Frame{-1, static_cast<int>(j)});
  // times reach 2 * genus^depth and coordinates 3 * div^depth
  const long double limit = static_cast<long double>(std::numeric_limits<std::int64_t>::max()) / 4;
  long double t = 2;
  while (t * family.genus() < limit) {
    t *= family.genus();
    ++time_limit_depth_;
  }
}

int PairEngine::frame_guard(int frame) const {
  const Frame& f = frames_.at(frame);
  if (f.junction < 0 || junctions_->certain[f.junction]) return 0;
  return family_->variable_count() + 1 + f.junction;
}

std::string PairEngine::frame_name(int frame) const {
  const Frame& f = frames_.at(frame);
  if (f.pattern >= 0) return "pattern " + std::to_string(f.pattern);
  return "junction " + to_string(junctions_->junctions[f.junction], family_->dim());
}

void PairEngine::resolve_single(Node& n) const {
  if (n.frac < 0) return;
  const auto& opts = family_->options(n.pattern, n.frac);
  if (opts.size() != 1) return;
  n.head = n.head * opts[0].spec.base;
  n.pattern = static_cast<std::int16_t>(opts[0].spec.pattern);
  n.frac = -1;
}

Node PairEngine::make_child(const Node& parent, const Spec& spec, int j) const {
  const int g = family_->genus();
  const int s = family_->div();
  int i = time_index(j, spec.base.time_reversed(), g);
  Cube q = spec.base.apply_cube(family_->cube(spec.pattern, i), s);
  Node c;
  for (int a = 0; a < family_->dim(); ++a) c.cube[a] = parent.cube[a] * s + q[a];
  c.time = parent.time * g + j;
  c.head = spec.base;
  c.pattern = static_cast<std::int16_t>(spec.pattern);
  c.frac = static_cast<std::int16_t>(i);
  c.depth = static_cast<std::int8_t>(parent.depth + 1);
  resolve_single(c);
  return c;
}

std::vector<PairCandidate> PairEngine::frame_seeds(int frame) const {
  const Frame& f = frames_.at(frame);
  const int g = family_->genus();
  std::vector<PairCandidate> out;
  if (f.pattern >= 0) {
    Node root;
    root.head = BaseMap::identity(family_->dim());
    root.pattern = static_cast<std::int16_t>(f.pattern);
    std::vector<Node> kids;
    for (int j = 0; j < g; ++j) kids.push_back(make_child(root, Spec{root.head, f.pattern}, j));
    for (int i = 0; i < g; ++i)
      for (int j = i + 2; j < g; ++j) out.push_back(PairCandidate{kids[i], kids[j], frame, empty_history(), 0});
  } else {
    const Junction& jn = junctions_->junctions[f.junction];
    Node first, second;
    first.head = jn.spec1.base;
    first.pattern = static_cast<std::int16_t>(jn.spec1.pattern);
    second.head = jn.spec2.base;
    second.pattern = static_cast<std::int16_t>(jn.spec2.pattern);
    for (int a = 0; a < family_->dim(); ++a) second.cube[a] = jn.delta[a];
    second.time = 1;
    std::vector<Node> ka, kb;
    for (int j = 0; j < g; ++j) {
      ka.push_back(make_child(first, jn.spec1, j));
      kb.push_back(make_child(second, jn.spec2, j));
    }
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        if (i != g - 1 || j != 0) out.push_back(PairCandidate{ka[i], kb[j], frame, empty_history(), 0});
  }
  for (auto& p : out) p.upper = geometry(p).upper;
  return out;
}

std::vector<PairCandidate> PairEngine::seeds() const {
  std::vector<PairCandidate> out;
  for (int f = 0; f < static_cast<int>(frames_.size()); ++f) {
    auto part = frame_seeds(f);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

PairGeometry PairEngine::geometry(const PairCandidate& pair) const {
  const int d = family_->dim();
  const Node& a = pair.a;
  const Node& b = pair.b;
  const int depth = std::max(a.depth, b.depth);
  const std::int64_t sa = ipow(family_->div(), depth - a.depth);
  const std::int64_t sb = ipow(family_->div(), depth - b.depth);
  const std::int64_t ga = ipow(family_->genus(), depth - a.depth);
  const std::int64_t gb = ipow(family_->genus(), depth - b.depth);
  PairGeometry geo;
  for (int i = 0; i < d; ++i) {
    std::int64_t alo = a.cube[i] * sa, ahi = alo + sa;
    std::int64_t blo = b.cube[i] * sb, bhi = blo + sb;
    geo.diff[i] = std::max(bhi - alo, ahi - blo);
  }
  geo.gap = b.time * gb - (a.time + 1) * ga;
  geo.span = (b.time + 1) * gb - a.time * ga;
  geo.numerator = metric_.numerator_approx(geo.diff.data());
  const int e = metric_.time_power();
  double gap = static_cast<double>(geo.gap), span = static_cast<double>(geo.span);
  geo.upper = geo.gap > 0 ? geo.numerator / std::pow(gap, e) : std::numeric_limits<double>::infinity();
  geo.lower = geo.numerator / std::pow(span, e);
  return geo;
}

namespace {

constexpr double kSlack = 1e-9;

Integer time_pow(std::int64_t t, int e) { return int_pow(to_integer(t), e); }

}  // namespace

bool PairEngine::upper_at_most(const PairGeometry& geo, const Threshold& t) const {
  if (geo.gap <= 0) return false;
  if (geo.upper < t.approx * (1 - kSlack)) return true;
  if (geo.upper > t.approx * (1 + kSlack)) return false;
  Integer lhs = metric_.numerator(geo.diff.data()) * t.key.get_den();
  Integer rhs = t.key.get_num() * time_pow(geo.gap, metric_.time_power());
  return lhs <= rhs;
}

bool PairEngine::lower_at_least(const PairGeometry& geo, const Threshold& t) const {
  if (geo.lower > t.approx * (1 + kSlack)) return true;
  if (geo.lower < t.approx * (1 - kSlack)) return false;
  Integer lhs = metric_.numerator(geo.diff.data()) * t.key.get_den();
  Integer rhs = t.key.get_num() * time_pow(geo.span, metric_.time_power());
  return lhs >= rhs;
}

Rational PairEngine::upper_key(const PairGeometry& geo) const {
  if (geo.gap <= 0) throw std::domain_error("pair with zero time gap has no finite upper bound");
  return make_rational(metric_.numerator(geo.diff.data()), time_pow(geo.gap, metric_.time_power()));
}

Rational PairEngine::lower_key(const PairGeometry& geo) const {
  return make_rational(metric_.numerator(geo.diff.data()), time_pow(geo.span, metric_.time_power()));
}

void PairEngine::subdivide(const PairCandidate& pair, std::vector<PairCandidate>& out) const {
  subdivide_node(pair, pair.a.depth <= pair.b.depth ? 0 : 1, out);
}

void PairEngine::subdivide_node(const PairCandidate& pair, int which, std::vector<PairCandidate>& out) const {
  const Node& node = which == 0 ? pair.a : pair.b;
  if (node.depth + 1 > time_limit_depth_)
    throw DepthOverflow("subdivision depth exceeds the integer coordinate range");
  const int g = family_->genus();

  auto emit = [&](const Spec& spec, const HistoryPtr& hist) {
    for (int j = 0; j < g; ++j) {
      PairCandidate child{pair.a, pair.b, pair.frame, hist, 0};
      (which == 0 ? child.a : child.b) = make_child(node, spec, j);
      child.upper = geometry(child).upper;
      out.push_back(std::move(child));
    }
  };

  if (!node.pending()) {
    emit(spec_of(node), pair.history);
    return;
  }
  const int grp = family_->group(node.pattern, node.frac);
  const auto& opts = family_->options(node.pattern, node.frac);
  const History& hist = *pair.history;
  auto it = std::lower_bound(hist.begin(), hist.end(), std::make_pair(grp, -1));
  if (it != hist.end() && it->first == grp) {
    const auto& o = opts[it->second];
    emit(Spec{node.head * o.spec.base, o.spec.pattern}, pair.history);
    return;
  }
  for (std::size_t i = 0; i < opts.size(); ++i) {
    auto extended = std::make_shared<History>(hist);
    extended->insert(extended->begin() + (it - hist.begin()), {grp, static_cast<int>(i)});
    emit(Spec{node.head * opts[i].spec.base, opts[i].spec.pattern}, extended);
  }
}

}  // namespace peano
