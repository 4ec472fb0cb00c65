#include "peano/generators.hpp"

#include "path_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace peano {

namespace detail {

PointUniverse::PointUniverse(int dim_, int div_, const std::vector<Point>& seeds)
    : dim(dim_), div(div_), isos(cube_isometries(dim_)) {
  // generators of the isometry group: a flip, a swap and a cyclic shift
  std::vector<BaseMap> gens;
  {
    std::vector<int> id_axes(dim);
    for (int a = 0; a < dim; ++a) id_axes[a] = a;
    std::vector<bool> flip0(dim, false), none(dim, false);
    flip0[0] = true;
    gens.push_back(BaseMap::from_parts(id_axes, flip0, false));
    if (dim >= 2) {
      auto swap = id_axes, cycle = id_axes;
      std::swap(swap[0], swap[1]);
      for (int a = 0; a < dim; ++a) cycle[a] = (a + 1) % dim;
      gens.push_back(BaseMap::from_parts(swap, none, false));
      gens.push_back(BaseMap::from_parts(cycle, none, false));
    }
  }
  std::vector<Point> queue;
  for (const auto& p : seeds) {
    if (static_cast<int>(p.size()) != dim) throw DimensionMismatch("gate point of wrong dimension");
    for (const auto& v : p)
      if (v < 0 || v > 1) throw std::invalid_argument("gate point outside the unit cube");
    if (ids.emplace(p, 0).second) queue.push_back(p);
  }
  while (!queue.empty()) {
    Point p = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : gens) {
      Point q = g.apply(p);
      if (ids.emplace(q, 0).second) queue.push_back(std::move(q));
    }
  }
  for (auto& [pt, id] : ids) {
    id = static_cast<int>(points.size());
    points.push_back(pt);
  }
  std::vector<std::vector<int>> gen_perm(gens.size(), std::vector<int>(points.size()));
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < points.size(); ++i) gen_perm[g][i] = ids.at(gens[g].apply(points[i]));
  // rows of the other isometries by composing permutations
  std::map<BaseMap, std::size_t> index;
  for (std::size_t s = 0; s < isos.size(); ++s) index.emplace(isos[s], s);
  iso.assign(isos.size(), {});
  std::vector<std::size_t> order{0};
  iso[0].resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) iso[0][i] = static_cast<int>(i);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t s = order[head];
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const std::size_t t = index.at(compose(gens[g], isos[s]));
      if (!iso[t].empty()) continue;
      iso[t].resize(points.size());
      for (std::size_t i = 0; i < points.size(); ++i) iso[t][i] = gen_perm[g][iso[s][i]];
      order.push_back(t);
    }
  }
  if (order.size() != isos.size()) throw std::logic_error("isometry generators do not span the group");

  genus = 1;
  for (int a = 0; a < dim; ++a) genus *= div;
  for (int i = 0; i < genus; ++i) {
    Cube c;
    for (int a = 0, t = i; a < dim; ++a, t /= div) c[a] = t % div;
    cubes.push_back(c);
  }
  std::vector<int> delta(dim, -1);
  while (true) {
    if (std::any_of(delta.begin(), delta.end(), [](int v) { return v != 0; })) {
      Cube d;
      for (int a = 0; a < dim; ++a) d[a] = delta[a];
      steps.push_back(d);
    }
    int a = 0;
    while (a < dim && delta[a] == 1) delta[a++] = -1;
    if (a == dim) break;
    ++delta[a];
  }
  // a point on the face shared with the neighbour is seen from it with
  // the crossed coordinates switched between 0 and 1, again a point of the orbit
  through.assign(points.size(), std::vector<int>(steps.size(), -1));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t s = 0; s < steps.size(); ++s) {
      Point q = points[i];
      bool ok = true;
      for (int a = 0; a < dim && ok; ++a) {
        if (steps[s][a] == 1) ok = q[a] == 1;
        else if (steps[s][a] == -1) ok = q[a] == 0;
        q[a] -= steps[s][a];
      }
      if (ok) through[i][s] = ids.at(q);
    }
}

std::vector<std::pair<int, int>> PointUniverse::locate(const Point& p) const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < genus; ++i) {
    Point local(dim);
    bool ok = true;
    for (int a = 0; a < dim && ok; ++a) {
      local[a] = p[a] * div - cubes[i][a];
      ok = local[a] >= 0 && local[a] <= 1;
    }
    if (!ok) continue;
    int id = find(local);
    if (id >= 0) out.emplace_back(i, id);
  }
  return out;
}

PathSpace::PathSpace(const PointUniverse& u, std::vector<std::pair<int, int>> pairs, const PrototypeFilters& filters)
    : u_(u), pairs_(std::move(pairs)) {
  for (auto [e, x] : pairs_)
    for (const auto& row : u.iso) {
      types_.emplace_back(row[e], row[x]);
      types_.emplace_back(row[x], row[e]);
    }
  std::sort(types_.begin(), types_.end());
  types_.erase(std::unique(types_.begin(), types_.end()), types_.end());
  for (int s = 0; s < static_cast<int>(u.steps.size()); ++s) {
    int nonzero = 0;
    for (int a = 0; a < u.dim; ++a) nonzero += u.steps[s][a] != 0;
    if (!filters.no_diagonal_steps || nonzero == 1) steps_.push_back(s);
  }
  visited_.assign(u.genus, 0);
}

void PathSpace::prepare(int r) {
  const auto [e, x] = pairs_.at(r);
  starts_ = u_.locate(u_.points[e]);
  lasts_ = u_.locate(u_.points[x]);
  stab_.clear();
  for (std::size_t s = 0; s < u_.iso.size(); ++s) {
    const auto& row = u_.iso[s];
    if (row[e] == e && row[x] == x) stab_.emplace_back(static_cast<int>(s), false);
    if (row[e] == x && row[x] == e) stab_.emplace_back(static_cast<int>(s), true);
  }
  std::fill(visited_.begin(), visited_.end(), 0);
  mask_ = 0;
  dead_.clear();
  path_.clear();
  stop_ = false;
}

bool PathSpace::canonical_path() const {
  Path image(path_.size());
  for (auto [s, rev] : stab_) {
    const BaseMap& b = u_.isos[s];
    const auto& row = u_.iso[s];
    for (std::size_t k = 0; k < path_.size(); ++k) {
      const Step& st = rev ? path_[path_.size() - 1 - k] : path_[k];
      image[k] = Step{u_.cube_index(b.apply_cube(u_.cubes[st.cube], u_.div)), row[rev ? st.exit : st.entry],
                      row[rev ? st.entry : st.exit]};
    }
    if (image < path_) return false;
  }
  return true;
}

bool PathSpace::connected_rest() const {
  int start = -1, remaining = 0;
  for (int i = 0; i < u_.genus; ++i)
    if (!visited_[i]) {
      ++remaining;
      if (start < 0) start = i;
    }
  if (remaining <= 1) return true;
  std::vector<char> seen(u_.genus, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int s : steps_) {
      Cube n = u_.cubes[i];
      for (int a = 0; a < u_.dim; ++a) n[a] += u_.steps[s][a];
      int j = u_.cube_index(n);
      if (j < 0 || visited_[j] || seen[j]) continue;
      seen[j] = 1;
      ++count;
      stack.push_back(j);
    }
  }
  return count == remaining;
}

}  // namespace detail

namespace {

std::vector<Point> gate_points(const GateConfiguration& gc) {
  std::vector<Point> out;
  for (const auto& p : gc.pairs) {
    out.push_back(p.entrance);
    out.push_back(p.exit);
  }
  return out;
}

std::vector<std::pair<int, int>> pair_ids(const detail::PointUniverse& u, const GateConfiguration& gc) {
  std::vector<std::pair<int, int>> out;
  for (const auto& p : gc.pairs) out.emplace_back(u.find(p.entrance), u.find(p.exit));
  return out;
}

}  // namespace

void for_each_pointed_prototype(const GateConfiguration& gc, int dim, int div, const PrototypeFilters& filters,
                                const std::function<bool(const PointedPrototype&)>& visit) {
  detail::PointUniverse universe(dim, div, gate_points(gc));
  detail::PathSpace space(universe, pair_ids(universe, gc), filters);
  const int m = static_cast<int>(gc.pairs.size());

  auto to_proto = [&](const detail::PathSpace::Path& path, std::vector<Cube>& cubes, std::vector<GatePair>& local) {
    cubes.clear();
    local.clear();
    for (const auto& st : path) {
      cubes.push_back(universe.cubes[st.cube]);
      local.push_back(GatePair{universe.points[st.entry], universe.points[st.exit]});
    }
  };

  PointedPrototype pp;
  pp.dim = dim;
  pp.div = div;
  pp.gates = gc.pairs;
  pp.protos.resize(m);
  pp.local_gates.resize(m);

  if (m == 1) {
    space.paths(0, [&](const detail::PathSpace::Path& path) {
      to_proto(path, pp.protos[0], pp.local_gates[0]);
      return visit(pp);
    });
    return;
  }
  // several patterns: per-pattern path lists, then their product
  std::vector<std::vector<detail::PathSpace::Path>> lists(m);
  for (int r = 0; r < m; ++r) {
    space.paths(r, [&](const detail::PathSpace::Path& path) {
      lists[r].push_back(path);
      return true;
    });
    if (lists[r].empty()) return;
  }
  std::vector<std::size_t> idx(m, 0);
  auto same_pair = [&](int r) { return r > 0 && gc.pairs[r] == gc.pairs[r - 1]; };
  auto reset_from = [&](int r) {
    for (int q = r; q < m; ++q) idx[q] = same_pair(q) ? idx[q - 1] : 0;
  };
  reset_from(0);
  while (true) {
    for (int r = 0; r < m; ++r) to_proto(lists[r][idx[r]], pp.protos[r], pp.local_gates[r]);
    if (!visit(pp)) return;
    int r = m - 1;
    while (r >= 0 && idx[r] + 1 == lists[r].size()) --r;
    if (r < 0) return;
    ++idx[r];
    reset_from(r + 1);
  }
}

std::vector<PointedPrototype> enumerate_pointed_prototypes(const GateConfiguration& gc, int dim, int div,
                                                           const PrototypeFilters& filters) {
  std::vector<PointedPrototype> out;
  for_each_pointed_prototype(gc, dim, div, filters, [&](const PointedPrototype& pp) {
    out.push_back(pp);
    return true;
  });
  return out;
}

bool has_pointed_prototype(const GateConfiguration& gc, int dim, int div, const PrototypeFilters& filters) {
  detail::PointUniverse universe(dim, div, gate_points(gc));
  detail::PathSpace space(universe, pair_ids(universe, gc), filters);
  for (int r = 0; r < static_cast<int>(gc.pairs.size()); ++r)
    if (!space.exists(r)) return false;
  return true;
}

Complexity complexity_estimate(int dim, int mult, int genus, double k, double h_order) {
  if (dim <= 0 || mult <= 0 || genus <= 0 || k <= 0 || h_order <= 0)
    throw std::invalid_argument("complexity inputs must be positive");
  Complexity c;
  c.prototype_bits = mult * (genus - 1) * std::log2(k);
  c.equation_bits = mult * genus * (std::log2(mult) + std::log2(h_order));
  return c;
}

}  // namespace peano
