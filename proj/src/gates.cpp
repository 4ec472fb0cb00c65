#include "peano/generators.hpp"

#include "path_space.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace peano {

std::string to_string(const GateConfiguration& gc) {
  std::string out;
  for (const auto& p : gc.pairs) {
    if (!out.empty()) out += "; ";
    out += to_string(p.entrance) + " -> " + to_string(p.exit);
  }
  return out;
}

GatePair canonical_gate_pair(const GatePair& pair, int dim) {
  GatePair best = pair;
  for (const auto& b : cube_isometries(dim)) {
    GatePair img{b.apply(pair.entrance), b.apply(pair.exit)};
    if (std::tie(img.entrance, img.exit) < std::tie(best.entrance, best.exit)) best = img;
    std::swap(img.entrance, img.exit);
    if (std::tie(img.entrance, img.exit) < std::tie(best.entrance, best.exit)) best = img;
  }
  return best;
}

GateConfiguration canonical(const GateConfiguration& gc, int dim) {
  GateConfiguration out;
  for (const auto& p : gc.pairs) out.pairs.push_back(canonical_gate_pair(p, dim));
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const GatePair& a, const GatePair& b) { return std::tie(a.entrance, a.exit) < std::tie(b.entrance, b.exit); });
  return out;
}

namespace {

int boundary_coords(const Point& p) {
  int n = 0;
  for (const auto& v : p) n += v == 0 || v == 1;
  return n;
}

}  // namespace

std::vector<Point> gate_candidates(int dim, int div, int word_depth, bool facet_only) {
  if (word_depth < 1) throw std::invalid_argument("word depth must be at least 1");
  if (dim < 1 || dim > kMaxDim || div < 2) throw std::invalid_argument("bad dimension or division");
  std::set<Point> found;
  const auto isos = cube_isometries(dim);
  // a word of w fraction maps is x -> (c + b(x)) / div^w with c in the div^w grid
  for (int w = 1; w <= word_depth; ++w) {
    int side = 1;
    for (int i = 0; i < w; ++i) side *= div;
    std::int64_t count = 1;
    for (int a = 0; a < dim; ++a) count *= side;
    for (std::int64_t i = 0; i < count; ++i) {
      Cube c;
      std::int64_t t = i;
      for (int a = 0; a < dim; ++a) {
        c[a] = static_cast<int>(t % side);
        t /= side;
      }
      for (const auto& b : isos) {
        Point p = AffineMap::fraction(c, side, b).fixed_point();
        int n = boundary_coords(p);
        if (facet_only ? n == 1 : n >= 1) found.insert(std::move(p));
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<GateConfiguration> enumerate_gate_configurations(int dim, int mult, int div, bool facet_only,
                                                             int word_depth, const PrototypeFilters& filters) {
  if (mult < 1) throw std::invalid_argument("multiplicity must be positive");
  const detail::PointUniverse u(dim, div, gate_candidates(dim, div, word_depth, facet_only));
  const auto& pts = u.points;
  const auto& iso = u.iso;
  const int n = static_cast<int>(pts.size());
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) {
    cls[i] = i;
    for (const auto& row : iso) cls[i] = std::min(cls[i], row[i]);
  }

  // point classes a gate can be derived from: the gate seen from each cube containing it
  std::vector<std::vector<int>> src(n);
  for (int i = 0; i < n; ++i)
    for (auto [c, id] : u.locate(pts[i])) src[i].push_back(cls[id]);

  // canonical pairs (e, x): e is the smallest point of its class and x is
  // minimal among the images fixing the pair's first point
  std::vector<std::pair<int, int>> pairs;
  for (int e = 0; e < n; ++e) {
    if (cls[e] != e || src[e].empty()) continue;
    for (int x = 0; x < n; ++x) {
      if (x == e || cls[x] < e || src[x].empty()) continue;
      bool minimal = true;
      for (std::size_t s = 0; s < iso.size() && minimal; ++s) {
        if (iso[s][e] == e && iso[s][x] < x) minimal = false;
        if (iso[s][x] == e && iso[s][e] < x) minimal = false;
      }
      if (minimal) pairs.emplace_back(e, x);
    }
  }

  auto derivable = [&](const std::vector<std::size_t>& chosen) {
    auto covered = [&](int p) {
      for (int c : src[p])
        for (auto i : chosen)
          if (cls[pairs[i].first] == c || cls[pairs[i].second] == c) return true;
      return false;
    };
    for (auto i : chosen)
      if (!covered(pairs[i].first) || !covered(pairs[i].second)) return false;
    return true;
  };

  // patterns that have a path using their own gate pair alone, filled lazily
  std::vector<signed char> alone_cache(pairs.size(), -1);
  auto alone = [&](std::size_t i) {
    if (alone_cache[i] < 0) alone_cache[i] = detail::PathSpace(u, {pairs[i]}, filters).exists(0);
    return alone_cache[i] == 1;
  };

  std::vector<GateConfiguration> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == mult) {
      if (!derivable(chosen)) return;
      std::vector<std::pair<int, int>> ids;
      for (auto i : chosen) ids.push_back(pairs[i]);
      detail::PathSpace space(u, ids, filters);
      for (int r = 0; r < mult; ++r)
        if (!alone(chosen[r]) && !space.exists(r)) return;
      GateConfiguration gc;
      for (auto [e, x] : ids) gc.pairs.push_back(GatePair{pts[e], pts[x]});
      out.push_back(std::move(gc));
      return;
    }
    for (std::size_t i = from; i < pairs.size(); ++i) {
      chosen.push_back(i);
      rec(i);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

PlaneGates classify_plane_gates(const GatePair& pair) {
  if (pair.entrance.size() != 2 || pair.exit.size() != 2) throw DimensionMismatch("plane gates expected");
  auto is_vertex = [](const Point& p) { return boundary_coords(p) == 2; };
  const Rational half(1, 2);
  auto is_mid = [&](const Point& p) { return boundary_coords(p) == 1 && (p[0] == half || p[1] == half); };
  const Point &e = pair.entrance, &x = pair.exit;
  if (is_vertex(e) && is_vertex(x)) {
    int differ = (e[0] != x[0]) + (e[1] != x[1]);
    return differ == 1 ? PlaneGates::Side : PlaneGates::Diagonal;
  }
  auto median = [&](const Point& v, const Point& m) {
    if (!is_vertex(v) || !is_mid(m)) return false;
    // the midpoint lies on a side not containing the vertex
    for (int a = 0; a < 2; ++a)
      if ((m[a] == 0 || m[a] == 1) && m[a] != v[a]) return true;
    return false;
  };
  if (median(e, x) || median(x, e)) return PlaneGates::Median;
  return PlaneGates::Other;
}

std::string to_string(PlaneGates kind) {
  switch (kind) {
    case PlaneGates::Side: return "side";
    case PlaneGates::Diagonal: return "diagonal";
    case PlaneGates::Median: return "median";
    case PlaneGates::Other: return "other";
  }
  return "other";
}

}  // namespace peano
