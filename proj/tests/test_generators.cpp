#include "peano/generators.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace peano;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
Point pt(std::initializer_list<Rational> c) { return make_point(c); }

bool on_boundary(const Point& p) {
  for (const auto& x : p)
    if (x == 0 || x == 1) return true;
  return false;
}

// Fixed point of x -> (c + A x + t) / s, by Cramer's rule on (sI - A) x = c + t.
Point solve_fixed_2d(const Cube& c, int s, const BaseMap& b) {
  Point o = b.apply(pt({0, 0}));
  Point e0 = b.apply(pt({1, 0}));
  Point e1 = b.apply(pt({0, 1}));
  Rational a00 = s - (e0[0] - o[0]), a01 = -(e1[0] - o[0]);
  Rational a10 = -(e0[1] - o[1]), a11 = s - (e1[1] - o[1]);
  Rational r0 = c[0] + o[0], r1 = c[1] + o[1];
  Rational det = a00 * a11 - a01 * a10;
  return {(r0 * a11 - a01 * r1) / det, (a00 * r1 - r0 * a10) / det};
}

Point to_global(const Cube& cell, int s, const Point& local) {
  Point g;
  for (std::size_t a = 0; a < local.size(); ++a) g.push_back((cell[a] + local[a]) / s);
  return g;
}

// Brute force over cell orderings and local gate images for plane
// monofractals, up to the isometries preserving the gate pair (those
// swapping entrance and exit act together with reversal).
std::size_t brute_prototype_count(const GatePair& gp, int s, bool facet_steps) {
  const auto isos = cube_isometries(2);
  std::vector<std::pair<Point, Point>> local;
  for (const auto& b : isos) {
    local.emplace_back(b.apply(gp.entrance), b.apply(gp.exit));
    local.emplace_back(b.apply(gp.exit), b.apply(gp.entrance));
  }
  struct Step {
    Cube cell;
    Point in, out;
  };
  std::vector<std::vector<Step>> found;
  std::vector<Step> path;
  std::set<Cube> used;
  const int n = s * s;
  std::function<void(const Point&)> rec = [&](const Point& at) {
    if (static_cast<int>(path.size()) == n) {
      if (at == gp.exit) found.push_back(path);
      return;
    }
    for (int x = 0; x < s; ++x)
      for (int y = 0; y < s; ++y) {
        Cube cell = make_cube({x, y});
        if (used.count(cell)) continue;
        if (facet_steps && !path.empty()) {
          const Cube& prev = path.back().cell;
          if (std::abs(prev[0] - x) + std::abs(prev[1] - y) != 1) continue;
        }
        std::set<Point> outs;
        for (const auto& [e, x2] : local) {
          if (to_global(cell, s, e) != at) continue;
          Point out = to_global(cell, s, x2);
          if (!outs.insert(out).second) continue;
          used.insert(cell);
          path.push_back({cell, at, out});
          rec(out);
          path.pop_back();
          used.erase(cell);
        }
      }
  };
  rec(gp.entrance);

  std::set<std::vector<Point>> classes;
  for (const auto& p : found) {
    std::optional<std::vector<Point>> best;
    for (const auto& b : isos) {
      const bool keep = b.apply(gp.entrance) == gp.entrance && b.apply(gp.exit) == gp.exit;
      const bool swap = b.apply(gp.entrance) == gp.exit && b.apply(gp.exit) == gp.entrance;
      if (!keep && !swap) continue;
      std::vector<Point> img;
      for (const auto& st : p) {
        Point center = to_global(st.cell, s, pt({q(1, 2), q(1, 2)}));
        img.push_back(b.apply(center));
        img.push_back(b.apply(swap ? st.out : st.in));
      }
      if (swap) {
        // reverse the sequence of (center, entrance) records
        std::vector<Point> rev;
        for (std::size_t k = img.size(); k >= 2; k -= 2) {
          rev.push_back(img[k - 2]);
          rev.push_back(img[k - 1]);
        }
        img = rev;
      }
      if (!best || img < *best) best = img;
    }
    classes.insert(*best);
  }
  return classes.size();
}

}  // namespace

TEST(Gates, DepthOneCandidatesAreFixedPoints) {
  const int s = 2;
  std::set<Point> expected;
  for (int x = 0; x < s; ++x)
    for (int y = 0; y < s; ++y)
      for (const auto& b : cube_isometries(2)) {
        Point f = solve_fixed_2d(make_cube({x, y}), s, b);
        EXPECT_EQ(AffineMap::fraction(make_cube({x, y}), s, b).apply(f), f);
        if (on_boundary(f)) expected.insert(f);
      }
  auto got = gate_candidates(2, s, 1, false);
  EXPECT_EQ(std::set<Point>(got.begin(), got.end()), expected);
  EXPECT_EQ(std::set<Point>(got.begin(), got.end()).size(), got.size());
}

TEST(Gates, DepthTwoCandidatesAreWordFixedPoints) {
  const int s = 3;
  std::vector<AffineMap> maps;
  for (int x = 0; x < s; ++x)
    for (int y = 0; y < s; ++y)
      for (const auto& b : cube_isometries(2)) maps.push_back(AffineMap::fraction(make_cube({x, y}), s, b));
  auto shallow = gate_candidates(2, s, 1, false);
  auto deep = gate_candidates(2, s, 2, false);
  for (const auto& p : shallow) EXPECT_NE(std::find(deep.begin(), deep.end(), p), deep.end());
  for (const auto& p : deep) {
    ASSERT_TRUE(on_boundary(p));
    bool fixed = false;
    for (std::size_t i = 0; i < maps.size() && !fixed; ++i) {
      Point once = maps[i].apply(p);
      if (once == p) fixed = true;
      for (std::size_t j = 0; j < maps.size() && !fixed; ++j) fixed = maps[j].apply(once) == p;
    }
    EXPECT_TRUE(fixed) << to_string(p);
  }
}

TEST(Gates, FacetOnly) {
  for (const auto& p : gate_candidates(3, 2, 2, true)) {
    int extreme = 0;
    for (const auto& x : p) extreme += (x == 0 || x == 1);
    EXPECT_EQ(extreme, 1) << to_string(p);
  }
}

TEST(Gates, Classification) {
  EXPECT_EQ(classify_plane_gates({pt({0, 0}), pt({1, 0})}), PlaneGates::Side);
  EXPECT_EQ(classify_plane_gates({pt({0, 1}), pt({0, 0})}), PlaneGates::Side);
  EXPECT_EQ(classify_plane_gates({pt({0, 0}), pt({1, 1})}), PlaneGates::Diagonal);
  EXPECT_EQ(classify_plane_gates({pt({0, 0}), pt({q(1, 2), 1})}), PlaneGates::Median);
  EXPECT_EQ(classify_plane_gates({pt({1, q(1, 2)}), pt({0, 1})}), PlaneGates::Median);
  EXPECT_EQ(classify_plane_gates({pt({0, q(1, 2)}), pt({1, q(1, 2)})}), PlaneGates::Other);
  EXPECT_EQ(classify_plane_gates({pt({0, q(1, 3)}), pt({1, q(2, 3)})}), PlaneGates::Other);
  EXPECT_EQ(to_string(PlaneGates::Diagonal), "diagonal");
}

TEST(Gates, CanonicalIsInvariant) {
  GateConfiguration gc{{{pt({q(1, 3), 0}), pt({1, q(2, 3)})}, {pt({0, 0}), pt({1, 1})}}};
  GateConfiguration c = canonical(gc, 2);
  EXPECT_EQ(canonical(c, 2), c);
  for (const auto& b : cube_isometries(2)) {
    GateConfiguration img;
    for (const auto& p : gc.pairs) img.pairs.push_back({b.apply(p.exit), b.apply(p.entrance)});
    std::swap(img.pairs[0], img.pairs[1]);
    EXPECT_EQ(canonical(img, 2), c);
  }
}

TEST(Gates, ConfigurationCounts) {
  EXPECT_EQ(enumerate_gate_configurations(2, 1, 2, false).size(), 1u);
  EXPECT_EQ(enumerate_gate_configurations(2, 1, 3, false).size(), 2u);
  PrototypeFilters facet;
  facet.no_diagonal_steps = true;
  auto five = enumerate_gate_configurations(2, 1, 5, false, 2, facet);
  ASSERT_EQ(five.size(), 3u);
  std::set<PlaneGates> kinds;
  for (const auto& gc : five) kinds.insert(classify_plane_gates(gc.pairs[0]));
  EXPECT_EQ(kinds, (std::set<PlaneGates>{PlaneGates::Side, PlaneGates::Diagonal, PlaneGates::Median}));
  EXPECT_EQ(enumerate_gate_configurations(4, 1, 2, true).size(), 3u);
}

TEST(Prototypes, PlaneCountsMatchBruteForce) {
  for (int s : {2, 3})
    for (bool facet_steps : {false, true}) {
      PrototypeFilters f;
      f.no_diagonal_steps = facet_steps;
      for (const auto& gc : enumerate_gate_configurations(2, 1, s, false, 2, f)) {
        std::size_t got = enumerate_pointed_prototypes(gc, 2, s, f).size();
        EXPECT_EQ(got, brute_prototype_count(gc.pairs[0], s, facet_steps))
            << to_string(gc) << " s=" << s << " facet=" << facet_steps;
      }
    }
}

TEST(Prototypes, ThreeByThreeCounts) {
  std::map<PlaneGates, std::size_t> counts;
  for (const auto& gc : enumerate_gate_configurations(2, 1, 3, false))
    counts[classify_plane_gates(gc.pairs[0])] += enumerate_pointed_prototypes(gc, 2, 3).size();
  EXPECT_EQ(counts[PlaneGates::Side], 5u);
  EXPECT_EQ(counts[PlaneGates::Diagonal], 2u);
}

// Checkerboard parity: 36 facet steps alternate colours, but opposite
// corner cells share a colour. With diagonal steps the even-sum corners
// still form a graph (one edge per cell) with four odd vertices, so no
// even grid admits diagonal gates at all.
TEST(Prototypes, DiagonalSixBySixFacetContinuousIsEmpty) {
  PrototypeFilters f;
  f.no_diagonal_steps = true;
  GateConfiguration gc{{{pt({0, 0}), pt({1, 1})}}};
  EXPECT_FALSE(has_pointed_prototype(gc, 2, 6, f));
  EXPECT_FALSE(has_pointed_prototype(gc, 2, 6));
  EXPECT_FALSE(has_pointed_prototype(gc, 2, 4));
  EXPECT_TRUE(has_pointed_prototype(gc, 2, 5, f));
}

TEST(Prototypes, EveryPrototypeYieldsValidCurves) {
  auto check = [](int dim, int mult, int div) {
    for (const auto& gc : enumerate_gate_configurations(dim, mult, div, false))
      for (const auto& pp : enumerate_pointed_prototypes(gc, dim, div)) {
        CurveFamily fam = family_of(pp);
        std::vector<int> first(static_cast<std::size_t>(fam.multiplicity() * fam.genus()), 0);
        Curve c = fam.instantiate(first);
        ASSERT_TRUE(validate(c).empty()) << to_string(gc);
        EXPECT_EQ(gates(c), pp.gates);
      }
  };
  check(2, 1, 2);
  check(2, 1, 3);
  check(3, 1, 2);
  check(2, 2, 2);
}

TEST(Complexity, Estimates) {
  Complexity c = complexity_estimate(2, 1, 25, 4, 2);
  EXPECT_DOUBLE_EQ(c.prototype_bits, 48);
  EXPECT_DOUBLE_EQ(c.equation_bits, 25);
  EXPECT_NEAR(complexity_estimate(2, 1, 25, 6, 2).prototype_bits, 24 * std::log2(6.0), 1e-12);
  EXPECT_NEAR(complexity_estimate(2, 1, 25, 6, 2).prototype_bits, 62.04, 0.01);
  // m g (log2 m + log2 |H|)
  EXPECT_DOUBLE_EQ(complexity_estimate(3, 2, 8, 5, 4).equation_bits, 2 * 8 * (1 + 2));
}
