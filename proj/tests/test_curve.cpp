#include "peano/junction.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace peano;
using peano::testing::fixture;

namespace {

const char* kFixtures[] = {"hilbert", "meurthe", "ye", "spring", "comp2_4d"};

Point pt(std::initializer_list<Rational> c) { return make_point(c); }
Rational q(long n, long d = 1) { return make_rational(n, d); }

// |p - corner|_inf <= side, coordinatewise inside the closed box.
bool in_box(const Point& p, const Point& corner, const Rational& side) {
  for (std::size_t a = 0; a < p.size(); ++a)
    if (p[a] < corner[a] || p[a] > corner[a] + side) return false;
  return true;
}

}  // namespace

TEST(Curve, FixturesValidate) {
  for (auto name : kFixtures) {
    Curve c = fixture(name);
    EXPECT_TRUE(c.fully_defined()) << name;
    EXPECT_TRUE(validate(c).empty()) << name;
  }
}

TEST(Curve, KnownGates) {
  EXPECT_EQ(gates(fixture("hilbert"))[0], (GatePair{pt({0, 0}), pt({1, 0})}));
  EXPECT_EQ(gates(fixture("ye"))[0], (GatePair{pt({0, 0}), pt({0, 1})}));
  EXPECT_EQ(gates(fixture("meurthe"))[0], (GatePair{pt({0, 0}), pt({1, 1})}));
  EXPECT_EQ(gates(fixture("comp2_4d"))[0],
            (GatePair{pt({0, q(1, 3), q(1, 3), q(1, 3)}), pt({q(1, 3), 0, q(1, 3), q(2, 3)})}));
  EXPECT_TRUE(is_facet_gated(fixture("spring")));
  EXPECT_TRUE(is_facet_gated(fixture("comp2_4d")));
  EXPECT_FALSE(is_facet_gated(fixture("hilbert")));
}

// Entrance of pattern r is the image of the referenced pattern's entrance
// (exit when reversed) under the first fraction; the same for exits.
TEST(Curve, GateFixedPointEquations) {
  for (auto name : kFixtures) {
    Curve c = fixture(name);
    auto gs = gates(c);
    for (int r = 0; r < c.multiplicity(); ++r) {
      const int g = c.genus();
      const Spec& first = *c.spec(r, 0);
      const Spec& last = *c.spec(r, g - 1);
      AffineMap f0 = AffineMap::fraction(c.cube(r, 0), c.div(), first.base);
      AffineMap f1 = AffineMap::fraction(c.cube(r, g - 1), c.div(), last.base);
      const GatePair& sub0 = gs[first.pattern];
      const GatePair& sub1 = gs[last.pattern];
      EXPECT_EQ(gs[r].entrance, f0.apply(first.base.time_reversed() ? sub0.exit : sub0.entrance)) << name;
      EXPECT_EQ(gs[r].exit, f1.apply(last.base.time_reversed() ? sub1.entrance : sub1.exit)) << name;
    }
  }
}

// The entrance lies in the first fraction of every order.
TEST(Curve, EntranceInsideFirstFractions) {
  for (auto name : kFixtures) {
    Curve c = fixture(name);
    auto gs = gates(c);
    Curve rev = c.reverse_time();
    Rational side = 1;
    for (int n = 1; n <= 5; ++n) {
      side /= c.div();
      for (int r = 0; r < c.multiplicity(); ++r) {
        EXPECT_TRUE(in_box(gs[r].entrance, locate(c, r, 0, n), side)) << name << " order " << n;
        EXPECT_TRUE(in_box(gs[r].exit, locate(rev, r, 0, n), side)) << name << " order " << n;
      }
    }
  }
}

TEST(Curve, VertexMomentsHitVertices) {
  for (auto name : {"hilbert", "meurthe", "ye", "spring"}) {
    Curve c = fixture(name);
    for (int r = 0; r < c.multiplicity(); ++r) {
      for (const auto& [v, m] : vertex_moments(c, r)) {
        Point vp;
        for (int a = 0; a < c.dim(); ++a) vp.push_back(Rational(v[a]));
        const int depth = c.dim() == 2 ? 6 : 4;
        Rational side = 1;
        for (int i = 0; i < depth; ++i) side /= c.div();
        // the vertex is within one fraction side of the point reached at its moment
        Point corner = locate(c, r, m.first, depth);
        bool near = true;
        for (int a = 0; a < c.dim(); ++a) {
          Rational diff = vp[a] - corner[a];
          if (diff < -side || diff > 2 * side) near = false;
        }
        EXPECT_TRUE(near) << name << " vertex " << to_string(v, c.dim()) << " t=" << to_string(m.first);
      }
    }
  }
}

TEST(Curve, HilbertVertexMoments) {
  auto vm = vertex_moments(fixture("hilbert"), 0);
  EXPECT_EQ(vm.at(make_cube({0, 0})).first, 0);
  EXPECT_EQ(vm.at(make_cube({1, 0})).first, 1);
  EXPECT_EQ(vm.at(make_cube({0, 1})).first, q(1, 3));
  EXPECT_EQ(vm.at(make_cube({1, 1})).first, q(2, 3));
}

TEST(Curve, IsometryAndReversalKeepValidity) {
  for (auto name : kFixtures) {
    Curve c = fixture(name);
    EXPECT_EQ(c.reverse_time().reverse_time(), c);
    for (const auto& s : cube_isometries(c.dim())) {
      Curve t = c.apply_isometry(s);
      ASSERT_TRUE(validate(t).empty()) << name;
      auto g0 = gates(c), g1 = gates(t);
      for (int r = 0; r < c.multiplicity(); ++r) {
        EXPECT_EQ(g1[r].entrance, s.apply(g0[r].entrance));
        EXPECT_EQ(g1[r].exit, s.apply(g0[r].exit));
      }
    }
  }
}

TEST(Curve, FractionsTileTheCube) {
  Curve ye = fixture("ye");
  for (int order = 1; order <= 2; ++order) {
    auto fr = fractions_of_order(ye, 0, order);
    int side = order == 1 ? 5 : 25;
    ASSERT_EQ(static_cast<int>(fr.size()), side * side);
    std::set<Cube> cells;
    for (std::size_t i = 0; i < fr.size(); ++i) {
      cells.insert(fr[i].cube);
      if (i > 0) {
        int dist = std::abs(fr[i].cube[0] - fr[i - 1].cube[0]) + std::abs(fr[i].cube[1] - fr[i - 1].cube[1]);
        EXPECT_EQ(dist, 1);  // YE is facet-continuous
      }
    }
    EXPECT_EQ(static_cast<int>(cells.size()), side * side);
  }
}

TEST(Curve, JunctionDepth) {
  EXPECT_EQ(junction_closure(fixture("ye")).depth, 1);
  EXPECT_EQ(junction_closure(fixture("meurthe")).depth, 1);
  for (auto name : kFixtures) {
    auto jc = junction_closure(fixture(name));
    for (const auto& j : jc.junctions) EXPECT_EQ(canonical(j), j);
  }
}

TEST(Curve, InvalidCurvesAreReported) {
  Curve h = fixture("hilbert");
  // turning the first fraction breaks the entrance/exit matching
  Curve bad = h.with_spec(0, 1, Spec{BaseMap::parse("JI", 2), 0});
  EXPECT_FALSE(validate(bad).empty());
  EXPECT_THROW(curve_from_json(Json::parse(R"({"dim":2,"div":2})")), FormatError);
}
