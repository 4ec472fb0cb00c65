#include "peano/geometry.hpp"
#include "peano/metric.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace peano;

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(to_string(make_rational(6, -4)), "-3/2");
  EXPECT_EQ(to_string(make_rational(10, 5)), "2");
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("16.9913"), make_rational(169913, 10000));
  EXPECT_EQ(parse_rational("1e-4"), make_rational(1, 10000));
  EXPECT_EQ(parse_rational(" -3/6 "), make_rational(-1, 2));
  EXPECT_EQ(parse_rational("2.5e1"), make_rational(25));
  EXPECT_THROW(parse_rational("1/x"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, AdditionTwoWays) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 60);
  for (int i = 0; i < 200; ++i) {
    int a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rational lhs = make_rational(a, b) + make_rational(c, d);
    EXPECT_EQ(lhs, make_rational(a * d + c * b, b * d));
  }
}

TEST(Rational, MixedString) {
  EXPECT_EQ(to_mixed_string(make_rational(408, 73)), "5 43/73");
  EXPECT_EQ(to_mixed_string(make_rational(17, 3)), "5 2/3");
  EXPECT_EQ(to_mixed_string(make_rational(6)), "6");
}

class GroupTest : public ::testing::TestWithParam<int> {};

TEST_P(GroupTest, OrderAndAxioms) {
  const int d = GetParam();
  auto g = group_enumerate(d);
  std::size_t expected = 2;
  for (int i = 1; i <= d; ++i) expected *= 2 * i;
  ASSERT_EQ(g.size(), expected);
  ASSERT_TRUE(g.front().is_identity());
  std::set<BaseMap> all(g.begin(), g.end());
  ASSERT_EQ(all.size(), g.size());
  for (const auto& a : g) {
    EXPECT_TRUE(compose(a, a.inverse()).is_identity());
    EXPECT_TRUE(compose(a.inverse(), a).is_identity());
    for (const auto& b : g) EXPECT_TRUE(all.count(compose(a, b)));
  }
  std::mt19937 rng(d);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  for (int i = 0; i < 500; ++i) {
    const auto &a = g[pick(rng)], &b = g[pick(rng)], &c = g[pick(rng)];
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
  EXPECT_EQ(cube_isometries(d).size(), expected / 2);
}

INSTANTIATE_TEST_SUITE_P(Dims, GroupTest, ::testing::Values(1, 2, 3));

TEST(BaseMap, ComposeActsAsFunctionComposition) {
  auto g = group_enumerate(3);
  Point x = make_point({make_rational(1, 5), make_rational(2, 3), make_rational(7, 9)});
  for (const auto& a : g)
    for (const auto& b : g) EXPECT_EQ(compose(a, b).apply(x), a.apply(b.apply(x)));
}

TEST(BaseMap, CodeRoundTrip) {
  for (int d = 1; d <= 4; ++d)
    for (const auto& m : group_enumerate(d)) EXPECT_EQ(BaseMap::parse(m.code(), d), m) << m.code();
  EXPECT_THROW(BaseMap::parse("iI", 2), std::invalid_argument);
}

// Oracle: y[perm[a]] = flip ? 1 - x : x, worked out by hand.
TEST(BaseMap, ComposeExample) {
  BaseMap m = BaseMap::parse("KiJ", 3);
  EXPECT_EQ(compose(m, m).code(), "jKI");
  Point x = make_point({make_rational(1, 4), make_rational(1, 2), make_rational(1, 8)});
  Point y = m.apply(x);
  EXPECT_EQ(y, make_point({make_rational(1, 2), make_rational(7, 8), make_rational(3, 4)}));
}

TEST(BaseMap, CubeActionMatchesPointAction) {
  const int div = 3;
  for (const auto& m : group_enumerate(2)) {
    for (int x = 0; x < div; ++x)
      for (int y = 0; y < div; ++y) {
        Cube c = make_cube({x, y});
        Point center = make_point({make_rational(2 * x + 1, 2 * div), make_rational(2 * y + 1, 2 * div)});
        Cube img = m.apply_cube(c, div);
        Point expect = m.apply(center);
        EXPECT_EQ(make_rational(2 * img[0] + 1, 2 * div), expect[0]);
        EXPECT_EQ(make_rational(2 * img[1] + 1, 2 * div), expect[1]);
      }
  }
}

TEST(ChainCode, ParseAndEmit) {
  auto cubes = parse_chain_code("jiJ", 2);
  ASSERT_EQ(cubes.size(), 4u);
  EXPECT_EQ(cubes[0], make_cube({0, 0}));
  EXPECT_EQ(cubes[1], make_cube({0, 1}));
  EXPECT_EQ(cubes[2], make_cube({1, 1}));
  EXPECT_EQ(cubes[3], make_cube({1, 0}));
  EXPECT_EQ(emit_chain_code(cubes, 2), "jiJ");
  // anchored so that every axis starts at zero
  auto back = parse_chain_code("Ij", 2);
  EXPECT_EQ(back[0], make_cube({1, 0}));
  EXPECT_THROW(emit_chain_code({make_cube({0, 0}), make_cube({1, 1})}, 2), std::invalid_argument);
}

TEST(AffineMap, FixedPoint) {
  // x -> (1 + x) / 2 fixes 1; x -> (1 - x) / 2 fixes 1/3.
  AffineMap f = AffineMap::fraction(make_cube({1}), 2, BaseMap::identity(1));
  EXPECT_EQ(f.fixed_point(), make_point({Rational(1)}));
  AffineMap g = AffineMap::fraction(make_cube({0}), 2, BaseMap::parse("I", 1));
  EXPECT_EQ(g.fixed_point(), make_point({make_rational(1, 3)}));
}

TEST(Metric, KeyConvention) {
  Point a = make_point({Rational(0), Rational(0)});
  Point b = make_point({Rational(1), Rational(2)});
  EXPECT_EQ(Metric({Norm::L2, 2}).key(a, b, make_rational(1, 2)), Rational(10));
  EXPECT_EQ(Metric({Norm::Linf, 2}).key(a, b, make_rational(1, 2)), Rational(8));
  EXPECT_EQ(Metric({Norm::L1, 2}).key(a, b, make_rational(1, 2)), Rational(18));
  Point c = make_point({Rational(0), Rational(0), Rational(0)});
  Point e = make_point({Rational(1), Rational(1), Rational(1)});
  // l2 in odd dimension is squared: (3^{3/2} / 1)^2 = 27
  EXPECT_EQ(Metric({Norm::L2, 3}).key(c, e, Rational(1)), Rational(27));
  EXPECT_NEAR(Metric({Norm::L2, 3}).value_from_key(Rational(27)), std::sqrt(27.0), 1e-12);
}
