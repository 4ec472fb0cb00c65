#include "peano/generators.hpp"
#include "peano/render.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace peano;
using peano::testing::fixture;

namespace {

// Classic index-to-cell conversion for the Hilbert curve on a 2^n grid.
std::pair<int, int> d2xy(int side, int d) {
  int x = 0, y = 0;
  for (int s = 1, t = d; s < side; s *= 2, t /= 4) {
    const int rx = 1 & (t / 2);
    const int ry = 1 & (t ^ rx);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
    x += s * rx;
    y += s * ry;
  }
  return {x, y};
}

}  // namespace

TEST(Io, CurveRoundTrip) {
  for (auto name : {"hilbert", "meurthe", "ye", "spring", "comp2_4d"}) {
    Curve c = fixture(name);
    EXPECT_EQ(curve_from_json(curve_to_json(c)), c) << name;
    EXPECT_EQ(curve_from_json(Json::parse(curve_to_json(c, false).dump())), c) << name;
  }
  auto path = std::filesystem::temp_directory_path() / "peano_io_roundtrip.json";
  save_curve(fixture("ye"), path);
  EXPECT_EQ(load_curve(path), fixture("ye"));
  std::filesystem::remove(path);
}

TEST(Io, PointsAndGates) {
  Point p = make_point({make_rational(1, 3), Rational(0), Rational(1)});
  EXPECT_EQ(point_from_json(point_to_json(p)), p);
  EXPECT_EQ(point_from_json(Json::parse(R"(["1/3", 0, "1"])")), p);
  auto gs = gates(fixture("comp2_4d"));
  EXPECT_EQ(gates_from_json(gates_to_json(gs)), gs);
  EXPECT_THROW(point_from_json(Json::parse("[0.5, 1]")), FormatError);
}

TEST(Io, FormatErrors) {
  EXPECT_THROW(curve_from_json(Json::parse(R"({"dim":2,"div":2})")), FormatError);
  EXPECT_THROW(curve_from_json(Json::parse(R"({"dim":2,"div":2,"patterns":[{"proto":[[0,0,0]],"specs":[null]}]})")),
               FormatError);
  EXPECT_THROW(curve_from_json(Json::parse(R"({"dim":"two","div":2,"patterns":[]})")), FormatError);
  EXPECT_THROW(load_curve("/nonexistent/curve.json"), FormatError);
  EXPECT_THROW(prototype_from_json(Json::parse(R"({"dim":2,"div":2,"gates":[],"patterns":[]})")), FormatError);
}

TEST(Io, PrototypeRoundTrip) {
  for (const auto& gc : enumerate_gate_configurations(2, 1, 3, false))
    for (const auto& pp : enumerate_pointed_prototypes(gc, 2, 3)) {
      EXPECT_EQ(prototype_from_json(prototype_to_json(pp)), pp);
      EXPECT_EQ(prototype_from_json(Json::parse(prototype_to_json(pp).dump())), pp);
    }
  PointedPrototype bi = pointed_prototype_of(fixture("spring"));
  EXPECT_EQ(prototype_from_json(prototype_to_json(bi)), bi);
}

TEST(Render, FractionCenters) {
  EXPECT_EQ(fraction_centers(fixture("ye"), 0, 1).size(), 25u);
  EXPECT_EQ(fraction_centers(fixture("ye"), 0, 2).size(), 625u);
  EXPECT_EQ(fraction_centers(fixture("spring"), 0, 2).size(), 64u);
}

// Order-3 Hilbert cells against the classic conversion, up to a square
// isometry applied to the whole drawing.
TEST(Render, HilbertMatchesClassic) {
  const int side = 8;
  auto centers = fraction_centers(fixture("hilbert"), 0, 3);
  ASSERT_EQ(centers.size(), 64u);
  bool matched = false;
  for (const auto& s : cube_isometries(2)) {
    bool ok = true;
    for (int d = 0; d < 64 && ok; ++d) {
      auto [x, y] = d2xy(side, d);
      Cube img = s.apply_cube(make_cube({x, y}), side);
      ok = centers[d][0] == 2 * img[0] + 1 && centers[d][1] == 2 * img[1] + 1;
    }
    matched = matched || ok;
  }
  EXPECT_TRUE(matched);
}

TEST(Render, Outputs) {
  std::string svg = render_svg(fixture("meurthe"), 2);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  Json doc = Json::parse(render_polyline_json(fixture("spring"), 1));
  EXPECT_EQ(doc["dim"], 3);
  EXPECT_EQ(doc["points"].size(), 8u);
  EXPECT_EQ(doc["points"][0].size(), 3u);
}
