#pragma once

#include "peano/io.hpp"

#include <string>

namespace peano::testing {

inline Curve fixture(const std::string& name) {
  return load_curve(std::string(PEANO_FIXTURES) + "/" + name + ".json");
}

// Independent vertex-pair maximum over order-k fractions. Each vertex of a
// fraction is a vertex of the sub-pattern's cube, so its time is the
// fraction's start plus the sub-pattern's vertex moment, scaled.
inline Rational brute_vertex_maximum(const Curve& curve, int order, const Metric& metric) {
  Rational best = 0;
  MomentTable moments(curve);
  Integer scale = 1, g_pow = 1;
  for (int i = 0; i < order; ++i) {
    scale *= curve.div();
    g_pow *= curve.genus();
  }
  for (int r = 0; r < curve.multiplicity(); ++r) {
    auto fr = fractions_of_order(curve, r, order);
    struct Vertex {
      Point x;
      Rational t;
    };
    std::vector<Vertex> vs;
    const int d = curve.dim();
    for (std::size_t k = 0; k < fr.size(); ++k) {
      const BaseMap inv = fr[k].spec.base.cube_map().inverse();
      for (int mask = 0; mask < (1 << d); ++mask) {
        Point local;
        Cube v;
        for (int a = 0; a < d; ++a) {
          v[a] = (mask >> a) & 1;
          local.push_back(Rational(v[a]));
        }
        Point u = inv.apply(local);
        Cube uc;
        for (int a = 0; a < d; ++a) uc[a] = u[a] == 0 ? 0 : 1;
        Rational m = moments.vertex(fr[k].spec.pattern, uc);
        if (fr[k].spec.base.time_reversed()) m = 1 - m;
        Point x;
        for (int a = 0; a < d; ++a) x.push_back(make_rational(Integer(fr[k].cube[a] + v[a]), scale));
        vs.push_back({x, (Rational(static_cast<long>(k)) + m) / Rational(g_pow)});
      }
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        Rational dt = vs[i].t - vs[j].t;
        if (dt < 0) dt = -dt;
        if (dt == 0) continue;
        Rational key = metric.key(vs[i].x, vs[j].x, dt);
        if (key > best) best = key;
      }
  }
  return best;
}

}  // namespace peano::testing

#include "peano/generators.hpp"

#include <random>

namespace peano::testing {

// Curves with random specs over the pointed prototypes of small classes:
// plane 2x2 and 3x3 (genus 4 and 9) and 3D 2x2x2 monofractals (genus 8).
inline std::vector<Curve> random_curves(int count, std::uint32_t seed) {
  std::vector<PointedPrototype> pool;
  auto add = [&](int dim, int div) {
    for (const auto& gc : enumerate_gate_configurations(dim, 1, div, false))
      for (auto& pp : enumerate_pointed_prototypes(gc, dim, div)) pool.push_back(std::move(pp));
  };
  add(2, 2);
  add(2, 3);
  add(3, 2);
  std::mt19937 rng(seed);
  std::vector<Curve> out;
  while (static_cast<int>(out.size()) < count) {
    const auto& pp = pool[rng() % pool.size()];
    CurveFamily fam = family_of(pp);
    std::vector<int> choice;
    for (int r = 0; r < fam.multiplicity(); ++r)
      for (int k = 0; k < fam.genus(); ++k) choice.push_back(static_cast<int>(rng() % fam.options(r, k).size()));
    out.push_back(fam.instantiate(choice));
  }
  return out;
}

}  // namespace peano::testing
