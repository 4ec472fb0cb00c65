#include "peano/io.hpp"

#include <fstream>

namespace peano {

Json point_to_json(const Point& p) {
  Json out = Json::array();
  for (const auto& x : p) out.push_back(to_string(x));
  return out;
}

Point point_from_json(const Json& j) {
  Point p;
  for (const auto& x : j) {
    if (x.is_string())
      p.push_back(parse_rational(x.get<std::string>()));
    else if (x.is_number_integer())
      p.push_back(make_rational(x.get<std::int64_t>()));
    else
      throw FormatError("point coordinates must be strings like \"1/3\" or integers");
  }
  return p;
}

Json gates_to_json(const std::vector<GatePair>& gates) {
  Json out = Json::array();
  for (const auto& g : gates) out.push_back({{"entrance", point_to_json(g.entrance)}, {"exit", point_to_json(g.exit)}});
  return out;
}

std::vector<GatePair> gates_from_json(const Json& j) {
  std::vector<GatePair> out;
  for (const auto& g : j) out.push_back({point_from_json(g.at("entrance")), point_from_json(g.at("exit"))});
  return out;
}

Curve curve_from_json(const Json& doc) {
  try {
    const int dim = doc.at("dim").get<int>();
    const int div = doc.at("div").get<int>();
    std::vector<Pattern> patterns;
    for (const auto& pj : doc.at("patterns")) {
      Pattern p;
      const auto& proto = pj.at("proto");
      if (proto.is_string()) {
        p.proto = parse_chain_code(proto.get<std::string>(), dim);
      } else {
        for (const auto& c : proto) {
          if (static_cast<int>(c.size()) != dim) throw FormatError("prototype cube has wrong dimension");
          Cube cube;
          for (int a = 0; a < dim; ++a) cube[a] = c[a].get<int>();
          p.proto.push_back(cube);
        }
      }
      for (const auto& sj : pj.at("specs")) {
        if (sj.is_null()) {
          p.specs.emplace_back();
          continue;
        }
        std::string code = sj.at("orient").get<std::string>();
        bool reversed = sj.value("reversed", false);
        BaseMap base = BaseMap::parse(code, dim);
        if (reversed) base = base.reversed_time();
        p.specs.push_back(Spec{base, sj.value("pattern", 0)});
      }
      patterns.push_back(std::move(p));
    }
    std::vector<GatePair> declared;
    if (doc.contains("gates")) declared = gates_from_json(doc.at("gates"));
    return Curve(dim, div, std::move(patterns), std::move(declared));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad curve document: ") + e.what());
  }
}

Json curve_to_json(const Curve& curve, bool with_gates) {
  Json doc;
  doc["dim"] = curve.dim();
  doc["div"] = curve.div();
  doc["patterns"] = Json::array();
  for (const auto& p : curve.patterns()) {
    Json pj;
    try {
      pj["proto"] = emit_chain_code(p.proto, curve.dim());
    } catch (const std::invalid_argument&) {
      Json cubes = Json::array();
      for (const auto& c : p.proto) {
        Json cj = Json::array();
        for (int a = 0; a < curve.dim(); ++a) cj.push_back(c[a]);
        cubes.push_back(cj);
      }
      pj["proto"] = cubes;
    }
    pj["specs"] = Json::array();
    for (const auto& s : p.specs) {
      if (!s) {
        pj["specs"].push_back(nullptr);
        continue;
      }
      pj["specs"].push_back(
          {{"orient", s->base.cube_map().code()}, {"pattern", s->pattern}, {"reversed", s->base.time_reversed()}});
    }
    doc["patterns"].push_back(pj);
  }
  if (with_gates) {
    try {
      doc["gates"] = gates_to_json(gates(curve));
    } catch (const CurveNotDefined&) {
    }
  }
  return doc;
}

Curve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return curve_from_json(doc);
}

void save_curve(const Curve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << curve_to_json(curve).dump(2) << "\n";
}

Json witness_to_json(const Witness& w) {
  return {{"frame", w.frame},
          {"points", {point_to_json(w.x), point_to_json(w.y)}},
          {"times", {to_string(w.tx), to_string(w.ty)}},
          {"key", to_string(w.key)}};
}

Json bounds_to_json(const Bounds& b, const Metric& metric) {
  return {{"L", to_string(b.lower)},
          {"U", to_string(b.upper)},
          {"L_value", metric.value_from_key(b.lower)},
          {"U_value", metric.value_from_key(b.upper)},
          {"key_power", metric.key_power()}};
}

namespace {

Json cubes_to_json(const std::vector<Cube>& cubes, int dim) {
  try {
    return emit_chain_code(cubes, dim);
  } catch (const std::invalid_argument&) {
  }
  Json out = Json::array();
  for (const auto& c : cubes) {
    Json cj = Json::array();
    for (int a = 0; a < dim; ++a) cj.push_back(c[a]);
    out.push_back(cj);
  }
  return out;
}

std::vector<Cube> cubes_from_json(const Json& j, int dim) {
  if (j.is_string()) return parse_chain_code(j.get<std::string>(), dim);
  std::vector<Cube> out;
  for (const auto& c : j) {
    if (static_cast<int>(c.size()) != dim) throw FormatError("prototype cube has wrong dimension");
    Cube cube;
    for (int a = 0; a < dim; ++a) cube[a] = c[a].get<int>();
    out.push_back(cube);
  }
  return out;
}

}  // namespace

Json prototype_to_json(const PointedPrototype& pp) {
  Json doc{{"dim", pp.dim}, {"div", pp.div}, {"gates", gates_to_json(pp.gates)}};
  doc["patterns"] = Json::array();
  for (int r = 0; r < pp.multiplicity(); ++r)
    doc["patterns"].push_back({{"proto", cubes_to_json(pp.protos[r], pp.dim)},
                               {"local_gates", gates_to_json(pp.local_gates[r])}});
  return doc;
}

PointedPrototype prototype_from_json(const Json& doc) {
  try {
    PointedPrototype pp;
    pp.dim = doc.at("dim").get<int>();
    pp.div = doc.at("div").get<int>();
    pp.gates = gates_from_json(doc.at("gates"));
    for (const auto& pj : doc.at("patterns")) {
      pp.protos.push_back(cubes_from_json(pj.at("proto"), pp.dim));
      pp.local_gates.push_back(gates_from_json(pj.at("local_gates")));
      if (pp.local_gates.back().size() != pp.protos.back().size())
        throw FormatError("one local gate pair per cube expected");
    }
    if (pp.protos.empty() || pp.gates.size() != pp.protos.size())
      throw FormatError("one gate pair per pattern expected");
    return pp;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad prototype document: ") + e.what());
  }
}

}  // namespace peano
