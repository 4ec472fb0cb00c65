// peano: command line front end for the dilation library.
#include "peano/chains.hpp"
#include "peano/generators.hpp"
#include "peano/io.hpp"
#include "peano/render.hpp"
#include "peano/search.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace peano;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CLI11 config reader/writer for JSON files. Nested objects name
// subcommands, e.g. {"search": {"dim": 2, "div": 3}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return dump(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json doc;
    try {
      input >> doc;
    } catch (const Json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    flatten(doc, {}, items);
    return items;
  }

 private:
  static Json dump(const CLI::App* app, bool default_also) {
    Json out = Json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      const std::string name = opt->get_lnames().front();
      if (name == "help" || name == "config") continue;
      if (opt->count() > 0) {
        const auto& res = opt->results();
        if (opt->get_type_size() == 0)
          out[name] = true;
        else if (res.size() == 1)
          out[name] = res.front();
        else
          out[name] = res;
      } else if (default_also && !opt->get_default_str().empty()) {
        out[name] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({}))
      if (sub->parsed()) out[sub->get_name()] = dump(sub, default_also);
    return out;
  }

  static void flatten(const Json& j, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& items) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object()) {
        auto next = parents;
        next.push_back(it.key());
        flatten(*it, next, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      if (it->is_array())
        for (const auto& v : *it) item.inputs.push_back(text(v));
      else
        item.inputs.push_back(text(*it));
      items.push_back(std::move(item));
    }
  }
};

std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw UsageError(std::string(name) + " must be a non-negative integer");
  }
}

int env_jobs(int flag) {
  if (flag > 0) return flag;
  const char* v = std::getenv("PEANO_JOBS");
  return v && *v ? std::max(1, std::atoi(v)) : 1;
}

Rational rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": not a rational number: " + text);
  }
}

Metric metric_arg(const std::string& p, int dim) {
  try {
    return Metric{parse_norm(p), dim};
  } catch (const std::exception&) {
    throw UsageError("metric must be 1, 2 or inf");
  }
}

void write_json(const Json& j, const std::string& path) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8f", v);
  return buf;
}

Json stats_to_json(const SearchStats& s) {
  return {{"bisect_steps", s.bisect_steps},
          {"pairs", s.pairs},
          {"banned_pairs", s.banned_pairs},
          {"solver_calls", s.solver_calls},
          {"largest_formula", {{"variables", s.largest_vars}, {"clauses", s.largest_clauses}, {"literals", s.largest_literals}}}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- dilation ----

struct DilationArgs {
  std::string curve;
  std::string metric = "2";
  std::string rel_err = "1/10000";
  bool exact = false;
  std::string json;
};

int cmd_dilation(const DilationArgs& a, const Json& run_config) {
  const Curve curve = load_curve(a.curve);
  if (auto problems = validate(curve); !problems.empty()) {
    for (const auto& p : problems) std::cerr << "invalid curve: " << p << "\n";
    return kExitUsage;
  }
  const auto t0 = std::chrono::steady_clock::now();
  Json report{{"curve", a.curve}, {"config", run_config}};

  if (a.exact) {
    if (curve.dim() != 2 || curve.multiplicity() != 1) throw UsageError("--exact needs a plane monofractal");
    const ExactResult r = exact_dilation_2d(curve);
    report["exact"] = {{"value", to_string(r.value)},
                       {"mixed", to_mixed_string(r.value)},
                       {"value_float", r.value.get_d()},
                       {"linf_scan", to_string(r.linf_scan)},
                       {"depth", r.depth},
                       {"order", r.order},
                       {"l2_bounds", bounds_to_json(r.l2_bounds, Metric{Norm::L2, 2})},
                       {"linf_bounds", bounds_to_json(r.linf_bounds, Metric{Norm::Linf, 2})},
                       {"witness", witness_to_json(r.witness)}};
    report["seconds"] = seconds_since(t0);
    std::cout << "l2 dilation = " << to_mixed_string(r.value) << " (" << to_string(r.value) << ")\n"
              << "linf dilation = " << to_mixed_string(r.linf_scan) << "\n"
              << "depth " << r.depth << ", vertex order " << r.order << "\n";
    write_json(report, a.json);
    return 0;
  }

  const Metric metric = metric_arg(a.metric, curve.dim());
  DilationOptions opts;
  opts.pair_budget = env_budget("PEANO_PAIR_BUDGET", opts.pair_budget);
  CurveDilation cd(curve, metric, opts);
  const Bounds b = cd.estimate(rational_arg(a.rel_err, "--rel-err"));
  report["bounds"] = bounds_to_json(b, metric);
  report["stats"] = {{"bisect_steps", cd.bisect_steps()},
                     {"pairs", cd.total_stats().pairs},
                     {"subdivisions", cd.total_stats().subdivisions},
                     {"max_queue", cd.total_stats().max_queue}};
  report["seconds"] = seconds_since(t0);
  std::cout << to_string(metric.norm) << " dilation in [" << fmt(metric.value_from_key(b.lower)) << ", "
            << fmt(metric.value_from_key(b.upper)) << "]\n";
  write_json(report, a.json);
  return 0;
}

// ---- shared generator arguments ----

struct GenArgs {
  int dim = 2;
  int mult = 1;
  int div = 2;
  bool facet_gated = false;
  bool no_diagonal_steps = false;
  std::string gates;  // side, diagonal, median (plane monofractals)
  int word_depth = 2;
};

void add_gen_options(CLI::App* sub, GenArgs& g) {
  sub->add_option("--dim", g.dim, "Dimension")->check(CLI::Range(2, 4));
  sub->add_option("--mult", g.mult, "Multiplicity (number of patterns)")->check(CLI::Range(1, 4));
  sub->add_option("--div", g.div, "Subdivisions per axis")->check(CLI::Range(2, 8));
  sub->add_flag("--facet-gated", g.facet_gated, "Gates strictly inside facets");
  sub->add_flag("--no-diagonal-steps", g.no_diagonal_steps, "Only prototypes with facet-adjacent steps");
  sub->add_option("--gates", g.gates, "Plane gate category")->check(CLI::IsMember({"side", "diagonal", "median"}));
  sub->add_option("--word-depth", g.word_depth, "Orientation word length for gate candidates")->check(CLI::Range(1, 4));
}

std::vector<GateConfiguration> gate_configurations(const GenArgs& g) {
  if (!g.gates.empty() && (g.dim != 2 || g.mult != 1)) throw UsageError("--gates applies to plane monofractals");
  PrototypeFilters f;
  f.no_diagonal_steps = g.no_diagonal_steps;
  auto all = enumerate_gate_configurations(g.dim, g.mult, g.div, g.facet_gated, g.word_depth, f);
  if (g.gates.empty()) return all;
  std::vector<GateConfiguration> out;
  for (auto& gc : all)
    if (to_string(classify_plane_gates(gc.pairs[0])) == g.gates) out.push_back(std::move(gc));
  return out;
}

std::vector<PointedPrototype> prototypes_of(const GenArgs& g, const std::vector<GateConfiguration>& configs) {
  PrototypeFilters f;
  f.no_diagonal_steps = g.no_diagonal_steps;
  std::vector<PointedPrototype> out;
  for (const auto& gc : configs)
    for (auto& pp : enumerate_pointed_prototypes(gc, g.dim, g.div, f)) out.push_back(std::move(pp));
  return out;
}

std::vector<PointedPrototype> read_prototypes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::vector<PointedPrototype> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(prototype_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw FormatError(path + ": " + e.what());
    }
  }
  return out;
}

// ---- search ----

struct SearchArgs {
  GenArgs gen;
  std::string metric = "2";
  std::string first_err = "1/10";
  std::string rel_err = "1/100000";
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string out;
  std::string report;
  std::string cnf;
  std::string prototypes;
  std::string at_least;
  std::string slack = "1/10000";
  std::string exclude_each;
};

int cmd_search(const SearchArgs& a, const Json& run_config) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchConfig cfg;
  cfg.seed = a.seed;
  cfg.jobs = env_jobs(a.jobs);
  cfg.pair_budget = env_budget("PEANO_PAIR_BUDGET", cfg.pair_budget);
  Json report{{"config", run_config}};

  // Exclusion around a known curve: one class per fraction.
  if (!a.exclude_each.empty()) {
    if (a.at_least.empty()) throw UsageError("--exclude-each needs --at-least");
    const Curve curve = load_curve(a.exclude_each);
    cfg.metric = metric_arg(a.metric, curve.dim());
    const Rational lo = cfg.metric.key_from_value(rational_arg(a.at_least, "--at-least"));
    const Rational hi = lo * (1 + rational_arg(a.slack, "--slack"));
    const ExclusionReport r = exclude_each_fraction(curve, lo, hi, cfg);
    Json w = Json::array();
    for (auto [p, k] : r.witnesses) w.push_back({{"pattern", p}, {"fraction", k}});
    report["exclusion"] = {{"classes", r.classes}, {"passed", r.passed()}, {"witnesses", w}};
    report["stats"] = stats_to_json(r.stats);
    report["seconds"] = seconds_since(t0);
    std::cout << r.classes << " single-fraction exclusion classes, "
              << (r.passed() ? "all at least " + a.at_least : std::to_string(r.witnesses.size()) + " with curves below bound")
              << "\n";
    write_json(report, a.report);
    return r.passed() ? 0 : kExitViolation;
  }

  std::vector<PointedPrototype> pps;
  std::size_t config_count = 0;
  if (!a.prototypes.empty()) {
    pps = read_prototypes(a.prototypes);
    if (pps.empty()) throw UsageError("no prototypes in " + a.prototypes);
  } else {
    const auto configs = gate_configurations(a.gen);
    config_count = configs.size();
    pps = prototypes_of(a.gen, configs);
    report["gate_configurations"] = config_count;
  }
  report["pointed_prototypes"] = pps.size();
  const int dim = pps.empty() ? a.gen.dim : pps.front().dim;
  cfg.metric = metric_arg(a.metric, dim);
  if (pps.empty()) {
    std::cout << "no pointed prototypes\n";
    report["seconds"] = seconds_since(t0);
    write_json(report, a.report);
    return 0;
  }

  // Threshold mode: every class must be AllAtLeast(value).
  if (!a.at_least.empty()) {
    const Rational lo = cfg.metric.key_from_value(rational_arg(a.at_least, "--at-least"));
    const Rational hi = lo * (1 + rational_arg(a.slack, "--slack"));
    SearchStats stats;
    Json below = Json::array();
    for (std::size_t i = 0; i < pps.size(); ++i) {
      ClassDilation cd(family_of(pps[i]), cfg);
      const Bounds init = cd.initial_bounds();
      if (init.lower >= lo) continue;
      const ClassVerdict v = cd.bisect(lo, hi);
      stats.merge(cd.stats());
      if (v.kind == ClassVerdict::Kind::Witness)
        below.push_back({{"prototype", i}, {"curve", v.curve ? curve_to_json(*v.curve) : Json()}});
    }
    report["at_least"] = {{"value", a.at_least}, {"passed", below.empty()}, {"witnesses", below}};
    report["stats"] = stats_to_json(stats);
    report["seconds"] = seconds_since(t0);
    std::cout << pps.size() << " classes: "
              << (below.empty() ? "all at least " + a.at_least
                                : std::to_string(below.size()) + " contain curves below " + a.at_least)
              << "\n";
    write_json(report, a.report);
    return below.empty() ? 0 : kExitViolation;
  }

  cfg.epochs = default_epochs(rational_arg(a.first_err, "--first-err"), rational_arg(a.rel_err, "--rel-err"));
  const MinimizeResult r = minimize_over_prototypes(pps, cfg);
  report["curves"] = r.curves;
  report["bounds"] = bounds_to_json(r.bounds, cfg.metric);
  Json surv = Json::array();
  for (auto i : r.survivors)
    surv.push_back({{"index", i}, {"prototype", prototype_to_json(pps[i])},
                    {"bounds", bounds_to_json(r.per_prototype[i], cfg.metric)}});
  report["survivors"] = surv;
  Rational rest_lower;
  bool have_rest = false;
  for (std::size_t i = 0; i < pps.size(); ++i) {
    if (std::find(r.survivors.begin(), r.survivors.end(), i) != r.survivors.end()) continue;
    if (!have_rest || r.per_prototype[i].lower < rest_lower) rest_lower = r.per_prototype[i].lower;
    have_rest = true;
  }
  if (have_rest) report["non_survivor_lower"] = {{"key", to_string(rest_lower)}, {"value", cfg.metric.value_from_key(rest_lower)}};
  report["stats"] = stats_to_json(r.stats);
  if (r.example) report["example"] = curve_to_json(*r.example);
  report["seconds"] = seconds_since(t0);

  std::cout << "gate configurations: " << config_count << "\npointed prototypes: " << pps.size()
            << "\ncurves: " << r.curves << "\nminimal " << to_string(cfg.metric.norm) << " dilation in ["
            << fmt(cfg.metric.value_from_key(r.bounds.lower)) << ", " << fmt(cfg.metric.value_from_key(r.bounds.upper))
            << "]\nsurviving prototypes: " << r.survivors.size() << "\n";
  if (have_rest) std::cout << "other prototypes: dilation >= " << fmt(cfg.metric.value_from_key(rest_lower)) << "\n";
  std::cout << "bisect steps " << r.stats.bisect_steps << ", pairs " << r.stats.pairs << ", banned " << r.stats.banned_pairs
            << ", solver calls " << r.stats.solver_calls << "\n";

  if (!a.out.empty() && r.example) save_curve(*r.example, a.out);
  if (!a.cnf.empty() && !r.survivors.empty()) {
    ClassDilation cd(family_of(pps[r.survivors.front()]), cfg);
    std::ofstream cnf(a.cnf);
    if (!cnf) throw std::runtime_error("cannot write " + a.cnf);
    cnf << cd.base_formula().to_dimacs();
  }
  write_json(report, a.report);
  return 0;
}

// ---- gates / prototypes ----

int cmd_gates(const GenArgs& g, const std::string& json) {
  const auto configs = gate_configurations(g);
  Json out = Json::array();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    Json item{{"index", i}, {"gates", gates_to_json(configs[i].pairs)}};
    std::cout << i << ": " << to_string(configs[i]);
    if (g.dim == 2 && g.mult == 1) {
      const std::string cat = to_string(classify_plane_gates(configs[i].pairs[0]));
      item["category"] = cat;
      std::cout << "  [" << cat << "]";
    }
    std::cout << "\n";
    out.push_back(item);
  }
  std::cout << configs.size() << " gate configurations\n";
  write_json(out, json);
  return 0;
}

int cmd_prototypes(const GenArgs& g, int index, const std::string& out_path) {
  auto configs = gate_configurations(g);
  if (index >= 0) {
    if (index >= static_cast<int>(configs.size())) throw UsageError("--config-index out of range");
    configs = {configs[index]};
  }
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    out = &file;
  }
  PrototypeFilters f;
  f.no_diagonal_steps = g.no_diagonal_steps;
  std::size_t count = 0;
  for (const auto& gc : configs) {
    for_each_pointed_prototype(gc, g.dim, g.div, f, [&](const PointedPrototype& pp) {
      *out << prototype_to_json(pp).dump() << "\n";
      ++count;
      return true;
    });
  }
  std::cerr << count << " pointed prototypes from " << configs.size() << " gate configurations\n";
  return 0;
}

// ---- verify-bounds ----

int cmd_verify(const std::string& lemma, int s, std::uint64_t budget_flag, const std::string& json) {
  const std::uint64_t budget = budget_flag ? budget_flag : env_budget("PEANO_ENUM_BUDGET", 2'000'000'000ull);
  std::vector<CertificateReport> reports;
  auto want = [&](const char* name) { return lemma == "all" || lemma == name; };
  if (want("chain4empty3d")) reports.push_back(certify_chain4_empty_3d());
  if (want("chain7collinear4d")) reports.push_back(certify_chain7_collinear_4d());
  if (want("antipode4d")) reports.push_back(certify_antipodes_4d());
  auto side = [&](int natural) { return s ? s : natural; };
  if (want("square")) reports.push_back(verify_square_lemma(side(3), budget));
  if (want("cubicbody3d")) reports.push_back(certify_cubic_body_3d(side(3), budget));
  if (want("cubicbody4d")) reports.push_back(certify_cubic_body_4d(side(2), budget));

  bool ok = true;
  Json out = Json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    Json j{{"lemma", r.lemma},
           {"dim", r.dim},
           {"in_hypothesis", r.in_hypothesis},
           {"search_space_size", r.search_space_size},
           {"bound", r.bound},
           {"passed", r.passed()},
           {"violations", r.violations}};
    if (r.extremal_value) j["extremal_value"] = to_string(*r.extremal_value);
    out.push_back(j);
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.lemma << ": " << r.bound << " over " << r.search_space_size
              << " objects";
    if (r.extremal_value) std::cout << ", extremal " << to_string(*r.extremal_value);
    if (!r.in_hypothesis) std::cout << " (outside hypothesis)";
    std::cout << "\n";
    for (const auto& v : r.violations) std::cout << "  violation: " << v << "\n";
  }
  write_json(out, json);
  return ok ? 0 : kExitViolation;
}

// ---- render ----

int cmd_render(const std::string& path, int depth, int pattern, std::string format, const std::string& out_path) {
  const Curve curve = load_curve(path);
  if (format.empty()) format = curve.dim() == 2 ? "svg" : "json";
  if (format == "svg" && curve.dim() != 2) throw UsageError("svg output needs a plane curve; use --format json");
  if (pattern < 0 || pattern >= curve.multiplicity()) throw UsageError("--pattern out of range");
  const std::string text = format == "svg" ? render_svg(curve, depth, pattern) : render_polyline_json(curve, depth, pattern);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
  return 0;
}

int cmd_complexity(int dim, int mult, int genus, double k, double h) {
  const Complexity c = complexity_estimate(dim, mult, genus, k, h);
  std::cout << "prototype bits " << fmt(c.prototype_bits) << "\nequation bits " << fmt(c.equation_bits)
            << "\nlog2 count " << fmt(c.prototype_bits + c.equation_bits) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peano multifractals: dilation, class search and lower-bound certificates"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON run configuration");

  DilationArgs dil;
  auto* dilation = app.add_subcommand("dilation", "Bounds or exact value of a curve dilation");
  dilation->add_option("curve", dil.curve, "Curve JSON")->required()->check(CLI::ExistingFile);
  dilation->add_option("--metric", dil.metric, "1, 2 or inf")->check(CLI::IsMember({"1", "2", "inf"}));
  dilation->add_option("--rel-err", dil.rel_err, "Relative error of the interval");
  dilation->add_flag("--exact", dil.exact, "Exact l2 value (plane monofractals)");
  dilation->add_option("--json", dil.json, "Write a JSON report ('-' for stdout)");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Minimal dilation over a class of curves");
  add_gen_options(search, sa.gen);
  search->add_option("--metric", sa.metric, "1, 2 or inf")->check(CLI::IsMember({"1", "2", "inf"}));
  search->add_option("--first-err", sa.first_err, "Relative error of the first epoch");
  search->add_option("--rel-err", sa.rel_err, "Final relative error");
  search->add_option("--seed", sa.seed, "Solver seed");
  search->add_option("--jobs", sa.jobs, "Worker threads (default PEANO_JOBS or 1)");
  search->add_option("--out", sa.out, "Write the best curve JSON");
  search->add_option("--report", sa.report, "Write the JSON report ('-' for stdout)");
  search->add_option("--cnf", sa.cnf, "Write the base formula of the best class in DIMACS form");
  search->add_option("--prototypes", sa.prototypes, "Read pointed prototypes (JSON lines) instead of generating");
  search->add_option("--at-least", sa.at_least, "Only check that every class has dilation at least this value");
  search->add_option("--slack", sa.slack, "Relative gap above --at-least used for the bisection");
  search->add_option("--exclude-each", sa.exclude_each,
                     "Curve JSON: check each class forbidding one fraction's orientation (needs --at-least)")
      ->check(CLI::ExistingFile);

  GenArgs ga;
  std::string gates_json;
  auto* gates_cmd = app.add_subcommand("gates", "Enumerate gate configurations");
  add_gen_options(gates_cmd, ga);
  gates_cmd->add_option("--json", gates_json, "Write the list as JSON ('-' for stdout)");

  GenArgs pa;
  int config_index = -1;
  std::string protos_out;
  auto* protos_cmd = app.add_subcommand("prototypes", "Enumerate pointed prototypes as JSON lines");
  add_gen_options(protos_cmd, pa);
  protos_cmd->add_option("--config-index", config_index, "Only this gate configuration");
  protos_cmd->add_option("--out", protos_out, "Output file (default stdout)");

  std::string lemma = "all", verify_json;
  int verify_s = 0;
  std::uint64_t verify_budget = 0;
  auto* verify = app.add_subcommand("verify-bounds", "Brute-force certificates for chain lower bounds");
  verify->add_option("--lemma", lemma, "Which certificate")
      ->check(CLI::IsMember({"all", "antipode4d", "chain4empty3d", "chain7collinear4d", "square", "cubicbody3d",
                             "cubicbody4d"}));
  verify->add_option("--s", verify_s, "Side of the square or cubic body (0: 3, or 2 in 4D)")->check(CLI::Range(2, 6));
  verify->add_option("--budget", verify_budget, "Enumeration budget (default PEANO_ENUM_BUDGET)");
  verify->add_option("--json", verify_json, "Write reports as JSON ('-' for stdout)");

  std::string render_curve, render_out, render_format;
  int render_depth = 1, render_pattern = 0;
  auto* render = app.add_subcommand("render", "Polyline through fraction centers");
  render->add_option("curve", render_curve, "Curve JSON")->required()->check(CLI::ExistingFile);
  render->add_option("--depth", render_depth, "Fraction order")->check(CLI::Range(0, 8));
  render->add_option("--pattern", render_pattern, "Pattern index");
  render->add_option("--format", render_format, "svg or json")->check(CLI::IsMember({"svg", "json"}));
  render->add_option("--out", render_out, "Output file (default stdout)");

  int cx_dim = 2, cx_mult = 1, cx_genus = 4;
  double cx_k = 1, cx_h = 8;
  auto* complexity = app.add_subcommand("complexity", "log2 of the number of curves in a class");
  complexity->add_option("--dim", cx_dim)->check(CLI::Range(1, 16));
  complexity->add_option("--mult", cx_mult)->check(CLI::Range(1, 64));
  complexity->add_option("--genus", cx_genus)->check(CLI::Range(2, 1 << 20));
  complexity->add_option("--choices", cx_k, "Choices per prototype cube step")->check(CLI::PositiveNumber);
  complexity->add_option("--stabilizer", cx_h, "Order of the gate stabilizer")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Json run_config = Json::parse(app.config_to_str(true, false));
  try {
    if (*dilation) return cmd_dilation(dil, run_config);
    if (*search) return cmd_search(sa, run_config);
    if (*gates_cmd) return cmd_gates(ga, gates_json);
    if (*protos_cmd) return cmd_prototypes(pa, config_index, protos_out);
    if (*verify) return cmd_verify(lemma, verify_s, verify_budget, verify_json);
    if (*render) return cmd_render(render_curve, render_depth, render_pattern, render_format, render_out);
    if (*complexity) return cmd_complexity(cx_dim, cx_mult, cx_genus, cx_k, cx_h);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitViolation;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
