#include "peano/search.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace peano {

PointedPrototype pointed_prototype_of(const Curve& curve) {
  if (!curve.fully_defined()) throw CurveNotDefined("pointed prototype of an undefined curve");
  PointedPrototype pp;
  pp.dim = curve.dim();
  pp.div = curve.div();
  pp.gates = gates(curve);
  for (int r = 0; r < curve.multiplicity(); ++r) {
    pp.protos.push_back(curve.pattern(r).proto);
    std::vector<GatePair> local;
    for (int k = 0; k < curve.genus(); ++k) {
      const Spec& s = *curve.spec(r, k);
      local.push_back(oriented_gates(pp.gates[s.pattern], s.base));
    }
    pp.local_gates.push_back(std::move(local));
  }
  return pp;
}

std::vector<Spec> valid_choices(const PointedPrototype& pp, int r, int k) {
  std::vector<Spec> out;
  const GatePair& want = pp.local_gates.at(r).at(k);
  for (const auto& b : group_enumerate(pp.dim))
    for (int l = 0; l < pp.multiplicity(); ++l)
      if (oriented_gates(pp.gates[l], b) == want) out.push_back(Spec{b, l});
  return out;
}

CurveFamily family_of(const PointedPrototype& pp) {
  std::vector<std::vector<std::vector<Spec>>> options(pp.multiplicity());
  for (int r = 0; r < pp.multiplicity(); ++r)
    for (int k = 0; k < pp.genus(); ++k) options[r].push_back(valid_choices(pp, r, k));
  return CurveFamily(pp.dim, pp.div, pp.protos, pp.gates, std::move(options));
}

std::vector<Rational> default_epochs(const Rational& first, const Rational& last) {
  std::vector<Rational> out;
  for (Rational e = first; e > last; e /= 4) out.push_back(e);
  out.push_back(last);
  return out;
}

void SearchStats::merge(const SearchStats& o) {
  bisect_steps += o.bisect_steps;
  pairs += o.pairs;
  banned_pairs += o.banned_pairs;
  solver_calls += o.solver_calls;
  if (o.largest_literals > largest_literals) {
    largest_literals = o.largest_literals;
    largest_clauses = o.largest_clauses;
    largest_vars = o.largest_vars;
  }
}

ClassDilation::ClassDilation(CurveFamily family, const SearchConfig& config)
    : family_(std::move(family)),
      config_(config),
      junctions_(family_junctions(family_, config.max_junction_depth)),
      engine_(family_, config.metric, junctions_) {}

int ClassDilation::var_of(const std::pair<int, int>& choice) const {
  int r = choice.first / family_.genus(), k = choice.first % family_.genus();
  return family_.options(r, k)[choice.second].var;
}

Cnf ClassDilation::base_formula() const {
  Cnf cnf;
  cnf.num_vars = family_.variable_count() + static_cast<int>(junctions_.junctions.size());
  for (int r = 0; r < family_.multiplicity(); ++r) {
    for (int k = 0; k < family_.genus(); ++k) {
      const auto& opts = family_.options(r, k);
      if (opts.size() < 2) continue;
      std::vector<int> vars;
      for (const auto& o : opts) vars.push_back(o.var);
      cnf.exactly_one(vars);
    }
  }
  const int y0 = family_.variable_count() + 1;
  for (std::size_t j = 0; j < junctions_.junctions.size(); ++j) {
    if (junctions_.certain[j]) continue;
    for (const auto& t : junctions_.triggers[j]) {
      std::vector<int> clause;
      if (t.parent >= 0 && !junctions_.certain[t.parent]) clause.push_back(-(y0 + t.parent));
      for (int v : t.vars) clause.push_back(-v);
      clause.push_back(y0 + static_cast<int>(j));
      cnf.add(std::move(clause));
    }
  }
  for (const auto& c : extra_) cnf.add(c);
  return cnf;
}

Bounds ClassDilation::initial_bounds() const {
  std::optional<Rational> lo, hi;
  for (int f = 0; f < static_cast<int>(engine_.frames().size()); ++f) {
    bool auto_frame = engine_.frames()[f].pattern >= 0;
    for (const auto& seed : engine_.frame_seeds(f)) {
      PairGeometry geo = engine_.geometry(seed);
      Rational u = engine_.upper_key(geo);
      if (!hi || u > *hi) hi = u;
      if (auto_frame) {
        Rational l = engine_.lower_key(geo);
        if (!lo || l > *lo) lo = l;
      }
    }
  }
  if (!lo || !hi) throw std::logic_error("family has no seed pairs");
  return {*lo, *hi};
}

SatSolver::Result ClassDilation::solve(const Cnf& base, const std::vector<std::vector<int>>& bans) {
  SatSolver solver(config_.seed);
  solver.add(base);
  std::size_t clauses = base.clauses.size() + bans.size();
  std::size_t literals = base.literal_count();
  for (const auto& b : bans) {
    solver.add_clause(b);
    literals += b.size();
  }
  ++stats_.solver_calls;
  if (literals > stats_.largest_literals) {
    stats_.largest_literals = literals;
    stats_.largest_clauses = clauses;
    stats_.largest_vars = static_cast<std::size_t>(base.num_vars);
  }
  auto result = solver.solve();
  if (result == SatSolver::Result::Sat) model_ = solver.model();
  return result;
}

namespace {

struct Entry {
  PairCandidate pair;
  std::uint64_t seq;
};

struct LowerPriority {
  bool operator()(const Entry& x, const Entry& y) const {
    if (x.pair.upper != y.pair.upper) return x.pair.upper < y.pair.upper;
    int dx = x.pair.a.depth + x.pair.b.depth, dy = y.pair.a.depth + y.pair.b.depth;
    if (dx != dy) return dx > dy;
    return x.seq > y.seq;
  }
};

}  // namespace

ClassVerdict ClassDilation::bisect(const Rational& lower, const Rational& upper) {
  if (!(lower < upper)) throw std::invalid_argument("bisection needs lower < upper");
  ++stats_.bisect_steps;
  const Threshold lo = Threshold::of(lower), hi = Threshold::of(upper);
  const Cnf base = base_formula();
  std::set<std::vector<int>> ban_set;
  std::vector<std::vector<int>> bans;
  std::priority_queue<Entry, std::vector<Entry>, LowerPriority> queue;
  std::uint64_t seq = 0, pairs = 0;
  bool proven = false;

  ClassVerdict all_at_least{ClassVerdict::Kind::AllAtLeast, lower, std::nullopt};

  auto consider = [&](PairCandidate&& p) {
    ++pairs;
    PairGeometry geo = engine_.geometry(p);
    if (engine_.upper_at_most(geo, hi)) return;
    if (engine_.lower_at_least(geo, lo)) {
      std::vector<int> clause;
      if (int guard = engine_.frame_guard(p.frame)) clause.push_back(-guard);
      for (const auto& h : *p.history) clause.push_back(-var_of(h));
      ++stats_.banned_pairs;
      if (clause.empty()) {
        proven = true;
        return;
      }
      std::sort(clause.begin(), clause.end());
      if (ban_set.insert(clause).second) bans.push_back(std::move(clause));
      return;
    }
    queue.push(Entry{std::move(p), seq++});
  };

  auto finish = [&]() {
    stats_.pairs += pairs;
    last_formula_ = base;
    for (const auto& b : bans) last_formula_.add(b);
  };

  for (auto& s : engine_.seeds()) {
    consider(std::move(s));
    if (proven) break;
  }
  std::uint64_t steps = 0, next_check = 1;
  int k = 0;
  std::vector<PairCandidate> children;
  while (!proven && !queue.empty()) {
    if (pairs > config_.pair_budget) throw BudgetExceeded("pair budget exhausted");
    PairCandidate top = queue.top().pair;
    queue.pop();
    children.clear();
    engine_.subdivide(top, children);
    ++steps;
    for (auto& c : children) {
      consider(std::move(c));
      if (proven) break;
    }
    if (proven) break;
    if (steps >= next_check) {
      while (static_cast<std::uint64_t>(std::floor(std::pow(config_.rebuild_base, k))) <= steps) ++k;
      next_check = static_cast<std::uint64_t>(std::floor(std::pow(config_.rebuild_base, k)));
      if (solve(base, bans) == SatSolver::Result::Unsat) {
        finish();
        return all_at_least;
      }
    }
  }
  finish();
  if (proven || solve(base, bans) == SatSolver::Result::Unsat) return all_at_least;
  Curve curve = family_.decode(model_);
  return ClassVerdict{ClassVerdict::Kind::Witness, upper, curve};
}

Bounds ClassDilation::refine(Bounds b, const Rational& rel_err, const std::optional<Rational>& prune_above) {
  if (rel_err <= 0) throw std::invalid_argument("relative error must be positive");
  while (b.upper - b.lower > rel_err * b.lower) {
    if (prune_above && b.lower > *prune_above) break;
    Rational lo = (2 * b.lower + b.upper) / 3;
    Rational hi = (b.lower + 2 * b.upper) / 3;
    ClassVerdict v = bisect(lo, hi);
    if (v.kind == ClassVerdict::Kind::AllAtLeast) {
      b.lower = lo;
    } else {
      b.upper = hi;
      example_ = v.curve;
    }
  }
  return b;
}

std::optional<Curve> ClassDilation::any_curve() {
  if (solve(base_formula(), {}) == SatSolver::Result::Unsat) return std::nullopt;
  return family_.decode(model_);
}

ClassVerdict bisect_class(const PointedPrototype& pp, const Rational& lower, const Rational& upper,
                          const SearchConfig& config) {
  ClassDilation cd(family_of(pp), config);
  return cd.bisect(lower, upper);
}

MinimizeResult minimize_over_prototypes(const std::vector<PointedPrototype>& pps, const SearchConfig& config) {
  if (pps.empty()) throw std::invalid_argument("no pointed prototypes to minimize over");
  if (config.epochs.empty()) throw std::invalid_argument("search needs at least one epoch");
  for (std::size_t i = 1; i < config.epochs.size(); ++i)
    if (!(config.epochs[i] < config.epochs[i - 1])) throw std::invalid_argument("epoch errors must decrease");

  MinimizeResult out;
  std::vector<std::unique_ptr<ClassDilation>> classes;
  std::vector<Bounds> bounds;
  for (const auto& pp : pps) {
    classes.push_back(std::make_unique<ClassDilation>(family_of(pp), config));
    bounds.push_back(classes.back()->initial_bounds());
    out.curves += classes.back()->family().curve_count();
  }
  // every curve of a class is below the class upper bound
  auto best_of = [&](const std::vector<std::size_t>& idx) {
    std::size_t b = idx.front();
    for (std::size_t i : idx)
      if (bounds[i].upper < bounds[b].upper) b = i;
    return b;
  };
  std::vector<std::size_t> alive(pps.size());
  for (std::size_t i = 0; i < pps.size(); ++i) alive[i] = i;
  std::size_t best_index = best_of(alive);

  for (const auto& eps : config.epochs) {
    // the pruning level is fixed for the epoch so results do not depend on the job count
    const Rational prune = bounds[best_index].upper;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
      for (std::size_t k; (k = next++) < alive.size();) {
        const std::size_t i = alive[k];
        if (bounds[i].lower > prune) continue;
        try {
          bounds[i] = classes[i]->refine(bounds[i], eps, prune);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(alive.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    best_index = best_of(alive);
    std::vector<std::size_t> kept;
    for (std::size_t i : alive)
      if (bounds[i].lower <= bounds[best_index].upper) kept.push_back(i);
    alive = std::move(kept);
  }
  out.survivors = alive;
  Rational lo = bounds[alive.front()].lower;
  for (std::size_t i : alive) lo = std::min(lo, bounds[i].lower);
  out.bounds = Bounds{lo, bounds[best_index].upper};
  out.example = classes[best_index]->example();
  if (!out.example) out.example = classes[best_index]->any_curve();
  out.per_prototype = bounds;
  for (const auto& c : classes) out.stats.merge(c->stats());
  return out;
}

}  // namespace peano

namespace peano {

ExclusionReport exclude_each_fraction(const Curve& curve, const Rational& lower, const Rational& upper,
                                      const SearchConfig& config) {
  ExclusionReport report;
  const CurveFamily family = family_of(pointed_prototype_of(curve));
  for (int r = 0; r < family.multiplicity(); ++r) {
    for (int k = 0; k < family.genus(); ++k) {
      const auto& opts = family.options(r, k);
      if (opts.size() < 2) continue;
      const auto& own = curve.pattern(r).specs[k];
      auto it = std::find_if(opts.begin(), opts.end(), [&](const Option& o) { return own && o.spec == *own; });
      if (it == opts.end()) continue;
      ClassDilation cd(family, config);
      cd.add_constraint({-it->var});
      ++report.classes;
      auto verdict = cd.bisect(lower, upper);
      report.stats.merge(cd.stats());
      if (verdict.kind == ClassVerdict::Kind::Witness) report.witnesses.push_back({r, k});
    }
  }
  return report;
}

}  // namespace peano
