#include "peano/sat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace peano {

void Cnf::add(std::vector<int> clause) {
  for (int l : clause) {
    if (l == 0) throw std::invalid_argument("literal 0 in clause");
    num_vars = std::max(num_vars, std::abs(l));
  }
  clauses.push_back(std::move(clause));
}

void Cnf::exactly_one(const std::vector<int>& vars) {
  add(vars);
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j) add({-vars[i], -vars[j]});
}

std::size_t Cnf::literal_count() const {
  std::size_t n = 0;
  for (const auto& c : clauses) n += c.size();
  return n;
}

std::string Cnf::to_dimacs() const {
  std::ostringstream out;
  out << "p cnf " << num_vars << " " << clauses.size() << "\n";
  for (const auto& c : clauses) {
    for (int l : c) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

Cnf Cnf::from_dimacs(const std::string& text) {
  std::istringstream in(text);
  Cnf cnf;
  std::string tok;
  std::vector<int> cur;
  int declared = 0;
  while (in >> tok) {
    if (tok == "c") {
      std::getline(in, tok);
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      std::size_t nclauses;
      in >> fmt >> declared >> nclauses;
      if (fmt != "cnf") throw std::invalid_argument("not a cnf problem line");
      continue;
    }
    int l = std::stoi(tok);
    if (l == 0) {
      cnf.add(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(l);
    }
  }
  if (!cur.empty()) throw std::invalid_argument("unterminated clause");
  cnf.num_vars = std::max(cnf.num_vars, declared);
  return cnf;
}

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  for (; size < x + 1; seq++, size = 2 * size + 1) {
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

SatSolver::SatSolver(std::uint64_t seed) : rng_(seed) {
  assign_.push_back(-1);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(0);
  seen_.push_back(0);
  activity_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.resize(2);
}

void SatSolver::ensure_var(int var) {
  std::uniform_real_distribution<double> jitter(0.0, 1e-6);
  while (num_vars() < var) {
    int v = num_vars() + 1;
    assign_.push_back(-1);
    level_.push_back(0);
    reason_.push_back(-1);
    phase_.push_back(0);
    seen_.push_back(0);
    activity_.push_back(jitter(rng_));
    heap_pos_.push_back(-1);
    watches_.resize(2 * v + 2);
    heap_insert(v);
  }
}

void SatSolver::reserve(int num_vars) { ensure_var(num_vars); }

void SatSolver::add(const Cnf& cnf) {
  ensure_var(cnf.num_vars);
  for (const auto& c : cnf.clauses) add_clause(c);
}

void SatSolver::add_clause(const std::vector<int>& signed_lits) {
  if (!trail_lim_.empty()) backtrack(0);
  if (unsat_) return;
  std::vector<Lit> lits;
  for (int s : signed_lits) {
    if (s == 0) throw std::invalid_argument("literal 0 in clause");
    ensure_var(std::abs(s));
    lits.push_back(to_lit(s));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return;  // tautology
    int v = lit_value(lits[i]);
    if (v == 1) return;
    if (v == 0) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) unsat_ = true;
    return;
  }
  attach(std::move(kept), false);
}

int SatSolver::attach(std::vector<Lit> lits, bool learnt) {
  int ci = static_cast<int>(clauses_.size());
  watches_[lits[0]].push_back(ci);
  watches_[lits[1]].push_back(ci);
  clauses_.push_back(Clause{std::move(lits), learnt, 0, false});
  if (learnt) ++learnt_count_;
  return ci;
}

void SatSolver::enqueue(Lit l, int reason) {
  int v = var_of(l);
  assign_[v] = (l & 1) ? 0 : 1;
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(l);
}

int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = neg(p);
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      int ci = ws[i++];
      Clause& c = clauses_[ci];
      if (c.removed) continue;
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      if (lit_value(c.lits[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (lit_value(c.lits[k]) != 0) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (lit_value(c.lits[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c.lits[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void SatSolver::bump_var(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_contains(v)) heap_up(heap_pos_[v]);
}

void SatSolver::bump_clause(Clause& c) {
  c.activity += clause_inc_;
  if (c.activity > 1e20) {
    for (auto& cl : clauses_)
      if (cl.learnt) cl.activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

void SatSolver::analyze(int conflict, std::vector<Lit>& learnt, int& back_level) {
  const int current = static_cast<int>(trail_lim_.size());
  int path = 0;
  Lit p = -1;
  learnt.assign(1, 0);
  int idx = static_cast<int>(trail_.size()) - 1;
  int ci = conflict;
  do {
    Clause& c = clauses_[ci];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
      Lit q = c.lits[k];
      int v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      bump_var(v);
      seen_[v] = 1;
      if (level_[v] >= current)
        ++path;
      else
        learnt.push_back(q);
    }
    while (!seen_[var_of(trail_[idx])]) --idx;
    p = trail_[idx--];
    ci = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);

  back_level = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (level_[var_of(learnt[k])] > back_level) {
      back_level = level_[var_of(learnt[k])];
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (Lit l : learnt) seen_[var_of(l)] = 0;
}

void SatSolver::backtrack(int level) {
  if (static_cast<int>(trail_lim_.size()) <= level) return;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
    int v = var_of(trail_[i]);
    phase_[v] = static_cast<char>(assign_[v]);
    assign_[v] = -1;
    reason_[v] = -1;
    if (!heap_contains(v)) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

int SatSolver::pick_branch() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assign_[v] < 0) return phase_[v] ? 2 * v : 2 * v + 1;
  }
  return -1;
}

bool SatSolver::locked(int ci) const {
  const Clause& c = clauses_[ci];
  int v = var_of(c.lits[0]);
  return reason_[v] == ci && lit_value(c.lits[0]) == 1;
}

void SatSolver::reduce_learnts() {
  std::vector<int> learnts;
  for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci)
    if (clauses_[ci].learnt && !clauses_[ci].removed) learnts.push_back(ci);
  std::sort(learnts.begin(), learnts.end(),
            [&](int x, int y) { return clauses_[x].activity < clauses_[y].activity; });
  for (std::size_t i = 0; i < learnts.size() / 2; ++i) {
    Clause& c = clauses_[learnts[i]];
    if (c.lits.size() <= 2 || locked(learnts[i])) continue;
    c.removed = true;
    c.lits.clear();
    c.lits.shrink_to_fit();
    --learnt_count_;
  }
}

SatSolver::Result SatSolver::solve() {
  if (!trail_lim_.empty()) backtrack(0);
  if (unsat_) return Result::Unsat;
  if (propagate() >= 0) {
    unsat_ = true;
    return Result::Unsat;
  }
  double max_learnts = std::max<double>(1000, static_cast<double>(clauses_.size()) / 3);
  std::vector<Lit> learnt;
  for (int restart = 0;; ++restart) {
    const std::uint64_t budget = static_cast<std::uint64_t>(luby(2, restart) * 100);
    std::uint64_t local = 0;
    for (;;) {
      int conflict = propagate();
      if (conflict >= 0) {
        ++conflicts_;
        ++local;
        if (trail_lim_.empty()) {
          unsat_ = true;
          return Result::Unsat;
        }
        int back_level = 0;
        analyze(conflict, learnt, back_level);
        backtrack(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          int ci = attach(learnt, true);
          bump_clause(clauses_[ci]);
          enqueue(learnt[0], ci);
        }
        var_inc_ /= 0.95;
        clause_inc_ /= 0.999;
        continue;
      }
      if (local >= budget) {
        backtrack(0);
        break;
      }
      if (static_cast<double>(learnt_count_) > max_learnts + static_cast<double>(trail_.size())) {
        reduce_learnts();
        max_learnts *= 1.1;
      }
      int next = pick_branch();
      if (next < 0) {
        model_.assign(num_vars() + 1, false);
        for (int v = 1; v <= num_vars(); ++v) {
          if (assign_[v] < 0) throw SolverError("unassigned variable in a complete assignment");
          model_[v] = assign_[v] == 1;
        }
        backtrack(0);
        return Result::Sat;
      }
      ++decisions_;
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(next, -1);
    }
  }
}

bool SatSolver::value(int var) const {
  if (var < 1 || var >= static_cast<int>(model_.size())) throw SolverError("no model for variable");
  return model_[var];
}

std::vector<bool> SatSolver::model() const { return model_; }

void SatSolver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

int SatSolver::heap_pop() {
  int top = heap_[0];
  int last = heap_.back();
  heap_.pop_back();
  heap_pos_[top] = -1;
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

void SatSolver::heap_up(int pos) {
  int v = heap_[pos];
  while (pos > 0) {
    int parent = (pos - 1) / 2;
    if (activity_[heap_[parent]] >= activity_[v]) break;
    heap_[pos] = heap_[parent];
    heap_pos_[heap_[pos]] = pos;
    pos = parent;
  }
  heap_[pos] = v;
  heap_pos_[v] = pos;
}

void SatSolver::heap_down(int pos) {
  int v = heap_[pos];
  const int n = static_cast<int>(heap_.size());
  for (;;) {
    int child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
    if (activity_[heap_[child]] <= activity_[v]) break;
    heap_[pos] = heap_[child];
    heap_pos_[heap_[pos]] = pos;
    pos = child;
  }
  heap_[pos] = v;
  heap_pos_[v] = pos;
}

}  // namespace peano
