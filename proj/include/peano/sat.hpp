#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace peano {

/// Clause list over variables 1..num_vars; literals are signed ids.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  int new_var() { return ++num_vars; }
  void add(std::vector<int> clause);
  /// At-least-one clause plus pairwise at-most-one clauses.
  void exactly_one(const std::vector<int>& vars);
  std::size_t literal_count() const;
  std::string to_dimacs() const;
  static Cnf from_dimacs(const std::string& text);
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conflict-driven clause learning solver: two watched literals, first-UIP
/// learning, activity-ordered decisions with phase saving and Luby
/// restarts. Complete; never answers from a timeout.
class SatSolver {
 public:
  enum class Result { Sat, Unsat };

  explicit SatSolver(std::uint64_t seed = 0);

  void reserve(int num_vars);
  int num_vars() const { return static_cast<int>(assign_.size()) - 1; }
  void add_clause(const std::vector<int>& lits);
  void add(const Cnf& cnf);
  Result solve();

  /// Model value of a variable after a Sat answer.
  bool value(int var) const;
  /// model()[v] for v in 1..num_vars (index 0 unused).
  std::vector<bool> model() const;

  std::uint64_t conflicts() const { return conflicts_; }
  std::uint64_t decisions() const { return decisions_; }

 private:
  using Lit = int;  // 2 * var + negated
  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    double activity = 0;
    bool removed = false;
  };

  static Lit to_lit(int signed_id) { return signed_id > 0 ? 2 * signed_id : 2 * (-signed_id) + 1; }
  static int var_of(Lit l) { return l >> 1; }
  static Lit neg(Lit l) { return l ^ 1; }
  // 1 true, 0 false, -1 unassigned
  int lit_value(Lit l) const {
    int v = assign_[var_of(l)];
    return v < 0 ? -1 : (v ^ (l & 1));
  }

  void ensure_var(int var);
  void enqueue(Lit l, int reason);
  int propagate();  // conflicting clause or -1
  void analyze(int conflict, std::vector<Lit>& learnt, int& back_level);
  void backtrack(int level);
  int attach(std::vector<Lit> lits, bool learnt);
  int pick_branch();
  void bump_var(int v);
  void bump_clause(Clause& c);
  void reduce_learnts();
  bool locked(int ci) const;

  // heap over variables keyed by activity
  void heap_insert(int v);
  int heap_pop();
  void heap_up(int pos);
  void heap_down(int pos);
  bool heap_contains(int v) const { return v < static_cast<int>(heap_pos_.size()) && heap_pos_[v] >= 0; }

  std::mt19937_64 rng_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;  // per literal: clauses watching it
  std::vector<int> assign_, level_, reason_;
  std::vector<char> phase_, seen_;
  std::vector<double> activity_;
  std::vector<int> heap_, heap_pos_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1, clause_inc_ = 1;
  bool unsat_ = false;
  std::size_t learnt_count_ = 0;
  std::uint64_t conflicts_ = 0, decisions_ = 0;
  std::vector<bool> model_;
};

}  // namespace peano
