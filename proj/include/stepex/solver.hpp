#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "stepex/lit.hpp"

namespace stepex {

enum class SolveStatus { Satisfiable, Unsatisfiable };

// Assumption-based CDCL solver: two-watched-literal propagation, first-UIP
// clause learning, Luby restarts. Branching is deterministic: lowest
// unassigned variable first, positive phase (a phase seed flips phases
// pseudo-randomly but reproducibly). Instances are copyable; a copy shares
// no mutable state with the original.
class Solver {
public:
  explicit Solver(int num_vars = 0);

  int new_var();
  int num_vars() const { return static_cast<int>(assign_.size()); }

  // Adds a base clause. Duplicate literals are merged; tautologies dropped.
  void add_clause(std::vector<Lit> lits);

  // Decides satisfiability of the clause database under the assumptions.
  // After Unsatisfiable, core() is a subset of the assumptions that is
  // jointly unsatisfiable with the database (possibly empty). Throws
  // Error(ResourceLimit) when the conflict budget is exhausted.
  SolveStatus solve(std::span<const Lit> assumptions);
  SolveStatus solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  bool model_value(int var) const { return model_[var] == 1; }
  const std::vector<Lit>& core() const { return core_; }

  // Unit propagation fixpoint of the database plus the assumptions, no
  // search. Returns false on conflict; otherwise `out` holds every forced
  // literal, assumptions included.
  bool propagate_units(std::span<const Lit> assumptions, std::vector<Lit>& out);

  void set_conflict_budget(std::int64_t budget) { conflict_budget_ = budget; }
  void set_phase_seed(std::uint64_t seed) { phase_seed_ = seed; }
  std::int64_t total_conflicts() const { return total_conflicts_; }
  bool okay() const { return ok_; }

  // Base clauses only, standard "p cnf" format, variables 1-based.
  void to_dimacs(std::ostream& os) const;

private:
  struct ClauseRef {
    int begin;
    int size;
    bool learnt;
  };

  int value(Lit l) const {  // +1 true, -1 false, 0 unassigned
    int v = assign_[l.var()];
    return l.positive() ? v : -v;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void enqueue(Lit l, int reason);
  int propagate();  // returns conflicting clause index or -1
  void analyze(int confl, std::vector<Lit>& learnt, int& bt_level);
  void analyze_final(Lit p);
  void cancel_until(int level);
  void attach(int clause_index);
  int add_learnt_clause(std::vector<Lit>& lits);
  Lit pick_branch() const;
  bool preferred_phase(int var) const;

  std::vector<Lit> pool_;
  std::vector<ClauseRef> clauses_;
  std::vector<std::vector<int>> watches_;  // indexed by literal code
  std::vector<int8_t> assign_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  int qhead_ = 0;
  bool ok_ = true;

  std::vector<int8_t> model_;
  std::vector<Lit> core_;
  std::vector<uint8_t> seen_;

  std::int64_t conflict_budget_ = -1;  // per solve() call; -1 = unlimited
  std::int64_t total_conflicts_ = 0;
  std::uint64_t phase_seed_ = 0;
  int num_base_clauses_ = 0;
  mutable int branch_hint_ = 0;
};

}  // namespace stepex
