#include "stepex/oracle.hpp"

namespace stepex {

TheoryOracle::TheoryOracle(const Theory& theory, std::uint64_t phase_seed,
                           std::int64_t conflict_budget)
    : theory_(&theory), master_(theory.num_vars), selector_base_(theory.num_vars) {
  master_.set_phase_seed(phase_seed);
  master_.set_conflict_budget(conflict_budget);
  for (size_t i = 0; i < theory.constraints.size(); ++i) master_.new_var();
  for (size_t i = 0; i < theory.constraints.size(); ++i) {
    Lit guard = selector(static_cast<int>(i)).negated();
    for (const auto& clause : theory.constraints[i].clauses) {
      std::vector<Lit> guarded;
      guarded.reserve(clause.size() + 1);
      guarded.push_back(guard);
      guarded.insert(guarded.end(), clause.begin(), clause.end());
      master_.add_clause(std::move(guarded));
    }
  }
}

int TheoryOracle::constraint_of(Lit sel) const {
  int v = sel.var() - selector_base_;
  if (!sel.positive() || v < 0 ||
      v >= static_cast<int>(theory_->constraints.size()))
    return -1;
  return v;
}

void TheoryOracle::append_selectors(std::vector<Lit>& assumptions,
                                    std::span<const int> constraints) const {
  for (int c : constraints) assumptions.push_back(selector(c));
}

void TheoryOracle::append_interpretation(
    std::vector<Lit>& assumptions, const PartialInterpretation& interp) const {
  for (Lit l : interp.literals()) assumptions.push_back(l);
}

}  // namespace stepex
