#include "stepex/consequence.hpp"

namespace stepex {

PartialInterpretation max_consequence(const TheoryOracle& oracle,
                                      const PartialInterpretation& interp,
                                      std::span<const int> enabled) {
  Solver solver = oracle.fresh();
  std::vector<Lit> assumptions;
  oracle.append_selectors(assumptions, enabled);
  oracle.append_interpretation(assumptions, interp);

  if (solver.solve(assumptions) == SolveStatus::Unsatisfiable)
    fail(ErrorCode::TheoryUnsatisfiable,
         "interpretation is inconsistent with the enabled constraints");

  // Candidate literals: the first model, minus what I already determines.
  int n = oracle.num_atoms();
  std::vector<Lit> candidates;
  for (int a = 0; a < n; ++a)
    if (!interp.determines(a))
      candidates.push_back(Lit::make(a, solver.model_value(a)));

  while (!candidates.empty()) {
    // Ask for a model violating at least one undetermined candidate.
    int blocker = solver.new_var();
    std::vector<Lit> clause{Lit::make(blocker, false)};
    for (Lit l : candidates) clause.push_back(l.negated());
    solver.add_clause(std::move(clause));
    assumptions.push_back(Lit::make(blocker, true));
    SolveStatus st = solver.solve(assumptions);
    assumptions.pop_back();
    if (st == SolveStatus::Unsatisfiable) break;
    std::erase_if(candidates,
                  [&](Lit l) { return solver.model_value(l.var()) != l.positive(); });
  }

  PartialInterpretation result = interp;
  for (Lit l : candidates)
    if (!result.add(l))
      fail(ErrorCode::Internal, "entailed literal clashes with interpretation");
  return result;
}

PartialInterpretation max_consequence(const TheoryOracle& oracle,
                                      const PartialInterpretation& interp) {
  return max_consequence(oracle, interp, oracle.theory().all_indices);
}

bool is_consistent(const TheoryOracle& oracle,
                   const PartialInterpretation& interp,
                   std::span<const int> enabled) {
  Solver solver = oracle.fresh();
  std::vector<Lit> assumptions;
  oracle.append_selectors(assumptions, enabled);
  oracle.append_interpretation(assumptions, interp);
  return solver.solve(assumptions) == SolveStatus::Satisfiable;
}

bool is_consistent(const TheoryOracle& oracle,
                   const PartialInterpretation& interp) {
  return is_consistent(oracle, interp, oracle.theory().all_indices);
}

std::optional<std::vector<Lit>> propagate_units(
    const TheoryOracle& oracle, const PartialInterpretation& interp,
    std::span<const int> enabled) {
  Solver solver = oracle.fresh();
  std::vector<Lit> assumptions;
  oracle.append_selectors(assumptions, enabled);
  oracle.append_interpretation(assumptions, interp);
  std::vector<Lit> trail;
  if (!solver.propagate_units(assumptions, trail)) return std::nullopt;
  std::vector<Lit> out;
  for (Lit l : trail)
    if (l.var() < oracle.num_atoms()) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace stepex
