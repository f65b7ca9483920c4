#pragma once

#include <optional>
#include <vector>

#include "stepex/cost.hpp"
#include "stepex/oracle.hpp"

namespace stepex {

// Soft fact literals and soft constraint groups, with an optional hard
// literal (the negated fact under explanation). The conjunction of all
// three must be unsatisfiable; the softs alone must be satisfiable when a
// hard literal is present.
struct MusQuery {
  std::optional<Lit> hard;
  std::vector<Lit> soft_facts;
  std::vector<int> soft_constraints;
};

struct MusResult {
  std::vector<Lit> facts;        // sorted by literal code
  std::vector<int> constraints;  // sorted theory indices
};

// Deletion-based shrinking seeded with the solver's assumption core.
// Removal candidates are tried constraints first (theory order puts clues
// before implicit constraints), then facts. The result is subset-minimal
// but not necessarily cardinality-minimal. Throws Error(NotUnsat) when the
// query is satisfiable.
MusResult extract_mus(const TheoryOracle& oracle, const MusQuery& query);

// Repackages a MUS as an explanation of the single hard fact:
// E = facts, S = constraints, N = {n}.
Explanation mus_to_explanation(const Theory& theory, const MusQuery& query,
                               const MusResult& result,
                               const CostParams& params);

}  // namespace stepex
