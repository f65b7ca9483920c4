#include "stepex/mus.hpp"

#include <algorithm>

namespace stepex {

namespace {

struct SoftSet {
  std::vector<Lit> facts;
  std::vector<int> constraints;

  bool contains_fact(Lit l) const {
    return std::binary_search(facts.begin(), facts.end(), l);
  }
  bool contains_constraint(int c) const {
    return std::binary_search(constraints.begin(), constraints.end(), c);
  }
};

std::vector<Lit> assumptions_for(const TheoryOracle& oracle,
                                 const std::optional<Lit>& hard,
                                 const SoftSet& soft) {
  std::vector<Lit> asmps;
  if (hard) asmps.push_back(*hard);
  oracle.append_selectors(asmps, soft.constraints);
  asmps.insert(asmps.end(), soft.facts.begin(), soft.facts.end());
  return asmps;
}

SoftSet core_restriction(const TheoryOracle& oracle, const Solver& solver,
                         const SoftSet& soft) {
  SoftSet out;
  for (Lit l : solver.core()) {
    int c = oracle.constraint_of(l);
    if (c >= 0) {
      if (soft.contains_constraint(c)) out.constraints.push_back(c);
    } else if (soft.contains_fact(l)) {
      out.facts.push_back(l);
    }
  }
  std::sort(out.facts.begin(), out.facts.end());
  std::sort(out.constraints.begin(), out.constraints.end());
  return out;
}

}  // namespace

MusResult extract_mus(const TheoryOracle& oracle, const MusQuery& query) {
  Solver solver = oracle.fresh();
  SoftSet soft;
  soft.facts = query.soft_facts;
  soft.constraints = query.soft_constraints;
  std::sort(soft.facts.begin(), soft.facts.end());
  std::sort(soft.constraints.begin(), soft.constraints.end());

  if (solver.solve(assumptions_for(oracle, query.hard, soft)) ==
      SolveStatus::Satisfiable)
    fail(ErrorCode::NotUnsat, "MUS query is satisfiable");
  SoftSet work = core_restriction(oracle, solver, soft);

  // Deletion pass over a fixed order: constraints first (theory order puts
  // clues before implicit constraints), then facts. A refined core from an
  // unsatisfiable probe drops unexamined members early.
  std::vector<int> constraint_order = work.constraints;
  std::vector<Lit> fact_order = work.facts;
  for (int c : constraint_order) {
    if (!work.contains_constraint(c)) continue;
    SoftSet probe = work;
    std::erase(probe.constraints, c);
    if (solver.solve(assumptions_for(oracle, query.hard, probe)) ==
        SolveStatus::Satisfiable)
      continue;  // c is necessary
    work = core_restriction(oracle, solver, probe);
  }
  for (Lit l : fact_order) {
    if (!work.contains_fact(l)) continue;
    SoftSet probe = work;
    std::erase(probe.facts, l);
    if (solver.solve(assumptions_for(oracle, query.hard, probe)) ==
        SolveStatus::Satisfiable)
      continue;
    work = core_restriction(oracle, solver, probe);
  }

  // Minimality verification.
  for (int c : work.constraints) {
    SoftSet probe = work;
    std::erase(probe.constraints, c);
    if (solver.solve(assumptions_for(oracle, query.hard, probe)) !=
        SolveStatus::Satisfiable)
      fail(ErrorCode::Internal, "MUS shrink left a removable constraint");
  }
  for (Lit l : work.facts) {
    SoftSet probe = work;
    std::erase(probe.facts, l);
    if (solver.solve(assumptions_for(oracle, query.hard, probe)) !=
        SolveStatus::Satisfiable)
      fail(ErrorCode::Internal, "MUS shrink left a removable fact");
  }
  return {work.facts, work.constraints};
}

Explanation mus_to_explanation(const Theory& theory, const MusQuery& query,
                               const MusResult& result,
                               const CostParams& params) {
  if (!query.hard)
    fail(ErrorCode::Internal, "explanation requires a hard literal");
  Explanation e;
  e.facts_used = result.facts;
  e.constraints_used = result.constraints;
  e.derived = {query.hard->negated()};
  e.cost = explanation_cost(theory, e.facts_used, e.constraints_used,
                            e.derived, params);
  return e;
}

}  // namespace stepex
