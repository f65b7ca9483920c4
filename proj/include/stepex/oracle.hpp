#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stepex/model.hpp"
#include "stepex/solver.hpp"

namespace stepex {

// Binds a grounded theory to the solver: every constraint's clauses are
// guarded by a dedicated selector variable, so constraint groups are
// enabled per call through assumptions and never rebuilt. fresh() hands out
// an independent solver over the same immutable clause database; callers
// own one instance per operation.
class TheoryOracle {
public:
  explicit TheoryOracle(const Theory& theory, std::uint64_t phase_seed = 0,
                        std::int64_t conflict_budget = kDefaultConflictBudget);

  const Theory& theory() const { return *theory_; }
  int num_atoms() const { return theory_->voc.num_atoms(); }

  Lit selector(int constraint_index) const {
    return Lit::make(selector_base_ + constraint_index, true);
  }
  // Maps a selector literal back to its constraint; -1 for other variables.
  int constraint_of(Lit selector) const;

  Solver fresh() const { return master_; }

  void append_selectors(std::vector<Lit>& assumptions,
                        std::span<const int> constraints) const;
  void append_interpretation(std::vector<Lit>& assumptions,
                             const PartialInterpretation& interp) const;

  static constexpr std::int64_t kDefaultConflictBudget = 4'000'000;

private:
  const Theory* theory_;
  Solver master_;
  int selector_base_;
};

}  // namespace stepex
