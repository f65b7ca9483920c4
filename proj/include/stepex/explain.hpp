#pragma once

#include <map>
#include <mutex>
#include <optional>

#include "stepex/consequence.hpp"
#include "stepex/cost.hpp"
#include "stepex/mus.hpp"
#include "stepex/oracle.hpp"

namespace stepex {

struct EngineOptions {
  CostParams params;
  bool nested = true;
  double nested_threshold = 100;
  bool prune_nested = true;
  bool exhaustive_subsets = false;
  std::uint64_t seed = 0;
};

// Strict total order on candidates: lower cost first, ties broken by the
// id-sorted constraint tuple, then the derived literals, then the facts.
bool better_explanation(const Theory& theory, const Explanation& a,
                        const Explanation& b);

// Best known explanation per derived literal. Entries are reusable once
// their facts are contained in the current interpretation and their
// constraints in the current search set; both only become true over time.
class CandidateCache {
public:
  void store(const Theory& theory, const Explanation& e);
  std::optional<Explanation> best_applicable(
      const Theory& theory, const PartialInterpretation& interp,
      std::span<const int> allowed) const;

private:
  std::map<int, Explanation> by_lit_;  // keyed by literal code
  mutable std::mutex mu_;
};

// Minimal explanations of every fact derivable from I with the given
// constraint subset. With a consistent subset this is one candidate per
// fact of max_consequence(I, S) \ I, its derived set taken subset-maximal.
// When I contradicts the subset (nested runs only), the candidates are the
// rotations of one conflict MUS: each presents the negation of one core
// fact as derivable from the remaining ones.
std::vector<Explanation> candidate_explanations(const TheoryOracle& oracle,
                                                const PartialInterpretation& interp,
                                                std::span<const int> subset,
                                                const CostParams& params);

// Cost-minimal explanation over the candidate-subset stream, with early
// termination once the optimistic bound exceeds the best cost found. The
// cache, when given, seeds the bound and receives every candidate. Throws
// Error(NothingToExplain) when no subset yields a candidate.
Explanation min_explanation(const TheoryOracle& oracle,
                            const PartialInterpretation& interp,
                            std::span<const int> allowed,
                            CandidateCache* cache, const EngineOptions& opts);

struct SequenceStep {
  int index;  // 1-based
  Explanation expl;
  PartialInterpretation after;
};

struct ExplanationSequence {
  PartialInterpretation initial;
  PartialInterpretation final_interp;
  std::vector<SequenceStep> steps;
};

// Greedy construction: repeatedly apply the cheapest explanation until the
// interpretation reaches max_consequence(I0, T). Nested explanations are
// attached afterwards when enabled.
ExplanationSequence greedy_explain(const TheoryOracle& oracle,
                                   const PartialInterpretation& initial,
                                   const EngineOptions& opts);

}  // namespace stepex
