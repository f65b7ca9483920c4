#pragma once

#include "stepex/explain.hpp"

namespace stepex {

// Per derived fact of the step: a by-contradiction sequence starting from
// the step's facts plus the negated fact, restricted to the step's
// constraints, every sub-step strictly cheaper than the step, ending when
// the sub-interpretation contains both signs of some atom. A sequence whose
// cheapest next sub-step would reach the parent cost is returned incomplete,
// with that blocking cost recorded.
std::vector<NestedSequence> nested_explanations(const TheoryOracle& oracle,
                                                const Explanation& step,
                                                CandidateCache& cache,
                                                const EngineOptions& opts);

// Attaches nested sequences to every step whose cost reaches the threshold.
void attach_nested(const TheoryOracle& oracle, ExplanationSequence& seq,
                   CandidateCache& cache, const EngineOptions& opts);

// Drops sub-steps whose derivations feed neither a later kept sub-step nor
// the final contradiction.
void prune_nested(NestedSequence& ns, const PartialInterpretation& start);

}  // namespace stepex
