#include "stepex/nested.hpp"

#include <algorithm>
#include <set>

namespace stepex {

std::vector<NestedSequence> nested_explanations(const TheoryOracle& oracle,
                                                const Explanation& step,
                                                CandidateCache& cache,
                                                const EngineOptions& opts) {
  std::vector<NestedSequence> out;
  int num_atoms = oracle.num_atoms();
  for (Lit n : step.derived) {
    NestedSequence ns;
    ns.target = n;
    PartialInterpretation interp(num_atoms);
    for (Lit l : step.facts_used) interp.add(l);
    if (!interp.add(n.negated()))
      fail(ErrorCode::Internal, "counterfactual start is inconsistent");
    for (;;) {
      Explanation sub = min_explanation(oracle, interp, step.constraints_used,
                                        &cache, opts);
      if (sub.cost >= step.cost) {
        ns.complete = false;
        ns.blocking_cost = sub.cost;
        break;
      }
      bool clash = false;
      for (Lit l : sub.derived)
        if (!interp.add(l)) clash = true;
      ns.steps.push_back(std::move(sub));
      if (clash) {
        ns.complete = true;
        break;
      }
    }
    if (opts.prune_nested && ns.complete) {
      PartialInterpretation start(num_atoms);
      for (Lit l : step.facts_used) start.add(l);
      start.add(n.negated());
      prune_nested(ns, start);
    }
    out.push_back(std::move(ns));
  }
  return out;
}

void attach_nested(const TheoryOracle& oracle, ExplanationSequence& seq,
                   CandidateCache& cache, const EngineOptions& opts) {
  for (SequenceStep& step : seq.steps) {
    if (step.expl.cost < opts.nested_threshold) continue;
    step.expl.nested = nested_explanations(oracle, step.expl, cache, opts);
  }
}

void prune_nested(NestedSequence& ns, const PartialInterpretation& start) {
  if (!ns.complete || ns.steps.size() <= 1) return;
  int last = static_cast<int>(ns.steps.size()) - 1;

  // Literals the contradiction and the kept suffix depend on.
  std::set<int> needed;
  for (Lit l : ns.steps[last].facts_used) needed.insert(l.code);
  PartialInterpretation before_last = start;
  for (int i = 0; i < last; ++i)
    for (Lit l : ns.steps[i].derived) before_last.add(l);
  for (Lit l : ns.steps[last].derived)
    if (before_last.contains(l.negated()))
      needed.insert(l.negated().code);  // the other half of the clash

  std::vector<bool> keep(ns.steps.size(), false);
  keep[last] = true;
  for (int i = last - 1; i >= 0; --i) {
    bool used = std::any_of(ns.steps[i].derived.begin(),
                            ns.steps[i].derived.end(),
                            [&](Lit l) { return needed.count(l.code) > 0; });
    if (!used) continue;
    keep[i] = true;
    for (Lit l : ns.steps[i].facts_used) needed.insert(l.code);
  }
  std::vector<Explanation> kept;
  for (size_t i = 0; i < ns.steps.size(); ++i)
    if (keep[i]) kept.push_back(std::move(ns.steps[i]));
  ns.steps = std::move(kept);
}

}  // namespace stepex
