#include "stepex/explain.hpp"

#include <algorithm>

#include "stepex/nested.hpp"

namespace stepex {

namespace {

std::vector<int> id_ranks(const Theory& theory, std::span<const int> subset) {
  std::vector<int> ranks;
  ranks.reserve(subset.size());
  for (int c : subset) ranks.push_back(theory.id_rank[c]);
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

bool subset_of(std::span<const int> a, std::span<const int> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool better_explanation(const Theory& theory, const Explanation& a,
                        const Explanation& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  auto ra = id_ranks(theory, a.constraints_used);
  auto rb = id_ranks(theory, b.constraints_used);
  if (ra != rb) return ra < rb;
  if (a.derived != b.derived) return a.derived < b.derived;
  return a.facts_used < b.facts_used;
}

void CandidateCache::store(const Theory& theory, const Explanation& e) {
  std::lock_guard<std::mutex> lock(mu_);
  for (Lit n : e.derived) {
    auto it = by_lit_.find(n.code);
    if (it == by_lit_.end())
      by_lit_.emplace(n.code, e);
    else if (better_explanation(theory, e, it->second))
      it->second = e;
  }
}

std::optional<Explanation> CandidateCache::best_applicable(
    const Theory& theory, const PartialInterpretation& interp,
    std::span<const int> allowed) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::optional<Explanation> best;
  for (const auto& [code, e] : by_lit_) {
    bool facts_known = std::all_of(e.facts_used.begin(), e.facts_used.end(),
                                   [&](Lit l) { return interp.contains(l); });
    if (!facts_known) continue;
    if (!subset_of(e.constraints_used, allowed)) continue;
    bool derives_new = std::any_of(e.derived.begin(), e.derived.end(),
                                   [&](Lit l) { return !interp.contains(l); });
    if (!derives_new) continue;
    if (!best || better_explanation(theory, e, *best)) best = e;
  }
  return best;
}

std::vector<Explanation> candidate_explanations(const TheoryOracle& oracle,
                                                const PartialInterpretation& interp,
                                                std::span<const int> subset,
                                                const CostParams& params) {
  const Theory& theory = oracle.theory();
  std::vector<Explanation> out;
  if (is_consistent(oracle, interp, subset)) {
    PartialInterpretation consequence = max_consequence(oracle, interp, subset);
    for (Lit n : consequence.literals()) {
      if (interp.contains(n)) continue;
      MusQuery q{n.negated(), interp.literals(),
                 std::vector<int>(subset.begin(), subset.end())};
      MusResult r = extract_mus(oracle, q);
      Explanation e = mus_to_explanation(theory, q, r, params);
      // Subset-maximal N: everything the used facts and constraints entail.
      PartialInterpretation used(interp.num_atoms());
      for (Lit l : e.facts_used) used.add(l);
      PartialInterpretation entailed =
          max_consequence(oracle, used, e.constraints_used);
      e.derived.clear();
      for (Lit l : entailed.literals())
        if (!used.contains(l)) e.derived.push_back(l);
      e.cost = explanation_cost(theory, e.facts_used, e.constraints_used,
                                e.derived, params);
      out.push_back(std::move(e));
    }
    return out;
  }
  // The interpretation contradicts the subset (reachable only inside nested
  // runs). One conflict MUS, rotated: each core fact in turn is derived
  // negated from the others.
  MusQuery q{std::nullopt, interp.literals(),
             std::vector<int>(subset.begin(), subset.end())};
  MusResult r = extract_mus(oracle, q);
  for (Lit pivot : r.facts) {
    Explanation e;
    e.constraints_used = r.constraints;
    for (Lit l : r.facts)
      if (l != pivot) e.facts_used.push_back(l);
    PartialInterpretation used(interp.num_atoms());
    for (Lit l : e.facts_used) used.add(l);
    PartialInterpretation entailed =
        max_consequence(oracle, used, e.constraints_used);
    for (Lit l : entailed.literals())
      if (!used.contains(l)) e.derived.push_back(l);
    e.cost = explanation_cost(theory, e.facts_used, e.constraints_used,
                              e.derived, params);
    out.push_back(std::move(e));
  }
  return out;
}

Explanation min_explanation(const TheoryOracle& oracle,
                            const PartialInterpretation& interp,
                            std::span<const int> allowed,
                            CandidateCache* cache, const EngineOptions& opts) {
  const Theory& theory = oracle.theory();
  std::optional<Explanation> best;
  if (cache) best = cache->best_applicable(theory, interp, allowed);
  CandidateSubsets stream(theory, allowed, opts.params, opts.exhaustive_subsets);
  while (auto item = stream.next()) {
    if (best && item->g > best->cost) break;
    for (Explanation& cand :
         candidate_explanations(oracle, interp, item->constraints, opts.params)) {
      if (cache) cache->store(theory, cand);
      if (!best || better_explanation(theory, cand, *best))
        best = std::move(cand);
    }
  }
  if (!best)
    fail(ErrorCode::NothingToExplain,
         "interpretation is already precision-maximal");
  return *best;
}

ExplanationSequence greedy_explain(const TheoryOracle& oracle,
                                   const PartialInterpretation& initial,
                                   const EngineOptions& opts) {
  ExplanationSequence seq;
  seq.initial = initial;
  seq.final_interp = max_consequence(oracle, initial);

  CandidateCache cache;
  PartialInterpretation interp = initial;
  while (!(interp == seq.final_interp)) {
    Explanation step = min_explanation(oracle, interp,
                                       oracle.theory().all_indices, &cache, opts);
    PartialInterpretation after = interp;
    for (Lit l : step.derived)
      if (!after.add(l))
        fail(ErrorCode::Internal, "derived facts clash with the interpretation");
    if (after.size() <= interp.size())
      fail(ErrorCode::Internal, "explanation step derives nothing new");
    seq.steps.push_back({static_cast<int>(seq.steps.size()) + 1,
                         std::move(step), after});
    interp = std::move(after);
  }
  if (opts.nested) attach_nested(oracle, seq, cache, opts);
  return seq;
}

}  // namespace stepex
