#pragma once

#include <optional>
#include <span>
#include <vector>

#include "stepex/model.hpp"

namespace stepex {

// Interpretability cost parameters. clue_base must stay larger than any
// plausible |E| + constraint_weight * |S|.
struct CostParams {
  double clue_base = 100;
  double multi_implicit_base = 100;
  double constraint_weight = 5;
  double fact_weight = 1;
};

// basecost(S): 0 for a single implicit constraint, multi_implicit_base for
// several implicit constraints without a clue, clue_base per clue otherwise.
double basecost(const Theory& theory, std::span<const int> subset,
                const CostParams& params);

// f(E,S,N) = basecost(S) + fact_weight*|E| + constraint_weight*|S|.
// Throws Error(EmptyConstraintSet) when S is empty.
double explanation_cost(const Theory& theory, std::span<const Lit> facts,
                        std::span<const int> subset,
                        std::span<const Lit> derived,
                        const CostParams& params);

// Optimistic estimate g(S) = basecost(S); g(S) <= f(E,S,N) for every E, N.
double cost_lower_bound(const Theory& theory, std::span<const int> subset,
                        const CostParams& params);

// Ordered stream of candidate constraint subsets, non-decreasing in g:
// first every implicit-constraint singleton; then, per clue, the clue plus
// all implicit constraints, and the all-implicit set; then clue pairs,
// triples and so on, each padded with all implicit constraints. The
// exhaustive mode instead enumerates every subset of the allowed
// constraints in g order and is meant for small theories.
class CandidateSubsets {
public:
  CandidateSubsets(const Theory& theory, std::span<const int> allowed,
                   const CostParams& params, bool exhaustive = false);

  struct Item {
    std::vector<int> constraints;  // sorted theory indices
    double g;
  };

  std::optional<Item> next();

private:
  void refill();
  void refill_puzzle();
  void refill_exhaustive();

  const Theory* theory_;
  CostParams params_;
  bool exhaustive_;
  std::vector<int> clues_;
  std::vector<int> implicits_;
  std::vector<Item> tier_;
  size_t tier_pos_ = 0;
  int phase_ = 0;  // puzzle: 0 singletons, 1 clue tier, k>=2 clue k-tuples
  bool done_ = false;
};

}  // namespace stepex
