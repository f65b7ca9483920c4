#include "stepex/cost.hpp"

#include <algorithm>

namespace stepex {

double basecost(const Theory& theory, std::span<const int> subset,
                const CostParams& params) {
  if (subset.empty())
    fail(ErrorCode::EmptyConstraintSet, "cost of an empty constraint set");
  int nc = theory.num_clues(subset);
  if (nc == 0) return subset.size() == 1 ? 0.0 : params.multi_implicit_base;
  return params.clue_base * nc;
}

double explanation_cost(const Theory& theory, std::span<const Lit> facts,
                        std::span<const int> subset,
                        std::span<const Lit> derived,
                        const CostParams& params) {
  (void)derived;  // N does not contribute
  return basecost(theory, subset, params) +
         params.fact_weight * static_cast<double>(facts.size()) +
         params.constraint_weight * static_cast<double>(subset.size());
}

double cost_lower_bound(const Theory& theory, std::span<const int> subset,
                        const CostParams& params) {
  return basecost(theory, subset, params);
}

CandidateSubsets::CandidateSubsets(const Theory& theory,
                                   std::span<const int> allowed,
                                   const CostParams& params, bool exhaustive)
    : theory_(&theory), params_(params), exhaustive_(exhaustive) {
  for (int c : allowed) {
    if (theory.constraints[c].kind == ConstraintKind::Clue)
      clues_.push_back(c);
    else
      implicits_.push_back(c);
  }
  std::sort(clues_.begin(), clues_.end());
  std::sort(implicits_.begin(), implicits_.end());
  if (exhaustive_ && implicits_.size() > 16)
    fail(ErrorCode::Schema,
         "exhaustive subset enumeration is limited to 16 implicit constraints");
}

std::optional<CandidateSubsets::Item> CandidateSubsets::next() {
  while (tier_pos_ >= tier_.size()) {
    if (done_) return std::nullopt;
    refill();
  }
  return tier_[tier_pos_++];
}

void CandidateSubsets::refill() {
  tier_.clear();
  tier_pos_ = 0;
  if (exhaustive_)
    refill_exhaustive();
  else
    refill_puzzle();
}

namespace {

// Lexicographic k-combinations of {0..n-1}.
bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

void CandidateSubsets::refill_puzzle() {
  auto add = [&](std::vector<int> s) {
    double g = basecost(*theory_, s, params_);
    tier_.push_back({std::move(s), g});
  };
  if (phase_ == 0) {
    for (int c : implicits_) add({c});
    phase_ = 1;
    return;
  }
  if (phase_ == 1) {
    for (int c : clues_) {
      std::vector<int> s{c};
      s.insert(s.end(), implicits_.begin(), implicits_.end());
      std::sort(s.begin(), s.end());
      add(std::move(s));
    }
    if (!implicits_.empty()) add(implicits_);
    phase_ = 2;
    return;
  }
  int k = phase_;
  if (k > static_cast<int>(clues_.size())) {
    done_ = true;
    return;
  }
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  do {
    std::vector<int> s;
    for (int i : comb) s.push_back(clues_[i]);
    s.insert(s.end(), implicits_.begin(), implicits_.end());
    std::sort(s.begin(), s.end());
    add(std::move(s));
  } while (next_combination(comb, static_cast<int>(clues_.size())));
  ++phase_;
  if (phase_ > static_cast<int>(clues_.size())) done_ = true;
}

void CandidateSubsets::refill_exhaustive() {
  auto add = [&](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    double g = basecost(*theory_, s, params_);
    tier_.push_back({std::move(s), g});
  };
  int m = static_cast<int>(implicits_.size());
  // phase 0: implicit singletons (g = 0). phase k >= 1: every subset with
  // k-1 clues beyond the singletons, i.e. nc = 0 multi-implicit sets join
  // the one-clue tier at g = 100.
  if (phase_ == 0) {
    for (int c : implicits_) add({c});
    phase_ = 1;
    return;
  }
  int nc = phase_ - 1;
  if (nc > static_cast<int>(clues_.size())) {
    done_ = true;
    return;
  }
  std::vector<std::vector<int>> implicit_subsets;
  for (int size = 0; size <= m; ++size) {
    if (size == 0) {
      implicit_subsets.push_back({});
      continue;
    }
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    do {
      std::vector<int> s;
      for (int i : comb) s.push_back(implicits_[i]);
      implicit_subsets.push_back(std::move(s));
    } while (next_combination(comb, m));
  }
  if (nc == 0) {
    for (const auto& s : implicit_subsets)
      if (s.size() >= 2) add(s);
  } else {
    std::vector<int> comb(nc);
    for (int i = 0; i < nc; ++i) comb[i] = i;
    do {
      for (const auto& imp : implicit_subsets) {
        std::vector<int> s;
        for (int i : comb) s.push_back(clues_[i]);
        s.insert(s.end(), imp.begin(), imp.end());
        add(std::move(s));
      }
    } while (next_combination(comb, static_cast<int>(clues_.size())));
  }
  ++phase_;
  if (phase_ - 1 > static_cast<int>(clues_.size())) done_ = true;
}

}  // namespace stepex
