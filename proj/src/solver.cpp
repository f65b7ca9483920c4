#include "stepex/solver.hpp"

#include <algorithm>
#include <ostream>

#include "stepex/errors.hpp"

namespace stepex {

namespace {

// Luby restart sequence: 1 1 2 1 1 2 4 ...
std::int64_t luby(std::int64_t i) {
  std::int64_t k = 1;
  while ((1LL << k) - 1 < i + 1) ++k;
  while ((1LL << k) - 1 != i + 1) {
    --k;
    i -= (1LL << k) - 1;
  }
  return 1LL << (k - 1);
}

constexpr std::int64_t kRestartUnit = 128;

}  // namespace

Solver::Solver(int num_vars) {
  for (int i = 0; i < num_vars; ++i) new_var();
}

int Solver::new_var() {
  int v = num_vars();
  assign_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return v;
}

void Solver::add_clause(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    if (lits[i].var() == lits[i + 1].var()) return;  // tautology
  // Strip literals already false at level 0, stop on a true one.
  if (decision_level() != 0) cancel_until(0);
  std::vector<Lit> kept;
  for (Lit l : lits) {
    if (l.var() >= num_vars()) fail(ErrorCode::Internal, "literal out of range");
    int v = value(l);
    if (v > 0 && level_[l.var()] == 0) return;
    if (v < 0 && level_[l.var()] == 0) continue;
    kept.push_back(l);
  }
  ++num_base_clauses_;
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    if (value(kept[0]) < 0) {
      ok_ = false;
      return;
    }
    if (value(kept[0]) == 0) enqueue(kept[0], -1);
    return;
  }
  int ci = static_cast<int>(clauses_.size());
  clauses_.push_back({static_cast<int>(pool_.size()),
                      static_cast<int>(kept.size()), false});
  pool_.insert(pool_.end(), kept.begin(), kept.end());
  attach(ci);
}

void Solver::attach(int ci) {
  const ClauseRef& c = clauses_[ci];
  watches_[pool_[c.begin].negated().code].push_back(ci);
  watches_[pool_[c.begin + 1].negated().code].push_back(ci);
}

void Solver::enqueue(Lit l, int reason) {
  assign_[l.var()] = l.positive() ? 1 : -1;
  level_[l.var()] = decision_level();
  reason_[l.var()] = reason;
  trail_.push_back(l);
}

int Solver::propagate() {
  while (qhead_ < static_cast<int>(trail_.size())) {
    Lit p = trail_[qhead_++];
    std::vector<int>& ws = watches_[p.code];
    size_t keep = 0;
    for (size_t i = 0; i < ws.size(); ++i) {
      int ci = ws[i];
      ClauseRef& c = clauses_[ci];
      Lit* lits = &pool_[c.begin];
      Lit falsified = p.negated();
      if (lits[0] == falsified) std::swap(lits[0], lits[1]);
      // lits[1] == falsified
      if (value(lits[0]) > 0) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (int k = 2; k < c.size; ++k) {
        if (value(lits[k]) >= 0) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1].negated().code].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[keep++] = ci;
      if (value(lits[0]) < 0) {
        // conflict: keep remaining watches, reset queue
        for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
        ws.resize(keep);
        qhead_ = static_cast<int>(trail_.size());
        return ci;
      }
      enqueue(lits[0], ci);
    }
    ws.resize(keep);
  }
  return -1;
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& bt_level) {
  learnt.clear();
  learnt.push_back(kNoLit);  // slot for the asserting literal
  std::vector<int> to_clear;
  int path = 0;
  Lit p = kNoLit;
  int idx = static_cast<int>(trail_.size()) - 1;
  int cur = confl;
  do {
    const ClauseRef& c = clauses_[cur];
    for (int k = 0; k < c.size; ++k) {
      Lit q = pool_[c.begin + k];
      if (p.valid() && q == p) continue;  // the literal being resolved away
      int v = q.var();
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        to_clear.push_back(v);
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[trail_[idx].var()]) --idx;
    p = trail_[idx];
    --path;
    if (path > 0) {
      cur = reason_[p.var()];
      seen_[p.var()] = 0;
      --idx;
    }
  } while (path > 0);
  learnt[0] = p.negated();

  bt_level = 0;
  if (learnt.size() > 1) {
    size_t max_i = 1;
    for (size_t i = 2; i < learnt.size(); ++i)
      if (level_[learnt[i].var()] > level_[learnt[max_i].var()]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level_[learnt[1].var()];
  }
  for (int v : to_clear) seen_[v] = 0;
}

// Collects the assumptions responsible for forcing ~p; p itself is part of
// the core.
void Solver::analyze_final(Lit p) {
  core_.clear();
  core_.push_back(p);
  if (decision_level() == 0) return;
  std::vector<int> to_clear;
  seen_[p.var()] = 1;
  to_clear.push_back(p.var());
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[0]; --i) {
    int v = trail_[i].var();
    if (!seen_[v]) continue;
    if (reason_[v] == -1) {
      core_.push_back(trail_[i]);
    } else {
      const ClauseRef& c = clauses_[reason_[v]];
      for (int k = 0; k < c.size; ++k) {
        int w = pool_[c.begin + k].var();
        if (w != v && level_[w] > 0 && !seen_[w]) {
          seen_[w] = 1;
          to_clear.push_back(w);
        }
      }
    }
  }
  for (int v : to_clear) seen_[v] = 0;
  std::sort(core_.begin(), core_.end());
  core_.erase(std::unique(core_.begin(), core_.end()), core_.end());
}

void Solver::cancel_until(int lvl) {
  if (decision_level() <= lvl) return;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[lvl]; --i)
    assign_[trail_[i].var()] = 0;
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = static_cast<int>(trail_.size());
  branch_hint_ = 0;
}

int Solver::add_learnt_clause(std::vector<Lit>& lits) {
  if (lits.size() == 1) {
    enqueue(lits[0], -1);
    return -1;
  }
  int ci = static_cast<int>(clauses_.size());
  clauses_.push_back({static_cast<int>(pool_.size()),
                      static_cast<int>(lits.size()), true});
  pool_.insert(pool_.end(), lits.begin(), lits.end());
  attach(ci);
  enqueue(lits[0], ci);
  return ci;
}

bool Solver::preferred_phase(int var) const {
  if (phase_seed_ == 0) return true;
  std::uint64_t h = (static_cast<std::uint64_t>(var) + 1) * 0x9e3779b97f4a7c15ULL;
  h ^= phase_seed_;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return (h & 1) == 0;
}

Lit Solver::pick_branch() const {
  for (int v = branch_hint_; v < num_vars(); ++v) {
    if (assign_[v] == 0) {
      branch_hint_ = v;
      return Lit::make(v, preferred_phase(v));
    }
  }
  return kNoLit;
}

SolveStatus Solver::solve(std::span<const Lit> assumptions) {
  cancel_until(0);
  core_.clear();
  for (Lit a : assumptions)
    if (!a.valid() || a.var() >= num_vars())
      fail(ErrorCode::Internal, "assumption out of range");
  if (!ok_) return SolveStatus::Unsatisfiable;

  std::int64_t conflicts = 0;
  std::int64_t restart_round = 0;
  std::int64_t next_restart = luby(restart_round) * kRestartUnit;
  std::vector<Lit> learnt;

  for (;;) {
    int confl = propagate();
    if (confl != -1) {
      ++conflicts;
      ++total_conflicts_;
      if (conflict_budget_ >= 0 && conflicts > conflict_budget_)
        fail(ErrorCode::ResourceLimit, "solver conflict budget exceeded");
      if (decision_level() == 0) {
        ok_ = false;
        return SolveStatus::Unsatisfiable;
      }
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      add_learnt_clause(learnt);
      continue;
    }
    if (conflicts >= next_restart && decision_level() > 0) {
      ++restart_round;
      next_restart = conflicts + luby(restart_round) * kRestartUnit;
      cancel_until(0);
      continue;
    }
    Lit next = kNoLit;
    while (decision_level() < static_cast<int>(assumptions.size())) {
      Lit a = assumptions[decision_level()];
      if (value(a) > 0) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (value(a) < 0) {
        analyze_final(a);
        cancel_until(0);
        return SolveStatus::Unsatisfiable;
      } else {
        next = a;
        break;
      }
    }
    if (!next.valid()) next = pick_branch();
    if (!next.valid()) {
      model_.assign(assign_.begin(), assign_.end());
      cancel_until(0);
      return SolveStatus::Satisfiable;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, -1);
  }
}

bool Solver::propagate_units(std::span<const Lit> assumptions,
                             std::vector<Lit>& out) {
  out.clear();
  cancel_until(0);
  if (!ok_) return false;
  if (propagate() != -1) {
    ok_ = false;
    return false;
  }
  trail_lim_.push_back(static_cast<int>(trail_.size()));
  bool conflict = false;
  for (Lit a : assumptions) {
    if (value(a) < 0) {
      conflict = true;
      break;
    }
    if (value(a) == 0) enqueue(a, -1);
  }
  if (!conflict && propagate() != -1) conflict = true;
  if (!conflict) out.assign(trail_.begin(), trail_.end());
  cancel_until(0);
  return !conflict;
}

void Solver::to_dimacs(std::ostream& os) const {
  os << "p cnf " << num_vars() << ' ' << num_base_clauses_ << '\n';
  // Unit base clauses live on the level-0 trail.
  int emitted = 0;
  for (size_t i = 0; i < trail_.size(); ++i) {
    if (decision_level() > 0 &&
        static_cast<int>(i) >= trail_lim_[0])
      break;
    if (reason_[trail_[i].var()] == -1) {
      Lit l = trail_[i];
      os << (l.positive() ? l.var() + 1 : -(l.var() + 1)) << " 0\n";
      ++emitted;
    }
  }
  for (const ClauseRef& c : clauses_) {
    if (c.learnt) continue;
    for (int k = 0; k < c.size; ++k) {
      Lit l = pool_[c.begin + k];
      os << (l.positive() ? l.var() + 1 : -(l.var() + 1)) << ' ';
    }
    os << "0\n";
    ++emitted;
  }
}

}  // namespace stepex
