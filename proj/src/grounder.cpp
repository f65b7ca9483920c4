#include "stepex/grounder.hpp"

#include <algorithm>

namespace stepex {

namespace {

// Propositional tree in negation normal form over atom literals.
struct Prop {
  enum class Kind { True, False, Lit, And, Or };
  Kind kind;
  Lit lit;
  std::vector<Prop> kids;

  static Prop constant(bool b) {
    return {b ? Kind::True : Kind::False, kNoLit, {}};
  }
  static Prop literal(Lit l) { return {Kind::Lit, l, {}}; }
};

Prop make_junction(Prop::Kind kind, std::vector<Prop> kids) {
  // Constant folding and flattening of nested same-kind junctions.
  bool is_and = kind == Prop::Kind::And;
  std::vector<Prop> out;
  for (Prop& k : kids) {
    if (k.kind == Prop::Kind::True) {
      if (!is_and) return Prop::constant(true);
      continue;
    }
    if (k.kind == Prop::Kind::False) {
      if (is_and) return Prop::constant(false);
      continue;
    }
    if (k.kind == kind) {
      for (Prop& g : k.kids) out.push_back(std::move(g));
      continue;
    }
    out.push_back(std::move(k));
  }
  if (out.empty()) return Prop::constant(is_and);
  if (out.size() == 1) return std::move(out[0]);
  return {kind, kNoLit, std::move(out)};
}

int resolve_entity(const Formula::Term& t, const std::vector<int>& env) {
  return t.is_var ? env[t.var] : t.entity;
}

// Expands quantifiers and evaluates equality, producing NNF directly.
// `positive` is the polarity of the subformula.
Prop expand(const Formula& f, const Vocabulary& voc, std::vector<int>& env,
            bool positive) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom: {
      int row = resolve_entity(f.a, env);
      int col = resolve_entity(f.b, env);
      return Prop::literal(
          Lit::make(voc.atom_id(f.relation, row, col), positive));
    }
    case K::Eq:
      return Prop::constant((resolve_entity(f.a, env) ==
                             resolve_entity(f.b, env)) == positive);
    case K::Not:
      return expand(*f.kids[0], voc, env, !positive);
    case K::And:
    case K::Or: {
      bool conj = (f.kind == K::And) == positive;
      std::vector<Prop> kids;
      kids.reserve(f.kids.size());
      for (const auto& k : f.kids) kids.push_back(expand(*k, voc, env, positive));
      return make_junction(conj ? Prop::Kind::And : Prop::Kind::Or,
                           std::move(kids));
    }
    case K::Implies: {
      std::vector<Prop> kids;
      kids.push_back(expand(*f.kids[0], voc, env, !positive));
      kids.push_back(expand(*f.kids[1], voc, env, positive));
      return make_junction(positive ? Prop::Kind::Or : Prop::Kind::And,
                           std::move(kids));
    }
    case K::Iff: {
      // (a -> b) and (b -> a); negated: (a or b) and (~a or ~b)
      std::vector<Prop> left, right;
      if (positive) {
        left.push_back(expand(*f.kids[0], voc, env, false));
        left.push_back(expand(*f.kids[1], voc, env, true));
        right.push_back(expand(*f.kids[1], voc, env, false));
        right.push_back(expand(*f.kids[0], voc, env, true));
      } else {
        left.push_back(expand(*f.kids[0], voc, env, true));
        left.push_back(expand(*f.kids[1], voc, env, true));
        right.push_back(expand(*f.kids[0], voc, env, false));
        right.push_back(expand(*f.kids[1], voc, env, false));
      }
      std::vector<Prop> both;
      both.push_back(make_junction(Prop::Kind::Or, std::move(left)));
      both.push_back(make_junction(Prop::Kind::Or, std::move(right)));
      return make_junction(Prop::Kind::And, std::move(both));
    }
    case K::Exists:
    case K::Forall: {
      bool conj = (f.kind == K::Forall) == positive;
      int domain =
          static_cast<int>(voc.type(f.quant_type).entities.size());
      std::vector<Prop> kids;
      kids.reserve(domain);
      env.push_back(0);
      for (int e = 0; e < domain; ++e) {
        env.back() = e;
        kids.push_back(expand(*f.kids[0], voc, env, positive));
      }
      env.pop_back();
      return make_junction(conj ? Prop::Kind::And : Prop::Kind::Or,
                           std::move(kids));
    }
  }
  fail(ErrorCode::Internal, "unreachable formula kind");
}

class Clausifier {
public:
  Clausifier(std::vector<std::vector<Lit>>& out, int* next_var)
      : out_(out), next_var_(next_var) {}

  // Top level: conjunctions split into separate clauses, disjunctions of
  // literals become plain clauses, deeper structure gets Tseitin variables.
  void top(const Prop& p) {
    switch (p.kind) {
      case Prop::Kind::True:
        return;
      case Prop::Kind::False: {
        int aux = (*next_var_)++;
        emit({Lit::make(aux, true)});
        emit({Lit::make(aux, false)});
        return;
      }
      case Prop::Kind::Lit:
        emit({p.lit});
        return;
      case Prop::Kind::And:
        for (const Prop& k : p.kids) top(k);
        return;
      case Prop::Kind::Or: {
        std::vector<Lit> clause;
        for (const Prop& k : p.kids) clause.push_back(define(k));
        emit(std::move(clause));
        return;
      }
    }
  }

private:
  // Returns a literal equivalent to the subtree, introducing an auxiliary
  // variable for internal nodes. Both implication directions are encoded.
  Lit define(const Prop& p) {
    switch (p.kind) {
      case Prop::Kind::Lit:
        return p.lit;
      case Prop::Kind::And: {
        std::vector<Lit> kid_lits;
        for (const Prop& k : p.kids) kid_lits.push_back(define(k));
        Lit aux = Lit::make((*next_var_)++, true);
        std::vector<Lit> reverse{aux};
        for (Lit l : kid_lits) {
          emit({aux.negated(), l});
          reverse.push_back(l.negated());
        }
        emit(std::move(reverse));
        return aux;
      }
      case Prop::Kind::Or: {
        std::vector<Lit> kid_lits;
        for (const Prop& k : p.kids) kid_lits.push_back(define(k));
        Lit aux = Lit::make((*next_var_)++, true);
        std::vector<Lit> forward{aux.negated()};
        for (Lit l : kid_lits) {
          emit({aux, l.negated()});
          forward.push_back(l);
        }
        emit(std::move(forward));
        return aux;
      }
      default:
        fail(ErrorCode::Internal, "constants must be folded before Tseitin");
    }
  }

  void emit(std::vector<Lit> clause) {
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (size_t i = 0; i + 1 < clause.size(); ++i)
      if (clause[i].var() == clause[i + 1].var()) return;  // tautology
    out_.push_back(std::move(clause));
  }

  std::vector<std::vector<Lit>>& out_;
  int* next_var_;
};

}  // namespace

std::vector<Constraint> generate_bijectivity(const Vocabulary& voc) {
  std::vector<Constraint> out;
  for (int r = 0; r < voc.num_relations(); ++r) {
    const RelationDecl& rel = voc.relation(r);
    const auto& rows = voc.type(rel.first_type).entities;
    const auto& cols = voc.type(rel.second_type).entities;
    for (size_t i = 0; i < rows.size(); ++i) {
      Constraint c;
      c.id = "bij_" + rel.name + "_" + rows[i];
      c.kind = ConstraintKind::Bijectivity;
      c.text = rows[i] + " " + rel.name + " exactly one " +
               voc.type(rel.second_type).name;
      std::vector<Lit> alo;
      for (size_t j = 0; j < cols.size(); ++j)
        alo.push_back(Lit::make(voc.atom_id(r, static_cast<int>(i),
                                            static_cast<int>(j)),
                                true));
      c.clauses.push_back(alo);
      for (size_t j = 0; j < cols.size(); ++j)
        for (size_t k = j + 1; k < cols.size(); ++k)
          c.clauses.push_back({alo[j].negated(), alo[k].negated()});
      out.push_back(std::move(c));
    }
    for (size_t j = 0; j < cols.size(); ++j) {
      Constraint c;
      c.id = "bij_" + rel.name + "_" + cols[j];
      c.kind = ConstraintKind::Bijectivity;
      c.text = "exactly one " + voc.type(rel.first_type).name + " " +
               rel.name + " " + cols[j];
      std::vector<Lit> alo;
      for (size_t i = 0; i < rows.size(); ++i)
        alo.push_back(Lit::make(voc.atom_id(r, static_cast<int>(i),
                                            static_cast<int>(j)),
                                true));
      c.clauses.push_back(alo);
      for (size_t i = 0; i < rows.size(); ++i)
        for (size_t k = i + 1; k < rows.size(); ++k)
          c.clauses.push_back({alo[i].negated(), alo[k].negated()});
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Constraint> generate_transitivity(const Vocabulary& voc) {
  std::vector<Constraint> out;
  auto cell = [&](int ta, int ea, int tb, int eb) {
    auto rel = voc.relation_between(ta, tb);
    if (!rel) fail(ErrorCode::Internal, "missing relation in finalized vocabulary");
    return rel->second ? Lit::make(voc.atom_id(rel->first, eb, ea), true)
                       : Lit::make(voc.atom_id(rel->first, ea, eb), true);
  };
  for (int t1 = 0; t1 < voc.num_types(); ++t1) {
    for (int t2 = t1 + 1; t2 < voc.num_types(); ++t2) {
      for (int t3 = t2 + 1; t3 < voc.num_types(); ++t3) {
        Constraint c;
        c.id = "trans_" + voc.type(t1).name + "_" + voc.type(t2).name + "_" +
               voc.type(t3).name;
        c.kind = ConstraintKind::Transitivity;
        c.text = "the " + voc.type(t1).name + ", " + voc.type(t2).name +
                 " and " + voc.type(t3).name + " assignments agree";
        int n1 = static_cast<int>(voc.type(t1).entities.size());
        int n2 = static_cast<int>(voc.type(t2).entities.size());
        int n3 = static_cast<int>(voc.type(t3).entities.size());
        for (int x = 0; x < n1; ++x) {
          for (int y = 0; y < n2; ++y) {
            for (int z = 0; z < n3; ++z) {
              Lit a = cell(t1, x, t2, y);
              Lit b = cell(t2, y, t3, z);
              Lit d = cell(t1, x, t3, z);
              c.clauses.push_back({a.negated(), b.negated(), d});
              c.clauses.push_back({a.negated(), d.negated(), b});
              c.clauses.push_back({b.negated(), d.negated(), a});
            }
          }
        }
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

Constraint ground_clue(const FormulaPtr& formula, const Vocabulary& voc,
                       std::string id, std::string text, int* next_var) {
  Constraint c;
  c.id = std::move(id);
  c.kind = ConstraintKind::Clue;
  c.text = std::move(text);
  std::vector<int> env;
  Prop nnf = expand(*formula, voc, env, true);
  Clausifier(c.clauses, next_var).top(nnf);
  std::sort(c.clauses.begin(), c.clauses.end());
  c.clauses.erase(std::unique(c.clauses.begin(), c.clauses.end()),
                  c.clauses.end());
  return c;
}

Theory build_theory(Vocabulary voc,
                    const std::vector<FormulaPtr>& clue_formulas,
                    const std::vector<std::pair<std::string, std::string>>&
                        clue_ids_and_texts) {
  if (clue_formulas.size() != clue_ids_and_texts.size())
    fail(ErrorCode::Internal, "clue metadata size mismatch");
  Theory t;
  t.voc = std::move(voc);
  t.voc.finalize();
  int next_var = t.voc.num_atoms();
  for (size_t i = 0; i < clue_formulas.size(); ++i)
    t.constraints.push_back(ground_clue(clue_formulas[i], t.voc,
                                        clue_ids_and_texts[i].first,
                                        clue_ids_and_texts[i].second,
                                        &next_var));
  for (auto& c : generate_bijectivity(t.voc)) t.constraints.push_back(std::move(c));
  for (auto& c : generate_transitivity(t.voc)) t.constraints.push_back(std::move(c));
  t.num_vars = next_var;
  t.finalize();
  return t;
}

}  // namespace stepex
