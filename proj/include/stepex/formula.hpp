#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stepex/model.hpp"

namespace stepex {

// Clue formula over the vocabulary. Quantified variables are referenced by
// quantifier nesting depth (outermost = 0). Atom arguments are stored in
// the canonical relation orientation; a clue may write them in either order
// when the types disambiguate.
struct Formula {
  enum class Kind { Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall };

  struct Term {
    bool is_var = false;
    int var = -1;     // quantifier depth when is_var
    int entity = -1;  // entity index within `type` otherwise
    int type = -1;
  };

  Kind kind;
  int relation = -1;  // Atom
  Term a, b;          // Atom and Eq arguments
  int quant_type = -1;
  std::string quant_var;
  std::vector<std::shared_ptr<const Formula>> kids;
};

using FormulaPtr = std::shared_ptr<const Formula>;

// Parses the prefix syntax
//   (and f...) (or f...) (not f) (implies f f) (iff f f)
//   (exists v type f) (forall v type f) (atom rel term term) (eq term term)
// where a term is a bound variable or an entity symbol. Errors mention
// `clue_id`.
FormulaPtr parse_formula(const std::string& text, const Vocabulary& voc,
                         const std::string& clue_id);

std::string formula_to_string(const Formula& f, const Vocabulary& voc);

}  // namespace stepex
