#pragma once

#include <string>
#include <vector>

#include "stepex/formula.hpp"
#include "stepex/model.hpp"

namespace stepex {

// One constraint per (relation, entity): the entity's row or column holds
// exactly one true atom. Encoded as an at-least-one clause plus pairwise
// at-most-one clauses.
std::vector<Constraint> generate_bijectivity(const Vocabulary& voc);

// One constraint per unordered type triple: every grounding of the three
// triangle implications linking the pairwise relations.
std::vector<Constraint> generate_transitivity(const Vocabulary& voc);

// Grounds a clue formula: quantifiers expanded over the finite domains,
// entity equality decided at grounding time, CNF via Tseitin definitions.
// Auxiliary variables are allocated from *next_var and owned by the
// returned constraint. Models of the clause set restricted to atom
// variables are exactly the models of the formula.
Constraint ground_clue(const FormulaPtr& formula, const Vocabulary& voc,
                       std::string id, std::string text, int* next_var);

// Full grounded theory: clues in the given order, then bijectivity, then
// transitivity.
Theory build_theory(Vocabulary voc,
                    const std::vector<FormulaPtr>& clue_formulas,
                    const std::vector<std::pair<std::string, std::string>>&
                        clue_ids_and_texts);

}  // namespace stepex
