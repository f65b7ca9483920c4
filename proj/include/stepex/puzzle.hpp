#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stepex/grounder.hpp"
#include "stepex/model.hpp"

namespace stepex {

// A loaded puzzle: grounded theory, initial interpretation, optional known
// solution expanded to a full grid, plus loader warnings (unequal domain
// sizes, non-unique solution).
struct LoadedPuzzle {
  std::string name;
  Theory theory;
  PartialInterpretation initial;
  std::optional<PartialInterpretation> solution;
  std::vector<std::string> warnings;
};

// Document format, version 1:
//   { "version": 1, "name": ...,
//     "types": [{"name":..., "entities":[...]}, ...],
//     "relations": [{"name":..., "first":..., "second":...}, ...],
//     "clues": [{"id":..., "text":..., "formula": "<prefix syntax>"}, ...],
//     "initial": ["lit", ...]            (optional)
//     "solution": {"rel": [["row","col"],...], ...}   (optional) }
// Errors: SchemaError / TypeError and friends name the offending clue;
// UnsatisfiablePuzzle when the grounded theory has no model. A known
// solution must satisfy the theory; a second model only produces a warning.
LoadedPuzzle load_puzzle(const nlohmann::json& doc);
LoadedPuzzle load_puzzle_file(const std::string& path);

nlohmann::json read_json_file(const std::string& path);

}  // namespace stepex
