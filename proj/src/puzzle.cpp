#include "stepex/puzzle.hpp"

#include <fstream>

#include "stepex/oracle.hpp"

namespace stepex {

namespace {

const nlohmann::json& field(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end())
    fail(ErrorCode::Schema, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const nlohmann::json& doc, const char* key) {
  const auto& v = field(doc, key);
  if (!v.is_string())
    fail(ErrorCode::Schema, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Schema, "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Schema, path + ": " + e.what());
  }
  return doc;
}

LoadedPuzzle load_puzzle(const nlohmann::json& doc) {
  if (!doc.is_object()) fail(ErrorCode::Schema, "puzzle document must be an object");
  if (field(doc, "version").get<int>() != 1)
    fail(ErrorCode::Schema, "unsupported puzzle document version");

  LoadedPuzzle out;
  out.name = string_field(doc, "name");

  Vocabulary voc;
  for (const auto& t : field(doc, "types")) {
    std::vector<std::string> entities;
    for (const auto& e : field(t, "entities")) entities.push_back(e.get<std::string>());
    voc.add_type(string_field(t, "name"), std::move(entities));
  }
  for (const auto& r : field(doc, "relations"))
    voc.add_relation(string_field(r, "name"), string_field(r, "first"),
                     string_field(r, "second"));
  voc.finalize();
  if (!voc.equal_domain_sizes())
    out.warnings.push_back("type domains are not equally sized");

  std::vector<FormulaPtr> formulas;
  std::vector<std::pair<std::string, std::string>> id_text;
  for (const auto& c : field(doc, "clues")) {
    std::string id = string_field(c, "id");
    formulas.push_back(parse_formula(string_field(c, "formula"), voc, id));
    id_text.emplace_back(id, string_field(c, "text"));
  }
  out.theory = build_theory(std::move(voc), formulas, id_text);
  const Vocabulary& v = out.theory.voc;

  out.initial = PartialInterpretation(v.num_atoms());
  if (doc.contains("initial")) {
    for (const auto& s : doc["initial"]) {
      auto lit = v.parse_lit(s.get<std::string>());
      if (!lit)
        fail(ErrorCode::Schema, "unparsable initial literal '" +
                                    s.get<std::string>() + "'");
      if (!out.initial.add(*lit))
        fail(ErrorCode::Schema, "initial interpretation is inconsistent at '" +
                                    s.get<std::string>() + "'");
    }
  }

  TheoryOracle oracle(out.theory);
  Solver solver = oracle.fresh();
  std::vector<Lit> assumptions;
  oracle.append_selectors(assumptions, out.theory.all_indices);
  oracle.append_interpretation(assumptions, out.initial);
  if (solver.solve(assumptions) == SolveStatus::Unsatisfiable)
    fail(ErrorCode::UnsatisfiablePuzzle,
         "puzzle '" + out.name + "' has no solution");

  // Uniqueness probe: block the model found and ask again.
  {
    std::vector<Lit> block;
    int guard = solver.new_var();
    block.push_back(Lit::make(guard, false));
    for (int a = 0; a < v.num_atoms(); ++a)
      block.push_back(Lit::make(a, !solver.model_value(a)));
    solver.add_clause(std::move(block));
    assumptions.push_back(Lit::make(guard, true));
    if (solver.solve(assumptions) == SolveStatus::Satisfiable)
      out.warnings.push_back(
          "puzzle does not have a unique solution; the explained consequence "
          "will be partial");
    assumptions.pop_back();
  }

  if (doc.contains("solution")) {
    const auto& sol = doc["solution"];
    PartialInterpretation full(v.num_atoms());
    boost::dynamic_bitset<> seen(v.num_atoms());
    for (auto it = sol.begin(); it != sol.end(); ++it) {
      auto rel = v.find_relation(it.key());
      if (!rel) fail(ErrorCode::Schema, "solution references unknown relation '" +
                                            it.key() + "'");
      for (const auto& pair : it.value()) {
        if (!pair.is_array() || pair.size() != 2)
          fail(ErrorCode::Schema, "solution pairs must be [row, col]");
        auto row = v.find_entity(pair[0].get<std::string>());
        auto col = v.find_entity(pair[1].get<std::string>());
        const RelationDecl& rd = v.relation(*rel);
        if (!row || !col || row->first != rd.first_type ||
            col->first != rd.second_type)
          fail(ErrorCode::Schema, "solution pair does not match relation '" +
                                      it.key() + "'");
        seen.set(v.atom_id(*rel, row->second, col->second));
      }
    }
    for (int a = 0; a < v.num_atoms(); ++a) full.add(Lit::make(a, seen.test(a)));
    Solver check = oracle.fresh();
    std::vector<Lit> asmps;
    oracle.append_selectors(asmps, out.theory.all_indices);
    oracle.append_interpretation(asmps, full);
    if (check.solve(asmps) == SolveStatus::Unsatisfiable)
      fail(ErrorCode::Schema,
           "declared solution violates the grounded constraints");
    out.solution = std::move(full);
  }
  return out;
}

LoadedPuzzle load_puzzle_file(const std::string& path) {
  return load_puzzle(read_json_file(path));
}

}  // namespace stepex
