#include "stepex/model.hpp"

#include <algorithm>
#include <numeric>

namespace stepex {

int Vocabulary::add_type(std::string name, std::vector<std::string> entities) {
  if (finalized_) fail(ErrorCode::Internal, "vocabulary already finalized");
  if (name.empty()) fail(ErrorCode::Schema, "type with empty name");
  if (entities.empty())
    fail(ErrorCode::Schema, "type '" + name + "' has an empty domain");
  if (find_type(name)) fail(ErrorCode::Schema, "duplicate type '" + name + "'");
  for (const auto& e : entities) {
    if (e.empty()) fail(ErrorCode::Schema, "empty entity name in '" + name + "'");
    if (find_type(e))
      fail(ErrorCode::Schema, "entity '" + e + "' collides with a type name");
    if (find_entity(e))
      fail(ErrorCode::Schema, "entity '" + e + "' declared twice");
  }
  for (size_t i = 0; i < entities.size(); ++i)
    for (size_t j = i + 1; j < entities.size(); ++j)
      if (entities[i] == entities[j])
        fail(ErrorCode::Schema,
             "entity '" + entities[i] + "' declared twice in '" + name + "'");
  types_.push_back({std::move(name), std::move(entities)});
  return num_types() - 1;
}

int Vocabulary::add_relation(std::string name, const std::string& first_type,
                             const std::string& second_type) {
  if (finalized_) fail(ErrorCode::Internal, "vocabulary already finalized");
  auto t1 = find_type(first_type);
  auto t2 = find_type(second_type);
  if (!t1 || !t2)
    fail(ErrorCode::Schema, "relation '" + name + "' references unknown type");
  if (*t1 == *t2)
    fail(ErrorCode::Schema,
         "relation '" + name + "' must link two distinct types");
  if (find_relation(name))
    fail(ErrorCode::Schema, "duplicate relation '" + name + "'");
  if (relation_between(*t1, *t2))
    fail(ErrorCode::Schema, "types '" + first_type + "' and '" + second_type +
                                "' already share a relation");
  relations_.push_back({std::move(name), *t1, *t2, 0});
  return num_relations() - 1;
}

void Vocabulary::finalize() {
  if (finalized_) return;
  if (num_types() < 2) fail(ErrorCode::Schema, "at least two types required");
  for (int a = 0; a < num_types(); ++a)
    for (int b = a + 1; b < num_types(); ++b)
      if (!relation_between(a, b))
        fail(ErrorCode::Schema, "no relation between types '" + types_[a].name +
                                    "' and '" + types_[b].name + "'");
  int offset = 0;
  for (auto& r : relations_) {
    r.atom_offset = offset;
    offset += static_cast<int>(types_[r.first_type].entities.size() *
                               types_[r.second_type].entities.size());
  }
  num_atoms_ = offset;
  finalized_ = true;
}

int Vocabulary::num_atoms() const {
  if (!finalized_) fail(ErrorCode::Internal, "vocabulary not finalized");
  return num_atoms_;
}

int Vocabulary::atom_id(int relation, int row, int col) const {
  const RelationDecl& r = relations_[relation];
  int cols = static_cast<int>(types_[r.second_type].entities.size());
  return r.atom_offset + row * cols + col;
}

Atom Vocabulary::atom(int id) const {
  for (int r = num_relations() - 1; r >= 0; --r) {
    if (relations_[r].atom_offset <= id) {
      int local = id - relations_[r].atom_offset;
      int cols = static_cast<int>(
          types_[relations_[r].second_type].entities.size());
      return {r, local / cols, local % cols};
    }
  }
  fail(ErrorCode::Internal, "atom id out of range");
}

std::string Vocabulary::atom_name(int id) const {
  Atom a = atom(id);
  const RelationDecl& r = relations_[a.relation];
  return r.name + "(" + types_[r.first_type].entities[a.row] + "," +
         types_[r.second_type].entities[a.col] + ")";
}

std::string Vocabulary::lit_name(Lit l) const {
  return (l.positive() ? "" : "-") + atom_name(l.var());
}

std::optional<Lit> Vocabulary::parse_lit(const std::string& text) const {
  std::string s = text;
  bool positive = true;
  if (!s.empty() && s[0] == '-') {
    positive = false;
    s = s.substr(1);
  }
  auto open = s.find('(');
  auto comma = s.find(',', open);
  auto close = s.rfind(')');
  if (open == std::string::npos || comma == std::string::npos ||
      close == std::string::npos || close != s.size() - 1)
    return std::nullopt;
  auto rel = find_relation(s.substr(0, open));
  if (!rel) return std::nullopt;
  auto row = find_entity(s.substr(open + 1, comma - open - 1));
  auto col = find_entity(s.substr(comma + 1, close - comma - 1));
  if (!row || !col) return std::nullopt;
  const RelationDecl& r = relations_[*rel];
  if (row->first != r.first_type || col->first != r.second_type)
    return std::nullopt;
  return Lit::make(atom_id(*rel, row->second, col->second), positive);
}

std::optional<int> Vocabulary::find_type(const std::string& name) const {
  for (int i = 0; i < num_types(); ++i)
    if (types_[i].name == name) return i;
  return std::nullopt;
}

std::optional<int> Vocabulary::find_relation(const std::string& name) const {
  for (int i = 0; i < num_relations(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::pair<int, int>> Vocabulary::find_entity(
    const std::string& name) const {
  for (int t = 0; t < num_types(); ++t) {
    const auto& ents = types_[t].entities;
    for (size_t i = 0; i < ents.size(); ++i)
      if (ents[i] == name) return std::make_pair(t, static_cast<int>(i));
  }
  return std::nullopt;
}

std::optional<std::pair<int, bool>> Vocabulary::relation_between(int t1,
                                                                 int t2) const {
  for (int r = 0; r < num_relations(); ++r) {
    if (relations_[r].first_type == t1 && relations_[r].second_type == t2)
      return std::make_pair(r, false);
    if (relations_[r].first_type == t2 && relations_[r].second_type == t1)
      return std::make_pair(r, true);
  }
  return std::nullopt;
}

bool Vocabulary::equal_domain_sizes() const {
  for (int t = 1; t < num_types(); ++t)
    if (types_[t].entities.size() != types_[0].entities.size()) return false;
  return true;
}

int atom_count(const Vocabulary& v) { return v.num_atoms(); }

bool PartialInterpretation::add(Lit l) {
  if (contains(l.negated())) return false;
  if (l.positive())
    pos_.set(l.var());
  else
    neg_.set(l.var());
  return true;
}

bool PartialInterpretation::superset_of(
    const PartialInterpretation& other) const {
  return other.pos_.is_subset_of(pos_) && other.neg_.is_subset_of(neg_);
}

std::vector<Lit> PartialInterpretation::literals() const {
  std::vector<Lit> out;
  out.reserve(size());
  for (int a = 0; a < num_atoms(); ++a) {
    if (pos_.test(a)) out.push_back(Lit::make(a, true));
    if (neg_.test(a)) out.push_back(Lit::make(a, false));
  }
  return out;
}

const char* constraint_kind_name(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::Clue: return "clue";
    case ConstraintKind::Bijectivity: return "bijectivity";
    case ConstraintKind::Transitivity: return "transitivity";
  }
  return "?";
}

std::optional<ConstraintKind> constraint_kind_from_name(const std::string& s) {
  if (s == "clue") return ConstraintKind::Clue;
  if (s == "bijectivity") return ConstraintKind::Bijectivity;
  if (s == "transitivity") return ConstraintKind::Transitivity;
  return std::nullopt;
}

void Theory::finalize() {
  clue_indices.clear();
  implicit_indices.clear();
  all_indices.clear();
  for (int i = 0; i < static_cast<int>(constraints.size()); ++i) {
    all_indices.push_back(i);
    if (constraints[i].kind == ConstraintKind::Clue)
      clue_indices.push_back(i);
    else
      implicit_indices.push_back(i);
    for (int j = 0; j < i; ++j)
      if (constraints[j].id == constraints[i].id)
        fail(ErrorCode::Schema, "duplicate constraint id '" +
                                    constraints[i].id + "'");
  }
  std::vector<int> order(constraints.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return constraints[a].id < constraints[b].id;
  });
  id_rank.assign(constraints.size(), 0);
  for (size_t rank = 0; rank < order.size(); ++rank)
    id_rank[order[rank]] = static_cast<int>(rank);
}

std::optional<int> Theory::index_of(const std::string& id) const {
  for (int i = 0; i < static_cast<int>(constraints.size()); ++i)
    if (constraints[i].id == id) return i;
  return std::nullopt;
}

int Theory::num_clues(std::span<const int> subset) const {
  int n = 0;
  for (int i : subset)
    if (constraints[i].kind == ConstraintKind::Clue) ++n;
  return n;
}

bool Explanation::operator==(const Explanation& o) const {
  return facts_used == o.facts_used && constraints_used == o.constraints_used &&
         derived == o.derived && cost == o.cost && nested == o.nested;
}

bool NestedSequence::operator==(const NestedSequence& o) const {
  return target == o.target && steps == o.steps && complete == o.complete &&
         blocking_cost == o.blocking_cost;
}

}  // namespace stepex
