#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "stepex/errors.hpp"
#include "stepex/lit.hpp"

namespace stepex {

struct TypeDecl {
  std::string name;
  std::vector<std::string> entities;
};

struct RelationDecl {
  std::string name;
  int first_type;
  int second_type;
  int atom_offset;  // id of atom (rel, 0, 0)
};

struct Atom {
  int relation;
  int row;  // entity index within the relation's first type
  int col;  // entity index within the relation's second type
};

// Typed vocabulary of a grid puzzle: entity domains plus one canonical
// binary relation per unordered pair of distinct types. Atom ids are dense;
// they double as solver variable ids.
class Vocabulary {
public:
  int add_type(std::string name, std::vector<std::string> entities);
  // Type arguments are type names; returns the relation id.
  int add_relation(std::string name, const std::string& first_type,
                   const std::string& second_type);
  // Validates the exactly-one-relation-per-type-pair invariant and assigns
  // atom ids. Must be called before any atom query.
  void finalize();
  bool finalized() const { return finalized_; }

  int num_types() const { return static_cast<int>(types_.size()); }
  int num_relations() const { return static_cast<int>(relations_.size()); }
  int num_atoms() const;

  const TypeDecl& type(int t) const { return types_[t]; }
  const RelationDecl& relation(int r) const { return relations_[r]; }

  int atom_id(int relation, int row, int col) const;
  Atom atom(int id) const;
  std::string atom_name(int id) const;
  std::string lit_name(Lit l) const;
  std::optional<Lit> parse_lit(const std::string& text) const;

  std::optional<int> find_type(const std::string& name) const;
  std::optional<int> find_relation(const std::string& name) const;
  // Entity symbols are globally unique; returns (type, index).
  std::optional<std::pair<int, int>> find_entity(const std::string& name) const;
  // Canonical relation for an unordered type pair; bool is true when the
  // declared orientation is (t2, t1).
  std::optional<std::pair<int, bool>> relation_between(int t1, int t2) const;

  bool equal_domain_sizes() const;

private:
  std::vector<TypeDecl> types_;
  std::vector<RelationDecl> relations_;
  bool finalized_ = false;
  int num_atoms_ = 0;
};

// Counts the grid cells of a vocabulary: the sum over relations of
// |dom1| * |dom2|.
int atom_count(const Vocabulary& v);

// A consistent set of signed atoms. Adding the opposite sign of a present
// literal is rejected rather than recorded; only the nested-explanation
// machinery tracks inconsistency, via its own flag.
class PartialInterpretation {
public:
  PartialInterpretation() = default;
  explicit PartialInterpretation(int num_atoms)
      : pos_(num_atoms), neg_(num_atoms) {}

  int num_atoms() const { return static_cast<int>(pos_.size()); }
  int size() const { return static_cast<int>(pos_.count() + neg_.count()); }
  bool empty() const { return size() == 0; }

  bool contains(Lit l) const {
    return l.positive() ? pos_.test(l.var()) : neg_.test(l.var());
  }
  bool determines(int atom) const { return pos_.test(atom) || neg_.test(atom); }

  // False and no change if the opposite sign is present.
  bool add(Lit l);
  bool superset_of(const PartialInterpretation& other) const;

  std::vector<Lit> literals() const;  // sorted by literal code

  bool operator==(const PartialInterpretation&) const = default;

private:
  boost::dynamic_bitset<> pos_, neg_;
};

// Definition of "more precise": a's literals are a superset of b's.
inline bool is_more_precise(const PartialInterpretation& a,
                            const PartialInterpretation& b) {
  return a.superset_of(b);
}

enum class ConstraintKind { Clue, Bijectivity, Transitivity };

const char* constraint_kind_name(ConstraintKind k);
std::optional<ConstraintKind> constraint_kind_from_name(const std::string&);

// One named unit of the theory with its grounded clause set. Clause
// literals range over atom variables and Tseitin auxiliaries owned by this
// constraint.
struct Constraint {
  std::string id;
  ConstraintKind kind;
  std::string text;
  std::vector<std::vector<Lit>> clauses;

  bool implicit() const { return kind != ConstraintKind::Clue; }
};

// A grounded theory: clues in document order, then the generated
// bijectivity and transitivity constraints.
struct Theory {
  Vocabulary voc;
  std::vector<Constraint> constraints;
  int num_vars = 0;  // atoms plus Tseitin auxiliaries

  std::vector<int> clue_indices;
  std::vector<int> implicit_indices;
  std::vector<int> all_indices;
  std::vector<int> id_rank;  // rank of each constraint in id-sorted order

  // Unique ids required; computes the index vectors above.
  void finalize();
  std::optional<int> index_of(const std::string& id) const;
  int num_clues(std::span<const int> subset) const;
};

struct NestedSequence;

// (E, S, N): facts and constraints that together entail the derived facts,
// plus the step's cost under the active cost parameters.
struct Explanation {
  std::vector<Lit> facts_used;        // E, sorted by literal code
  std::vector<int> constraints_used;  // S, sorted theory indices
  std::vector<Lit> derived;           // N, sorted by literal code
  double cost = 0;
  std::vector<NestedSequence> nested;

  bool operator==(const Explanation&) const;
};

// By-contradiction sub-sequence for one derived fact. `complete` is true
// when the final sub-interpretation contains both signs of some atom; an
// incomplete sequence records the cost of the sub-step that tripped the
// strictly-cheaper guard.
struct NestedSequence {
  Lit target;
  std::vector<Explanation> steps;
  bool complete = false;
  double blocking_cost = -1;

  bool operator==(const NestedSequence&) const;
};

}  // namespace stepex
