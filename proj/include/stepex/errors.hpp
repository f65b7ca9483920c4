#pragma once

#include <stdexcept>
#include <string>

namespace stepex {

enum class ErrorCode {
  Schema,                // malformed puzzle or sequence document
  Type,                  // ill-typed clue formula
  UnboundVariable,       // symbol in a clue is neither a bound variable nor an entity
  UnknownRelation,       // clue references an undeclared relation
  UnsatisfiablePuzzle,   // loaded theory has no models
  TheoryUnsatisfiable,   // I and T have no common model
  ResourceLimit,         // solver conflict budget exceeded
  NotUnsat,              // MUS extraction precondition violated
  NothingToExplain,      // interpretation is already maximal
  EmptyConstraintSet,    // cost functions require a non-empty S
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace stepex
