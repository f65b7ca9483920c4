#pragma once

#include <compare>
#include <cstdint>

namespace stepex {

// A literal over variable v is encoded as 2*v (positive) or 2*v+1 (negated).
// Grid atoms occupy the low variable indices, so a literal over an atom is
// usable both as a solver literal and as a domain fact.
struct Lit {
  int code = -1;

  static Lit make(int var, bool positive) {
    return Lit{2 * var + (positive ? 0 : 1)};
  }
  int var() const { return code >> 1; }
  bool positive() const { return (code & 1) == 0; }
  Lit negated() const { return Lit{code ^ 1}; }
  bool valid() const { return code >= 0; }

  auto operator<=>(const Lit&) const = default;
};

constexpr Lit kNoLit{-1};

}  // namespace stepex
