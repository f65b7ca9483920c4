#pragma once

#include <span>

#include "stepex/oracle.hpp"

namespace stepex {

// The precision-maximal interpretation entailed by I and the enabled
// constraints: the intersection of all models above I, computed by repeated
// model blocking. Throws Error(TheoryUnsatisfiable) when I and the
// constraints have no common model.
PartialInterpretation max_consequence(const TheoryOracle& oracle,
                                      const PartialInterpretation& interp,
                                      std::span<const int> enabled);
PartialInterpretation max_consequence(const TheoryOracle& oracle,
                                      const PartialInterpretation& interp);

bool is_consistent(const TheoryOracle& oracle,
                   const PartialInterpretation& interp,
                   std::span<const int> enabled);
bool is_consistent(const TheoryOracle& oracle,
                   const PartialInterpretation& interp);

// Unit propagation fixpoint over the enabled constraints and the
// interpretation, restricted to grid atoms. nullopt when propagation
// derives a conflict.
std::optional<std::vector<Lit>> propagate_units(
    const TheoryOracle& oracle, const PartialInterpretation& interp,
    std::span<const int> enabled);

}  // namespace stepex
