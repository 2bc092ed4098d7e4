#pragma once

// Closed-form constructions yielding one valid sequence for each admissible n.

#include <optional>
#include <vector>

#include "skolem/sequence.hpp"

namespace skolem {

/// One Skolem pairing of order n. Throws ExistenceError when n % 4 is 2 or 3.
PairList construct_skolem(int n);

/// One Langford sequence of order n. Throws ExistenceError when n % 4 is 1 or 2.
LabelSequence construct_langford(int n);

namespace formula {

/// Skolem's piecewise pair table instantiated verbatim. Empty when two
/// generated pairs share a difference; positions are not checked, and the
/// smallest k produce overlaps.
std::optional<PairList> skolem_table(int n);

/// Davies' run-based label table instantiated verbatim; runs whose bounds
/// cross are empty. Not checked.
std::vector<int> langford_table(int n);

}  // namespace formula

}  // namespace skolem
