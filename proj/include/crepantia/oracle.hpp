#pragma once

// Brute-force checks that do not go through the constructive code: the
// lattice is re-enumerated here from its generators with machine integers.

#include <cstddef>
#include <string>
#include <vector>

#include "crepantia/lattice.hpp"

namespace crepantia {

// Irreducible elements of the positive orthant's lattice points, sorted.
std::vector<LatticePoint> hilbert_basis(const Overlattice& L);

struct JuniorPoints {
  // Age-one lattice points of the orthant other than the unit vectors.
  std::vector<LatticePoint> elements;
  std::vector<LatticePoint> vertices;
};

JuniorPoints junior_points(const Overlattice& L);

// Hilbert basis equals junior elements plus vertices. Necessary for a
// crepant resolution; false rules one out. Throws PreconditionError unless
// the lattice is Gorenstein.
bool first_existence_check(const Overlattice& L);

struct TypeCrossCheck {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> mismatches;
};

// Resolves f over the orthant and compares the type of every worded node of
// the subdivision tree with the remainder-polynomial coefficient at that word.
TypeCrossCheck cross_check_types(const ProperFraction& f);

}  // namespace crepantia
