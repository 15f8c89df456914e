#pragma once

// Exact feasibility test for small linear systems over Q (phase-one simplex,
// Bland's rule). Variables are free.

#include <vector>

#include "crepantia/arith.hpp"

namespace crepantia {

enum class Relation { Equal, GreaterEqual, LessEqual };

struct LinearConstraint {
  RationalVector coefficients;
  Relation relation;
  Rational rhs;
};

bool is_feasible(const std::vector<LinearConstraint>& constraints, std::size_t variables);

}  // namespace crepantia
