#include "crepantia/exact_lp.hpp"

#include "crepantia/errors.hpp"

namespace crepantia {

bool is_feasible(const std::vector<LinearConstraint>& constraints, std::size_t variables) {
  const std::size_t m = constraints.size();
  if (m == 0) return true;

  std::size_t inequalities = 0;
  for (const auto& c : constraints) {
    if (c.coefficients.size() != variables) throw PreconditionError("constraint width mismatch");
    if (c.relation != Relation::Equal) ++inequalities;
  }
  // Columns: x+ (variables), x- (variables), one slack per inequality, one
  // artificial per row, then the right-hand side.
  const std::size_t slack0 = 2 * variables;
  const std::size_t art0 = slack0 + inequalities;
  const std::size_t rhs = art0 + m;
  RationalMatrix t(m, RationalVector(rhs + 1, Rational(0)));
  std::vector<std::size_t> basis(m);

  std::size_t slack = slack0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = constraints[i];
    for (std::size_t j = 0; j < variables; ++j) {
      t[i][j] = c.coefficients[j];
      t[i][variables + j] = -c.coefficients[j];
    }
    if (c.relation == Relation::GreaterEqual) t[i][slack++] = -1;
    if (c.relation == Relation::LessEqual) t[i][slack++] = 1;
    t[i][rhs] = c.rhs;
    if (t[i][rhs] < 0) {
      for (auto& x : t[i]) x = -x;
    }
    t[i][art0 + i] = 1;
    basis[i] = art0 + i;
  }

  // Reduced costs of the phase-one objective (sum of artificials).
  RationalVector cost(rhs + 1, Rational(0));
  for (std::size_t j = 0; j < art0; ++j) {
    for (std::size_t i = 0; i < m; ++i) cost[j] -= t[i][j];
  }
  for (std::size_t i = 0; i < m; ++i) cost[rhs] -= t[i][rhs];

  for (;;) {
    std::size_t enter = rhs;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == rhs) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    Rational pivot = t[leave][enter];
    for (auto& x : t[leave]) x /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= rhs; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      Rational f = cost[enter];
      for (std::size_t j = 0; j <= rhs; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return cost[rhs] == 0;
}

}  // namespace crepantia
