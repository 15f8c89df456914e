#pragma once

// Test-side oracles. Plain machine integers throughout, sharing no code with
// the library beyond the types used to compare results.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "crepantia/arith.hpp"
#include "crepantia/lattice.hpp"

namespace oracle {

using Vec = std::vector<std::int64_t>;

// Elements of the group generated by 1/d_k(a_k), as numerator vectors over
// the common denominator D (returned through D).
inline std::set<Vec> group_closure(const std::vector<std::pair<Vec, std::int64_t>>& gens, std::int64_t& D) {
  D = 1;
  for (const auto& g : gens) D = std::lcm(D, g.second);
  const std::size_t n = gens.front().first.size();
  std::vector<Vec> scaled;
  for (const auto& [a, d] : gens) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ((a[i] % d + d) % d) * (D / d);
    scaled.push_back(v);
  }
  std::set<Vec> seen{Vec(n, 0)};
  std::vector<Vec> todo{Vec(n, 0)};
  while (!todo.empty()) {
    Vec cur = todo.back();
    todo.pop_back();
    for (const auto& g : scaled) {
      Vec nx(n);
      for (std::size_t i = 0; i < n; ++i) nx[i] = (cur[i] + g[i]) % D;
      if (seen.insert(nx).second) todo.push_back(nx);
    }
  }
  return seen;
}

inline std::size_t group_order(const std::vector<std::pair<Vec, std::int64_t>>& gens) {
  std::int64_t D;
  return group_closure(gens, D).size();
}

// Irreducible points of Z^2 + 1/r(1,a)Z in the quadrant, from the unit box
// by direct sieve; listed by increasing first coordinate.
inline std::vector<std::pair<std::int64_t, std::int64_t>> quadrant_hilbert_basis(std::int64_t r, std::int64_t a) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (std::int64_t k = 1; k < r; ++k) pts.emplace_back(k, (a * k) % r);
  pts.emplace_back(r, 0);
  pts.emplace_back(0, r);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& p : pts) {
    bool reducible = false;
    for (const auto& q : pts) {
      if (q != p && q.first <= p.first && q.second <= p.second && (q.first || q.second)) reducible = true;
    }
    if (!reducible && (p.first || p.second)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// x_1 - 1/(x_2 - 1/(... - 1/x_s)).
inline crepantia::Rational continued_fraction_value(const std::vector<crepantia::Integer>& xs) {
  crepantia::Rational v = crepantia::Rational(xs.back());
  for (auto it = xs.rbegin() + 1; it != xs.rend(); ++it) v = crepantia::Rational(*it) - 1 / v;
  return v;
}

inline crepantia::LatticePoint point(const Vec& num, std::int64_t den) {
  crepantia::RationalVector c;
  for (auto x : num) {
    crepantia::Rational q(x, den);
    q.canonicalize();
    c.push_back(q);
  }
  return crepantia::LatticePoint(std::move(c));
}

}  // namespace oracle
