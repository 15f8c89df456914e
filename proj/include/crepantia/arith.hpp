#pragma once

// Exact integer and rational scalars backed by GMP, plus the handful of
// helpers the lattice code keeps reaching for.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace crepantia {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;
using RationalMatrix = std::vector<RationalVector>;

// Floor division and the matching non-negative remainder (for m > 0).
Integer floor_div(const Integer& a, const Integer& m);
Integer mod_floor(const Integer& a, const Integer& m);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer gcd_of(const IntVector& v);

// Solves a*x == 1 (mod m); requires gcd(a, m) == 1.
Integer mod_inverse(const Integer& a, const Integer& m);

Rational floor_frac(const Rational& q);  // q - floor(q), in [0, 1)
Integer floor_of(const Rational& q);
bool is_integral(const Rational& q);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

// Parses a base-10 integer with optional sign; throws ParseError otherwise.
Integer parse_integer(const std::string& text);
// Accepts "p" or "p/q".
Rational parse_rational(const std::string& text);

// Exact determinant (Bareiss), square input.
Integer determinant(IntMatrix m);
Rational determinant(RationalMatrix m);

// Inverse of a nonsingular rational matrix; throws PreconditionError if singular.
RationalMatrix inverse(const RationalMatrix& m);

// Rank over Q.
std::size_t rank(RationalMatrix m);

}  // namespace crepantia
