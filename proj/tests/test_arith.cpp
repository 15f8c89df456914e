#include <doctest.h>

#include <random>

#include "crepantia/arith.hpp"
#include "crepantia/errors.hpp"

using namespace crepantia;

namespace {

// Cofactor expansion, for comparison with the Bareiss elimination.
Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      IntVector row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[i][j]);
      }
      minor.push_back(row);
    }
    Integer term = m[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

}  // namespace

TEST_CASE("floor division and remainder follow the floor convention") {
  CHECK(floor_div(-15, 2) == -8);
  CHECK(mod_floor(-15, 2) == 1);
  CHECK(floor_div(-11, 5) == -3);
  CHECK(mod_floor(-11, 5) == 4);
  CHECK(floor_div(7, 3) == 2);
  CHECK(mod_floor(0, 7) == 0);
}

TEST_CASE("gcd, lcm, modular inverse") {
  CHECK(gcd(12, 18) == 6);
  CHECK(lcm(4, 6) == 12);
  CHECK(gcd_of({Integer(4), Integer(6), Integer(10)}) == 2);
  CHECK(gcd_of({}) == 0);
  CHECK(mod_inverse(7, 15) == 13);
  CHECK_THROWS_AS(mod_inverse(6, 15), PreconditionError);
}

TEST_CASE("fractional parts") {
  CHECK(floor_frac(Rational(-1, 3)) == Rational(2, 3));
  CHECK(floor_of(Rational(-1, 3)) == -1);
  CHECK(is_integral(Rational(4)));
  CHECK_FALSE(is_integral(Rational(3, 2)));
}

TEST_CASE("integer parsing") {
  CHECK(parse_integer("+17") == 17);
  CHECK(parse_integer("-3") == -3);
  CHECK(parse_integer("123456789012345678901234567890") == Integer("123456789012345678901234567890"));
  CHECK_THROWS_AS(parse_integer(""), ParseError);
  CHECK_THROWS_AS(parse_integer("+"), ParseError);
  CHECK_THROWS_AS(parse_integer("1x"), ParseError);
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("determinants agree with cofactor expansion") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    IntMatrix m(n, IntVector(n));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    CHECK(determinant(m) == cofactor_det(m));
    RationalMatrix q(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        q[i][j] = Rational(m[i][j], 3);
        q[i][j].canonicalize();
      }
    Rational scale = 1;
    for (std::size_t i = 0; i < n; ++i) scale /= 3;
    CHECK(determinant(q) == Rational(cofactor_det(m)) * scale);
  }
}

TEST_CASE("inverse and rank") {
  RationalMatrix m{{2, 1, 0}, {0, 1, 0}, {1, 0, 3}};
  RationalMatrix inv = inverse(m);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += m[i][k] * inv[k][j];
      CHECK(s == (i == j ? 1 : 0));
    }
  }
  CHECK(rank(m) == 3);
  CHECK(rank(RationalMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK_THROWS_AS(inverse(RationalMatrix{{1, 2}, {2, 4}}), PreconditionError);
}
