#pragma once

// Proper fractions, lattice points and overlattices N' = Z^n + sum g Z.
//
// All coordinates are exact rationals in the fixed standard basis e_1..e_n
// of Z^n. An Overlattice keeps a canonical (Hermite normal form) basis so
// that lattices compare equal iff they are equal as sets.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crepantia/arith.hpp"

namespace crepantia {

// The symbol 1/r(a_1, ..., a_n) with 0 <= a_i < r and gcd(r, a_1..a_n) = 1.
// Doubles as the diagonal group element diag(zeta_r^{a_1}, ..., zeta_r^{a_n}).
class ProperFraction {
 public:
  // Reduces entries modulo r and divides out gcd(r, a_1, ..., a_n).
  // Throws PreconditionError for an empty vector or r < 1.
  ProperFraction(IntVector numerators, Integer denominator);

  static ProperFraction identity(std::size_t rank);

  const IntVector& numerators() const { return numerators_; }
  const Integer& denominator() const { return denominator_; }
  const Integer& operator[](std::size_t i) const { return numerators_[i]; }
  std::size_t rank() const { return numerators_.size(); }

  Rational age() const;
  // Number of nonzero entries, i.e. rank(g - I).
  std::size_t height() const;
  bool is_identity() const { return denominator_ == 1; }
  // Sum of numerators equals a multiple of r.
  bool has_integral_age() const;

  // Group law of the diagonal action.
  ProperFraction operator+(const ProperFraction& other) const;
  ProperFraction inverse() const;
  ProperFraction power(const Integer& k) const;

  // The representative a/r in [0,1)^n.
  RationalVector point() const;

  std::string to_string() const;

  friend bool operator==(const ProperFraction&, const ProperFraction&) = default;
  friend std::strong_ordering operator<=>(const ProperFraction& a, const ProperFraction& b);

 private:
  IntVector numerators_;
  Integer denominator_;
};

using GroupElement = ProperFraction;

ProperFraction make_proper_fraction(IntVector numerators, Integer denominator);
Rational age(const ProperFraction& f);
std::size_t height(const GroupElement& g);

// A rational point of R^n in the e-basis.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(RationalVector coords);
  LatticePoint(std::initializer_list<Rational> coords);

  static LatticePoint zero(std::size_t rank);
  static LatticePoint unit(std::size_t rank, std::size_t i);
  static LatticePoint from_fraction(const ProperFraction& f);

  const RationalVector& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t rank() const { return coords_.size(); }

  Rational age() const;
  bool is_zero() const;
  bool is_nonnegative() const;
  bool is_unit_vector() const;

  // Least common denominator of the coordinates and the numerators over it.
  Integer common_denominator() const;
  IntVector numerators() const;

  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;
  LatticePoint operator*(const Rational& k) const;
  LatticePoint operator/(const Rational& k) const;

  // "1/11(1,2,8)" for fractional points, "(1,0,0)" for integral ones.
  std::string to_string() const;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend std::strong_ordering operator<=>(const LatticePoint& a, const LatticePoint& b);

 private:
  RationalVector coords_;
};

class Overlattice {
 public:
  // Z^n itself.
  explicit Overlattice(std::size_t rank);
  // Z^n + sum_k g_k Z. Throws PreconditionError on length mismatch.
  Overlattice(std::size_t rank, std::vector<GroupElement> generators);

  std::size_t rank() const { return rank_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  // Canonical basis as rows, upper triangular.
  const RationalMatrix& basis() const { return basis_; }
  // [N' : Z^n].
  const Integer& index() const { return index_; }

  Overlattice refine(const GroupElement& g) const;

  bool contains(const LatticePoint& p) const;
  bool contains(const ProperFraction& f) const;
  // Integer coordinates of p in the canonical basis, or nullopt if p is not in the lattice.
  std::optional<IntVector> coordinates(const LatticePoint& p) const;

  // p / k for the largest integer k with p / k still in the lattice.
  LatticePoint primitive_representative(const LatticePoint& p) const;
  bool is_primitive(const LatticePoint& p) const;

  // |det| of the rays in lattice coordinates; 1 iff the cone is smooth.
  Integer cone_determinant(const std::vector<LatticePoint>& rays) const;

  // All lattice points of the closed simplex conv(vertices). Vertices must be
  // n linearly independent lattice points.
  std::vector<LatticePoint> simplex_lattice_points(const std::vector<LatticePoint>& vertices) const;
  std::vector<LatticePoint> junior_simplex_points() const;

  // The elements of N'/Z^n, i.e. the group generated by the adjoined
  // fractions, sorted. Size equals index().
  std::vector<GroupElement> coset_representatives() const;

  // True iff every element of N'/Z^n has integral age.
  bool is_gorenstein() const;

  friend bool operator==(const Overlattice& a, const Overlattice& b) { return a.basis_ == b.basis_; }

 private:
  std::size_t rank_;
  std::vector<GroupElement> generators_;
  RationalMatrix basis_;
  Integer index_;
};

Overlattice overlattice(const std::vector<GroupElement>& generators, std::size_t rank);

// Closure of the subgroup of (Q/Z)^n generated by the given vectors, each
// reduced into [0,1)^n. Used for N'/Z^n and for lattice points modulo a cone's
// sublattice. Sorted output.
std::vector<RationalVector> torsion_closure(const std::vector<RationalVector>& generators, std::size_t rank);

}  // namespace crepantia
