#pragma once

// Hirzebruch-Jung continued fractions and their multidimensional
// generalisation: remainder / round-down maps and the noncommutative
// polynomials they generate over a semi-unimodular proper fraction.
//
// Variable indices follow the usual notation: x_2, ..., x_n act on slots
// 2..n (1-based), slot 1 holds the unimodular entry.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crepantia/arith.hpp"
#include "crepantia/lattice.hpp"

namespace crepantia {

struct HJExpansion {
  Integer r;
  Integer a;
  std::vector<Integer> coefficients;  // x_1 .. x_s, each >= 2
};

// r/a = x_1 - 1/(x_2 - 1/(... - 1/x_s)). Requires 0 < a < r, gcd(r, a) = 1.
HJExpansion hj_expand(const Integer& r, const Integer& a);
// Inverse of hj_expand: returns (r, a). Entries must be >= 2.
std::pair<Integer, Integer> hj_from_coeffs(const std::vector<Integer>& coefficients);
// v_0 = (0,1), v_1 = 1/r(1,a), ..., v_{s+1} = (1,0) with v_{i-1} + v_{i+1} = x_i v_i.
std::vector<LatticePoint> hj_rays(const Integer& r, const Integer& a);

// The point at infinity of the extended fraction / vector sets.
struct Infinity {
  friend bool operator==(Infinity, Infinity) = default;
};

using RemainderValue = std::variant<ProperFraction, Infinity>;
using RoundDownValue = std::variant<IntVector, Infinity>;

inline bool is_infinite(const RemainderValue& v) { return std::holds_alternative<Infinity>(v); }
inline bool is_infinite(const RoundDownValue& v) { return std::holds_alternative<Infinity>(v); }

// A word x_{i_1} x_{i_2} ... x_{i_l} over {2..n}, read left to right in the
// order the maps are applied. Ordered shortlex.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::size_t> letters);

  const std::vector<std::size_t>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Word then(std::size_t letter) const;
  // All letters equal, length >= 1.
  bool is_iterated() const;

  // "x3x2", or "1" for the empty word.
  std::string to_string() const;
  // Parses the to_string form.
  static Word parse(const std::string& text);

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<std::size_t> letters_;
};

// Slot 1 equals 1.
bool is_semi_unimodular(const ProperFraction& f);
// The fraction (0,...,0)/1 that the polynomials leave out.
bool is_excluded(const ProperFraction& f);

// R_i and Z_i for i in {2..n}. Throw PreconditionError unless f is
// semi-unimodular with the 1 in slot one.
RemainderValue remainder_map(std::size_t i, const ProperFraction& f);
RoundDownValue rounddown_map(std::size_t i, const ProperFraction& f);

class RemainderPolynomial {
 public:
  using Terms = std::map<Word, ProperFraction>;

  explicit RemainderPolynomial(Terms terms) : terms_(std::move(terms)) {}

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const ProperFraction& constant() const { return terms_.at(Word()); }
  const ProperFraction* find(const Word& w) const;

  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

 private:
  Terms terms_;
};

struct RoundDownTerm {
  IntVector value;
  // The remainder polynomial carries a term at the same word.
  bool paired = false;
};

class RoundDownPolynomial {
 public:
  using Terms = std::map<Word, RoundDownTerm>;

  explicit RoundDownPolynomial(Terms terms) : terms_(std::move(terms)) {}

  // Every finite Z_j value at every finite node of the remainder recursion.
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  // Only the terms aligned with a remainder-polynomial term: the ones whose
  // R_j child is neither infinite nor excluded.
  std::map<Word, IntVector> paired_terms() const;
  const RoundDownTerm* find(const Word& w) const;

 private:
  Terms terms_;
};

RemainderPolynomial remainder_polynomial(const ProperFraction& f);
RoundDownPolynomial rounddown_polynomial(const ProperFraction& f);

// Brings a fraction into semi-unimodular normal position by moving the first
// slot holding 1 to the front. With allow_power, a fraction without a 1
// entry is first replaced by the generator power that turns its first unit
// entry into 1 (same cyclic group).
struct NormalizedFraction {
  ProperFraction fraction;
  // normalized slot k came from input slot permutation[k]
  std::vector<std::size_t> permutation;
  Integer power = 1;
};
std::optional<NormalizedFraction> normalize_semi_unimodular(const ProperFraction& f, bool allow_power = false);
// Moves `slot` to the front and keeps the others in order.
ProperFraction move_slot_to_front(const ProperFraction& f, std::size_t slot);

struct FujikiOkaVerdict {
  bool crepant = false;
  // First word (shortlex) whose coefficient does not have age 1.
  std::optional<Word> witness;
  std::optional<ProperFraction> witness_coefficient;
};

// Crepancy of the Fujiki-Oka resolution read off the remainder polynomial:
// crepant iff every coefficient has age exactly 1.
FujikiOkaVerdict crepant_by_ages(const ProperFraction& f);

enum class ObstructionKind {
  GeneratorAge,  // the generator itself has age >= 2
  IteratedTerm,  // an iterated term x_i...x_i with coefficient age >= 2
};

struct Obstruction {
  ObstructionKind kind;
  Word word;
  ProperFraction coefficient;
  Rational age;
};

struct ObstructionReport {
  std::vector<Obstruction> obstructions;
  bool found() const { return !obstructions.empty(); }
};

// Sufficient obstructions to any toric crepant resolution. An empty report
// does not certify that a crepant resolution exists. Throws
// PreconditionError if f does not have integral age.
ObstructionReport obstruction_scan(const ProperFraction& f);

// i-th minimal points of f (i in {2..n}): lifts of the interior rays of the
// two-dimensional slice 1/r(1, a_i). Requires a_i != 0 and gcd(r, a_i) = 1.
std::vector<LatticePoint> minimal_points(const ProperFraction& f, std::size_t i);

}  // namespace crepantia
