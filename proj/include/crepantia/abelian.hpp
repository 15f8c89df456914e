#pragma once

// Finite diagonal abelian groups, their triangular age-one generating
// systems and iterated Fujiki-Oka resolutions along a chain of subgroups.

#include <cstddef>
#include <optional>
#include <vector>

#include "crepantia/continued_fraction.hpp"
#include "crepantia/fan.hpp"
#include "crepantia/lattice.hpp"

namespace crepantia {

class AbelianGroup {
 public:
  AbelianGroup(std::size_t rank, std::vector<GroupElement> generators);

  std::size_t rank() const { return rank_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  // Sorted, identity first.
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const GroupElement& g) const;
  // Every element has integral age.
  bool is_gorenstein() const;
  bool is_cyclic() const;
  Overlattice lattice() const { return Overlattice(rank_, generators_); }

 private:
  std::size_t rank_;
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> elements_;
};

AbelianGroup enumerate_group(const std::vector<GroupElement>& gens);
// Same rank, same element set.
bool same_group(const AbelianGroup& a, const AbelianGroup& b);

// Row i (0-based, i < n-1) is either the identity or
// 1/r_i(0,...,0,1,a_{i,i+1},...,a_{i,n-1}) with age 1.
struct BasicGeneratingSystem {
  std::vector<GroupElement> rows;

  // Non-identity rows, in order.
  std::vector<GroupElement> nontrivial_rows() const;
  // Leading slot of a non-identity row.
  static std::size_t leading_slot(const GroupElement& row);
};

// Throws PreconditionError for non-Gorenstein groups and NoAgeOneSystem if
// some row has no age-one representative of the required shape.
BasicGeneratingSystem basic_generating_system(const AbelianGroup& G);

// x - x_i e_i + x_i f for the 1-based index i; x must lie in the lattice
// Z^n + R_i(f) Z. f must be semi-unimodular with integral age.
LatticePoint phi_embed(std::size_t i, const ProperFraction& f, const LatticePoint& x);

// One cone resolved at some stage, with its normalized type (apex in front).
struct StageCone {
  Cone cone;
  std::size_t apex = 0;
  ProperFraction type;
  RemainderPolynomial polynomial;
};

struct Stage {
  // The element adjoined at this stage and the subgroup generated so far.
  GroupElement added;
  std::vector<GroupElement> subgroup_generators;
  Overlattice lattice;
  Fan fan;
  // Only cones that were singular at the start of the stage.
  std::vector<StageCone> resolved;
};

struct StageTranscript {
  std::vector<Stage> stages;
  // Stage data live in coordinates where slot k is input slot coordinates[k].
  // Empty when the input order was used.
  std::vector<std::size_t> coordinates;
};

struct IteratedResolution {
  Fan fan;
  StageTranscript transcript;
};

// Resolves along H_1 = <last row> c H_2 c ... c G, adding rows upward. If G
// has no basic generating system in the given coordinate order, the first
// reordering (lexicographic, rank <= 6) that admits one is used and the fan is
// mapped back; NoAgeOneSystem is thrown only when none does.
IteratedResolution iterated_fujiki_oka(const AbelianGroup& G, std::size_t max_cones = default_max_cones());
// Resolves along the given chain: stage k adjoins chain[k]. The chain must
// generate G; each element should carry a 1 entry, used as apex preference.
IteratedResolution iterated_fujiki_oka(const AbelianGroup& G, const std::vector<GroupElement>& chain,
                                       std::size_t max_cones = default_max_cones());

enum class IteratedVerdictKind { Crepant, NotDetermined };

struct IteratedVerdict {
  IteratedVerdictKind kind = IteratedVerdictKind::NotDetermined;
  // First stage coefficient whose age is not 1.
  std::optional<std::size_t> stage;
  std::optional<Word> witness;
  std::optional<ProperFraction> witness_coefficient;
  // is_crepant of the assembled fan.
  bool fan_crepant = false;
  IteratedResolution resolution;
};

IteratedVerdict crepant_iterated(const AbelianGroup& G, std::size_t max_cones = default_max_cones());
IteratedVerdict crepant_iterated(const AbelianGroup& G, const std::vector<GroupElement>& chain,
                                 std::size_t max_cones = default_max_cones());

}  // namespace crepantia
