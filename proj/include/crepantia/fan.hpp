#pragma once

// Simplicial cones and fans over an overlattice, the Oka center of a
// semi-unimodular cone, the Fujiki-Oka star-subdivision recursion and an
// exact verifier for the result.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crepantia/arith.hpp"
#include "crepantia/continued_fraction.hpp"
#include "crepantia/lattice.hpp"

namespace crepantia {

class Cone {
 public:
  Cone() = default;
  explicit Cone(std::vector<LatticePoint> rays);

  static Cone orthant(std::size_t rank);

  const std::vector<LatticePoint>& rays() const { return rays_; }
  const LatticePoint& ray(std::size_t i) const { return rays_[i]; }
  std::size_t rank() const { return rays_.size(); }

  Cone replace(std::size_t slot, const LatticePoint& p) const;

  friend bool operator==(const Cone&, const Cone&) = default;

 private:
  std::vector<LatticePoint> rays_;
};

// Multiplicity of the cone in the lattice.
Integer cone_determinant(const Cone& c, const Overlattice& L);
bool is_smooth(const Cone& c, const Overlattice& L);

// Some lattice point has coefficient exactly 1/r on ray `apex`, r being the
// multiplicity; the quotient is then cyclic with a generator of that form.
bool is_semi_unimodular_over(const Cone& c, std::size_t apex, const Overlattice& L);

// The singularity type 1/r(a_1, ..., a_n) of the cone: slot j is the
// coefficient on ray j of the Oka center, the apex slot is 1. For a smooth
// cone this is the identity. Throws SemiUnimodularityLost otherwise.
ProperFraction singularity_type(const Cone& c, std::size_t apex, const Overlattice& L);
// sum_j (a_j / r) P_j. Throws PreconditionError on a smooth cone.
LatticePoint oka_center(const Cone& c, std::size_t apex, const Overlattice& L);

// A fan as a deduplicated ray pool plus cones given by ray indices.
class Fan {
 public:
  explicit Fan(Overlattice lattice);

  const Overlattice& lattice() const { return lattice_; }
  std::size_t rank() const { return lattice_.rank(); }
  const std::vector<LatticePoint>& rays() const { return rays_; }
  const std::vector<std::vector<std::size_t>>& cones() const { return cones_; }
  std::size_t size() const { return cones_.size(); }

  std::size_t add_ray(const LatticePoint& p);
  void add_cone(const Cone& c);
  void add_cone(std::vector<std::size_t> ray_indices);
  Cone cone(std::size_t i) const;
  std::optional<std::size_t> ray_index(const LatticePoint& p) const;

 private:
  Overlattice lattice_;
  std::vector<LatticePoint> rays_;
  std::map<LatticePoint, std::size_t> index_;
  std::vector<std::vector<std::size_t>> cones_;
};

// One node of the subdivision tree. Word letters name cone slots after the
// apex has been moved to the front (1-based), so that words line up with the
// remainder polynomial of the normalized root type. The child that replaces
// the apex has no word.
struct TranscriptNode {
  std::optional<Word> word;
  Cone cone;
  std::size_t apex = 0;
  ProperFraction type = ProperFraction::identity(1);
  std::optional<LatticePoint> center;
  std::vector<std::size_t> children;

  // type with the apex slot moved to the front.
  ProperFraction normalized_type() const { return move_slot_to_front(type, apex); }
};

class ResolutionTranscript {
 public:
  const std::vector<TranscriptNode>& nodes() const { return nodes_; }
  const TranscriptNode& root() const { return nodes_.front(); }
  std::size_t size() const { return nodes_.size(); }
  std::size_t add(TranscriptNode node);
  TranscriptNode& node(std::size_t i) { return nodes_[i]; }

 private:
  std::vector<TranscriptNode> nodes_;
};

struct FujikiOkaResult {
  Fan fan;
  ResolutionTranscript transcript;
};

// Default cap on the number of cones; CREPANTIA_MAX_CONES overrides it.
std::size_t default_max_cones();

// Repeatedly star-subdivides at Oka centers until every cone is smooth.
// Throws SemiUnimodularityLost if the root is not semi-unimodular over apex,
// ResourceLimitExceeded past max_cones.
FujikiOkaResult fujiki_oka_resolve(const Cone& root, std::size_t apex, const Overlattice& L,
                                   std::size_t max_cones = default_max_cones());

// age(v) - 1 for every ray other than a unit vector, v taken primitive.
std::map<LatticePoint, Rational> fan_discrepancies(const Fan& fan);
// Every exceptional ray has age 1. Throws PreconditionError if some cone is
// not smooth.
bool is_crepant(const Fan& fan);

struct VerificationReport {
  bool smooth = true;
  bool covers = true;        // slice volumes add up to the root's
  bool proper_faces = true;  // pairwise intersections are common faces
  bool contained = true;     // every ray lies in the root cone
  std::vector<std::string> failures;

  bool ok() const { return smooth && covers && proper_faces && contained; }
};

VerificationReport verify_resolution(const Fan& fan, const Cone& root);

}  // namespace crepantia
