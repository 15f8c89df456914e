#include "crepantia/fan.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "crepantia/errors.hpp"
#include "crepantia/exact_lp.hpp"

namespace crepantia {

namespace {

constexpr std::size_t kDefaultMaxCones = 100000;

// Rows: the canonical lattice basis written in the cone's ray coordinates.
struct Barycentric {
  Integer r;
  RationalMatrix lambda;
};

Barycentric barycentric(const Cone& c, const Overlattice& L) {
  if (c.rank() != L.rank()) throw PreconditionError("cone rank does not match lattice rank");
  IntMatrix m;
  for (const auto& p : c.rays()) {
    auto co = L.coordinates(p);
    if (!co) throw PreconditionError("ray " + p.to_string() + " is not a lattice point");
    m.push_back(std::move(*co));
  }
  RationalMatrix q(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (const auto& x : m[i]) q[i].emplace_back(x);
  }
  Integer r = abs(determinant(m));
  if (r == 0) throw PreconditionError("cone rays are linearly dependent");
  return Barycentric{r, inverse(q)};
}

// Barycentric coordinates in [0,1) of the lattice point with apex
// coefficient 1/r, or nullopt if there is none.
std::optional<RationalVector> cyclic_generator(const Barycentric& b, std::size_t apex) {
  const std::size_t n = b.lambda.size();
  if (apex >= n) throw PreconditionError("apex slot out of range");
  if (b.r == 1) return RationalVector(n, Rational(0));
  Integer g = 0;
  IntVector t(n, Integer(0));
  for (std::size_t k = 0; k < n; ++k) {
    Rational scaled = b.lambda[k][apex] * b.r;
    Integer mk = scaled.get_num();
    Integer g2, s, u;
    mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), g.get_mpz_t(), mk.get_mpz_t());
    for (std::size_t j = 0; j < k; ++j) t[j] = mod_floor(t[j] * s, b.r);
    t[k] = mod_floor(u, b.r);
    g = g2;
  }
  if (g == 0 || gcd(g, b.r) != 1) return std::nullopt;
  Integer ginv = mod_inverse(g, b.r);
  RationalVector out(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    Integer tk = mod_floor(t[k] * ginv, b.r);
    if (tk == 0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] += b.lambda[k][j] * Rational(tk);
  }
  for (auto& x : out) x = floor_frac(x);
  return out;
}

ProperFraction type_from(const RationalVector& lambda, const Integer& r) {
  IntVector a;
  for (const auto& x : lambda) a.push_back(Rational(x * r).get_num());
  return ProperFraction(std::move(a), r);
}

// Letter of cone slot s once the apex slot is moved to the front.
std::size_t letter_of(std::size_t slot, std::size_t apex) { return slot < apex ? slot + 2 : slot + 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Cones

Cone::Cone(std::vector<LatticePoint> rays) : rays_(std::move(rays)) {
  for (const auto& p : rays_) {
    if (p.rank() != rays_.size()) throw PreconditionError("a simplicial cone in rank n needs n rays of length n");
  }
}

Cone Cone::orthant(std::size_t rank) {
  std::vector<LatticePoint> rays;
  for (std::size_t i = 0; i < rank; ++i) rays.push_back(LatticePoint::unit(rank, i));
  return Cone(std::move(rays));
}

Cone Cone::replace(std::size_t slot, const LatticePoint& p) const {
  auto rays = rays_;
  rays.at(slot) = p;
  return Cone(std::move(rays));
}

Integer cone_determinant(const Cone& c, const Overlattice& L) { return L.cone_determinant(c.rays()); }

bool is_smooth(const Cone& c, const Overlattice& L) { return cone_determinant(c, L) == 1; }

bool is_semi_unimodular_over(const Cone& c, std::size_t apex, const Overlattice& L) {
  return cyclic_generator(barycentric(c, L), apex).has_value();
}

ProperFraction singularity_type(const Cone& c, std::size_t apex, const Overlattice& L) {
  Barycentric b = barycentric(c, L);
  auto lambda = cyclic_generator(b, apex);
  if (!lambda) {
    throw SemiUnimodularityLost("cone of multiplicity " + to_string(b.r) + " is not semi-unimodular over slot " +
                                std::to_string(apex + 1));
  }
  if (b.r == 1) return ProperFraction::identity(c.rank());
  return type_from(*lambda, b.r);
}

LatticePoint oka_center(const Cone& c, std::size_t apex, const Overlattice& L) {
  ProperFraction t = singularity_type(c, apex, L);
  if (t.is_identity()) throw PreconditionError("a smooth cone has no Oka center");
  LatticePoint center = LatticePoint::zero(c.rank());
  for (std::size_t j = 0; j < c.rank(); ++j) {
    if (t[j] == 0) continue;
    Rational tj(t[j], t.denominator());
    tj.canonicalize();
    center = center + c.ray(j) * tj;
  }
  return center;
}

// ---------------------------------------------------------------------------
// Fans

Fan::Fan(Overlattice lattice) : lattice_(std::move(lattice)) {}

std::size_t Fan::add_ray(const LatticePoint& p) {
  if (p.rank() != rank()) throw PreconditionError("ray rank does not match fan rank");
  auto [it, inserted] = index_.emplace(p, rays_.size());
  if (inserted) rays_.push_back(p);
  return it->second;
}

void Fan::add_cone(const Cone& c) {
  std::vector<std::size_t> idx;
  for (const auto& p : c.rays()) idx.push_back(add_ray(p));
  cones_.push_back(std::move(idx));
}

void Fan::add_cone(std::vector<std::size_t> ray_indices) {
  if (ray_indices.size() != rank()) throw PreconditionError("a cone needs exactly n rays");
  for (auto i : ray_indices) {
    if (i >= rays_.size()) throw PreconditionError("cone refers to ray " + std::to_string(i) + " which does not exist");
  }
  cones_.push_back(std::move(ray_indices));
}

Cone Fan::cone(std::size_t i) const {
  std::vector<LatticePoint> rays;
  for (auto k : cones_.at(i)) rays.push_back(rays_[k]);
  return Cone(std::move(rays));
}

std::optional<std::size_t> Fan::ray_index(const LatticePoint& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ResolutionTranscript::add(TranscriptNode node) {
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

// ---------------------------------------------------------------------------
// Fujiki-Oka recursion

std::size_t default_max_cones() {
  if (const char* env = std::getenv("CREPANTIA_MAX_CONES")) {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultMaxCones;
}

FujikiOkaResult fujiki_oka_resolve(const Cone& root, std::size_t apex, const Overlattice& L, std::size_t max_cones) {
  const std::size_t n = L.rank();
  if (root.rank() != n) throw PreconditionError("cone rank does not match lattice rank");
  if (apex >= n) throw PreconditionError("apex slot out of range");

  FujikiOkaResult out{Fan(L), ResolutionTranscript()};
  for (const auto& p : root.rays()) out.fan.add_ray(p);

  TranscriptNode first;
  first.word = Word();
  first.cone = root;
  first.apex = apex;
  first.type = ProperFraction::identity(n);
  std::vector<std::size_t> stack{out.transcript.add(std::move(first))};

  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    const Cone cone = out.transcript.nodes()[idx].cone;
    const auto word = out.transcript.nodes()[idx].word;

    Barycentric b = barycentric(cone, L);
    if (b.r == 1) {
      out.fan.add_cone(cone);
      if (out.fan.size() > max_cones)
        throw ResourceLimitExceeded("resolution exceeds " + std::to_string(max_cones) + " cones");
      continue;
    }
    auto lambda = cyclic_generator(b, apex);
    if (!lambda) {
      throw SemiUnimodularityLost("cone of multiplicity " + to_string(b.r) + " is not semi-unimodular over slot " +
                                  std::to_string(apex + 1));
    }
    ProperFraction type = type_from(*lambda, b.r);
    LatticePoint center = LatticePoint::zero(n);
    for (std::size_t j = 0; j < n; ++j) center = center + cone.ray(j) * (*lambda)[j];
    out.fan.add_ray(center);

    std::vector<std::size_t> children;
    for (std::size_t j = 0; j < n; ++j) {
      if (type[j] == 0) continue;
      TranscriptNode child;
      if (j != apex && word) child.word = word->then(letter_of(j, apex));
      child.cone = cone.replace(j, center);
      child.apex = apex;
      child.type = ProperFraction::identity(n);
      children.push_back(out.transcript.add(std::move(child)));
    }
    TranscriptNode& node = out.transcript.node(idx);
    node.type = std::move(type);
    node.center = center;
    node.children = children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discrepancies

std::map<LatticePoint, Rational> fan_discrepancies(const Fan& fan) {
  std::map<LatticePoint, Rational> out;
  for (const auto& p : fan.rays()) {
    if (p.is_unit_vector()) continue;
    out.emplace(p, fan.lattice().primitive_representative(p).age() - 1);
  }
  return out;
}

bool is_crepant(const Fan& fan) {
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (!is_smooth(fan.cone(i), fan.lattice()))
      throw PreconditionError("cone " + std::to_string(i) + " is not smooth");
  }
  for (const auto& [ray, d] : fan_discrepancies(fan)) {
    if (d != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

bool opposite_sides(const std::vector<LatticePoint>& shared, const LatticePoint& u, const LatticePoint& v) {
  RationalMatrix mu, mv;
  for (const auto& s : shared) {
    mu.push_back(s.coords());
    mv.push_back(s.coords());
  }
  mu.push_back(u.coords());
  mv.push_back(v.coords());
  Rational du = determinant(std::move(mu));
  Rational dv = determinant(std::move(mv));
  return (du > 0 && dv < 0) || (du < 0 && dv > 0);
}

bool separable(const std::vector<LatticePoint>& shared, const std::vector<LatticePoint>& only_a,
               const std::vector<LatticePoint>& only_b, std::size_t n) {
  std::vector<LinearConstraint> cons;
  for (const auto& s : shared) cons.push_back({s.coords(), Relation::Equal, Rational(0)});
  for (const auto& u : only_a) cons.push_back({u.coords(), Relation::GreaterEqual, Rational(1)});
  for (const auto& v : only_b) cons.push_back({v.coords(), Relation::LessEqual, Rational(-1)});
  return is_feasible(cons, n);
}

}  // namespace

VerificationReport verify_resolution(const Fan& fan, const Cone& root) {
  VerificationReport rep;
  const Overlattice& L = fan.lattice();
  const std::size_t n = L.rank();
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    rep.failures.push_back(std::move(msg));
  };

  RationalMatrix rm;
  for (const auto& p : root.rays()) rm.push_back(p.coords());
  const RationalMatrix rinv = inverse(rm);
  (void)cone_determinant(root, L);

  // Root coordinates of every ray, and the point on the slice where they sum to 1.
  std::vector<RationalVector> slice(fan.rays().size());
  std::vector<bool> on_slice(fan.rays().size(), true);
  for (std::size_t i = 0; i < fan.rays().size(); ++i) {
    const auto& x = fan.rays()[i].coords();
    RationalVector mu(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) mu[j] += x[k] * rinv[k][j];
    }
    Rational sum = 0;
    bool inside = true;
    for (const auto& m : mu) {
      sum += m;
      if (m < 0) inside = false;
    }
    if (!inside) fail(rep.contained, "ray " + fan.rays()[i].to_string() + " lies outside the root cone");
    if (sum <= 0) {
      on_slice[i] = false;
      continue;
    }
    for (auto& m : mu) m /= sum;
    slice[i] = std::move(mu);
  }

  // Multiplicities are not additive under subdivision, volumes of the slice
  // simplices are: they must add up to the root slice's, which is 1 in root
  // coordinates.
  Rational volume = 0;
  bool measurable = true;
  for (std::size_t c = 0; c < fan.size(); ++c) {
    try {
      Integer d = cone_determinant(fan.cone(c), L);
      if (d != 1) fail(rep.smooth, "cone " + std::to_string(c) + " has multiplicity " + to_string(d));
    } catch (const Error& e) {
      fail(rep.smooth, "cone " + std::to_string(c) + ": " + e.what());
    }
    RationalMatrix m;
    for (auto k : fan.cones()[c]) {
      if (!on_slice[k]) measurable = false;
      m.push_back(slice[k]);
    }
    if (measurable) volume += abs(determinant(std::move(m)));
  }
  if (!measurable) {
    fail(rep.covers, "some ray is not a nonzero point of the root cone");
  } else if (volume != 1) {
    fail(rep.covers, "slice volumes add up to " + to_string(volume) + " of the root's");
  }

  // Bounding boxes of each cone's slice polytope.
  struct Box {
    bool valid = true;
    RationalVector lo, hi;
  };
  std::vector<Box> boxes(fan.size());
  std::vector<std::vector<std::size_t>> sorted(fan.size());
  for (std::size_t c = 0; c < fan.size(); ++c) {
    sorted[c] = fan.cones()[c];
    std::sort(sorted[c].begin(), sorted[c].end());
    Box& b = boxes[c];
    for (auto k : sorted[c]) {
      if (!on_slice[k]) {
        b.valid = false;
        break;
      }
      if (b.lo.empty()) {
        b.lo = b.hi = slice[k];
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (slice[k][j] < b.lo[j]) b.lo[j] = slice[k][j];
        if (slice[k][j] > b.hi[j]) b.hi[j] = slice[k][j];
      }
    }
  }

  for (std::size_t a = 0; a < fan.size(); ++a) {
    for (std::size_t b = a + 1; b < fan.size(); ++b) {
      const auto& A = sorted[a];
      const auto& B = sorted[b];
      if (boxes[a].valid && boxes[b].valid) {
        bool apart = false;
        for (std::size_t j = 0; j < n && !apart; ++j) {
          apart = boxes[a].hi[j] < boxes[b].lo[j] || boxes[b].hi[j] < boxes[a].lo[j];
        }
        if (apart) continue;
      }
      std::vector<std::size_t> shared, only_a, only_b;
      std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(shared));
      std::set_difference(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(only_a));
      std::set_difference(B.begin(), B.end(), A.begin(), A.end(), std::back_inserter(only_b));
      auto pts = [&](const std::vector<std::size_t>& idx) {
        std::vector<LatticePoint> out;
        for (auto k : idx) out.push_back(fan.rays()[k]);
        return out;
      };
      bool ok;
      if (only_a.empty()) {
        ok = false;
      } else if (shared.size() + 1 == n) {
        ok = opposite_sides(pts(shared), fan.rays()[only_a[0]], fan.rays()[only_b[0]]);
      } else {
        ok = separable(pts(shared), pts(only_a), pts(only_b), n);
      }
      if (!ok) {
        fail(rep.proper_faces,
             "cones " + std::to_string(a) + " and " + std::to_string(b) + " do not meet in a common face");
      }
    }
  }
  return rep;
}

}  // namespace crepantia
