#include "crepantia/lattice.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

#include "crepantia/errors.hpp"

namespace crepantia {

namespace {

std::string join_integers(const IntVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += to_string(v[i]);
  }
  return out;
}

// Row Hermite normal form of the integer lattice spanned by `rows`; the
// lattice must have full rank n. Pivots positive, entries above a pivot
// reduced into [0, pivot).
IntMatrix hermite_normal_form(IntMatrix rows, std::size_t n) {
  IntMatrix hnf;
  for (std::size_t col = 0; col < n; ++col) {
    for (;;) {
      // Smallest nonzero |entry| in this column becomes the pivot row.
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
      }
      if (best == rows.size()) throw PreconditionError("lattice generators do not have full rank");
      std::swap(rows[0], rows[best]);
      bool clean = true;
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Integer q = floor_div(rows[i][col], rows[0][col]);
        for (std::size_t j = col; j < n; ++j) rows[i][j] -= q * rows[0][j];
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[0][col] < 0) {
      for (auto& x : rows[0]) x = -x;
    }
    hnf.push_back(rows[0]);
    rows.erase(rows.begin());
    std::erase_if(rows, [](const IntVector& r) {
      return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
    });
  }
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < col; ++i) {
      Integer q = floor_div(hnf[i][col], hnf[col][col]);
      if (q == 0) continue;
      for (std::size_t j = col; j < n; ++j) hnf[i][j] -= q * hnf[col][j];
    }
  }
  return hnf;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProperFraction

ProperFraction::ProperFraction(IntVector numerators, Integer denominator)
    : numerators_(std::move(numerators)), denominator_(std::move(denominator)) {
  if (numerators_.empty()) throw PreconditionError("proper fraction needs at least one entry");
  if (denominator_ < 1) throw PreconditionError("proper fraction denominator must be positive");
  for (auto& a : numerators_) a = mod_floor(a, denominator_);
  Integer g = gcd(gcd_of(numerators_), denominator_);
  if (g != 1) {
    for (auto& a : numerators_) a /= g;
    denominator_ /= g;
  }
}

ProperFraction ProperFraction::identity(std::size_t rank) {
  return ProperFraction(IntVector(rank, Integer(0)), 1);
}

Rational ProperFraction::age() const {
  Integer sum = 0;
  for (const auto& a : numerators_) sum += a;
  Rational q(sum, denominator_);
  q.canonicalize();
  return q;
}

std::size_t ProperFraction::height() const {
  return static_cast<std::size_t>(std::count_if(numerators_.begin(), numerators_.end(),
                                                [](const Integer& a) { return a != 0; }));
}

bool ProperFraction::has_integral_age() const { return is_integral(age()); }

ProperFraction ProperFraction::operator+(const ProperFraction& other) const {
  if (other.rank() != rank()) throw PreconditionError("rank mismatch in group composition");
  Integer d = lcm(denominator_, other.denominator_);
  Integer s = d / denominator_;
  Integer t = d / other.denominator_;
  IntVector sum(rank());
  for (std::size_t i = 0; i < rank(); ++i) sum[i] = numerators_[i] * s + other.numerators_[i] * t;
  return ProperFraction(std::move(sum), d);
}

ProperFraction ProperFraction::inverse() const {
  IntVector neg(rank());
  for (std::size_t i = 0; i < rank(); ++i) neg[i] = -numerators_[i];
  return ProperFraction(std::move(neg), denominator_);
}

ProperFraction ProperFraction::power(const Integer& k) const {
  IntVector scaled(rank());
  for (std::size_t i = 0; i < rank(); ++i) scaled[i] = numerators_[i] * k;
  return ProperFraction(std::move(scaled), denominator_);
}

RationalVector ProperFraction::point() const {
  RationalVector p;
  p.reserve(rank());
  for (const auto& a : numerators_) {
    Rational q(a, denominator_);
    q.canonicalize();
    p.push_back(q);
  }
  return p;
}

std::string ProperFraction::to_string() const {
  return "1/" + crepantia::to_string(denominator_) + "(" + join_integers(numerators_) + ")";
}

std::strong_ordering operator<=>(const ProperFraction& a, const ProperFraction& b) {
  if (a.rank() != b.rank()) return a.rank() <=> b.rank();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    int c = cmp(a.numerators_[i] * b.denominator_, b.numerators_[i] * a.denominator_);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

ProperFraction make_proper_fraction(IntVector numerators, Integer denominator) {
  return ProperFraction(std::move(numerators), std::move(denominator));
}

Rational age(const ProperFraction& f) { return f.age(); }

std::size_t height(const GroupElement& g) { return g.height(); }

// ---------------------------------------------------------------------------
// LatticePoint

LatticePoint::LatticePoint(RationalVector coords) : coords_(std::move(coords)) {
  for (auto& c : coords_) c.canonicalize();
}

LatticePoint::LatticePoint(std::initializer_list<Rational> coords) : LatticePoint(RationalVector(coords)) {}

LatticePoint LatticePoint::zero(std::size_t rank) { return LatticePoint(RationalVector(rank, Rational(0))); }

LatticePoint LatticePoint::unit(std::size_t rank, std::size_t i) {
  RationalVector v(rank, Rational(0));
  v.at(i) = 1;
  return LatticePoint(std::move(v));
}

LatticePoint LatticePoint::from_fraction(const ProperFraction& f) { return LatticePoint(f.point()); }

Rational LatticePoint::age() const {
  Rational s = 0;
  for (const auto& c : coords_) s += c;
  return s;
}

bool LatticePoint::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool LatticePoint::is_nonnegative() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c >= 0; });
}

bool LatticePoint::is_unit_vector() const {
  std::size_t ones = 0;
  for (const auto& c : coords_) {
    if (c == 1) {
      ++ones;
    } else if (c != 0) {
      return false;
    }
  }
  return ones == 1;
}

Integer LatticePoint::common_denominator() const {
  Integer d = 1;
  for (const auto& c : coords_) d = lcm(d, c.get_den());
  return d;
}

IntVector LatticePoint::numerators() const {
  Integer d = common_denominator();
  IntVector out;
  out.reserve(rank());
  for (const auto& c : coords_) out.push_back(c.get_num() * (d / c.get_den()));
  return out;
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  RationalVector v(rank());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = coords_[i] + o.coords_.at(i);
  return LatticePoint(std::move(v));
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  RationalVector v(rank());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = coords_[i] - o.coords_.at(i);
  return LatticePoint(std::move(v));
}

LatticePoint LatticePoint::operator*(const Rational& k) const {
  RationalVector v(rank());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = coords_[i] * k;
  return LatticePoint(std::move(v));
}

LatticePoint LatticePoint::operator/(const Rational& k) const {
  RationalVector v(rank());
  for (std::size_t i = 0; i < rank(); ++i) v[i] = coords_[i] / k;
  return LatticePoint(std::move(v));
}

std::string LatticePoint::to_string() const {
  Integer d = common_denominator();
  std::string body = "(" + join_integers(numerators()) + ")";
  if (d == 1) return body;
  return "1/" + crepantia::to_string(d) + body;
}

std::strong_ordering operator<=>(const LatticePoint& a, const LatticePoint& b) {
  if (a.rank() != b.rank()) return a.rank() <=> b.rank();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    int c = cmp(a.coords_[i], b.coords_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// torsion closure

std::vector<RationalVector> torsion_closure(const std::vector<RationalVector>& generators, std::size_t rank) {
  Integer d = 1;
  for (const auto& g : generators) {
    if (g.size() != rank) throw PreconditionError("torsion_closure: rank mismatch");
    for (const auto& c : g) d = lcm(d, c.get_den());
  }
  std::vector<IntVector> gens;
  for (const auto& g : generators) {
    IntVector v(rank);
    for (std::size_t i = 0; i < rank; ++i) v[i] = mod_floor(g[i].get_num() * (d / g[i].get_den()), d);
    if (std::any_of(v.begin(), v.end(), [](const Integer& x) { return x != 0; })) gens.push_back(std::move(v));
  }
  std::set<IntVector> seen;
  std::deque<IntVector> frontier;
  IntVector origin(rank, Integer(0));
  seen.insert(origin);
  frontier.push_back(origin);
  while (!frontier.empty()) {
    IntVector x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : gens) {
      IntVector y(rank);
      for (std::size_t i = 0; i < rank; ++i) {
        y[i] = x[i] + g[i];
        if (y[i] >= d) y[i] -= d;
      }
      if (seen.insert(y).second) frontier.push_back(std::move(y));
    }
  }
  std::vector<RationalVector> out;
  out.reserve(seen.size());
  for (const auto& v : seen) {
    RationalVector q(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      q[i] = Rational(v[i], d);
      q[i].canonicalize();
    }
    out.push_back(std::move(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Overlattice

Overlattice::Overlattice(std::size_t rank) : Overlattice(rank, {}) {}

Overlattice::Overlattice(std::size_t rank, std::vector<GroupElement> generators)
    : rank_(rank), generators_(std::move(generators)) {
  if (rank_ == 0) throw PreconditionError("overlattice rank must be positive");
  Integer d = 1;
  for (const auto& g : generators_) {
    if (g.rank() != rank_) throw PreconditionError("generator " + g.to_string() + " does not have rank " + std::to_string(rank_));
    d = lcm(d, g.denominator());
  }
  IntMatrix rows;
  for (std::size_t i = 0; i < rank_; ++i) {
    IntVector e(rank_, Integer(0));
    e[i] = d;
    rows.push_back(std::move(e));
  }
  for (const auto& g : generators_) {
    IntVector v(rank_);
    Integer s = d / g.denominator();
    for (std::size_t i = 0; i < rank_; ++i) v[i] = g[i] * s;
    rows.push_back(std::move(v));
  }
  IntMatrix hnf = hermite_normal_form(std::move(rows), rank_);
  Integer pivots = 1;
  basis_.assign(rank_, RationalVector(rank_));
  for (std::size_t i = 0; i < rank_; ++i) {
    pivots *= hnf[i][i];
    for (std::size_t j = 0; j < rank_; ++j) {
      basis_[i][j] = Rational(hnf[i][j], d);
      basis_[i][j].canonicalize();
    }
  }
  Integer dn = 1;
  for (std::size_t i = 0; i < rank_; ++i) dn *= d;
  index_ = dn / pivots;
}

Overlattice Overlattice::refine(const GroupElement& g) const {
  auto gens = generators_;
  gens.push_back(g);
  return Overlattice(rank_, std::move(gens));
}

std::optional<IntVector> Overlattice::coordinates(const LatticePoint& p) const {
  if (p.rank() != rank_) throw PreconditionError("point rank does not match lattice rank");
  IntVector c(rank_);
  RationalVector rest = p.coords();
  for (std::size_t j = 0; j < rank_; ++j) {
    Rational cj = rest[j] / basis_[j][j];
    if (!is_integral(cj)) return std::nullopt;
    c[j] = cj.get_num();
    if (c[j] == 0) continue;
    for (std::size_t k = j; k < rank_; ++k) rest[k] -= cj * basis_[j][k];
  }
  return c;
}

bool Overlattice::contains(const LatticePoint& p) const { return coordinates(p).has_value(); }

bool Overlattice::contains(const ProperFraction& f) const { return contains(LatticePoint::from_fraction(f)); }

LatticePoint Overlattice::primitive_representative(const LatticePoint& p) const {
  if (p.is_zero()) throw PreconditionError("the zero vector has no primitive representative");
  auto c = coordinates(p);
  if (!c) throw PreconditionError(p.to_string() + " is not a lattice point");
  return p / Rational(gcd_of(*c));
}

bool Overlattice::is_primitive(const LatticePoint& p) const {
  if (p.is_zero()) return false;
  auto c = coordinates(p);
  return c && gcd_of(*c) == 1;
}

Integer Overlattice::cone_determinant(const std::vector<LatticePoint>& rays) const {
  if (rays.size() != rank_) throw PreconditionError("cone_determinant needs exactly n rays");
  IntMatrix m;
  for (const auto& r : rays) {
    auto c = coordinates(r);
    if (!c) throw PreconditionError(r.to_string() + " is not a lattice point");
    m.push_back(std::move(*c));
  }
  Integer det = abs(determinant(std::move(m)));
  if (det == 0) throw PreconditionError("cone rays are linearly dependent");
  return det;
}

std::vector<LatticePoint> Overlattice::simplex_lattice_points(const std::vector<LatticePoint>& vertices) const {
  if (vertices.size() != rank_) throw PreconditionError("simplex needs exactly n vertices");
  RationalMatrix v;
  for (const auto& p : vertices) {
    if (!contains(p)) throw PreconditionError("simplex vertex " + p.to_string() + " is not a lattice point");
    v.push_back(p.coords());
  }
  if (crepantia::rank(v) != rank_) throw PreconditionError("degenerate simplex");
  RationalMatrix vinv = inverse(v);
  // Lattice basis vectors in barycentric-cone coordinates; their classes
  // modulo the vertex sublattice generate L / Z<vertices>.
  std::vector<RationalVector> gens;
  for (const auto& b : basis_) {
    RationalVector lambda(rank_, Rational(0));
    for (std::size_t j = 0; j < rank_; ++j) {
      for (std::size_t k = 0; k < rank_; ++k) lambda[j] += b[k] * vinv[k][j];
    }
    gens.push_back(std::move(lambda));
  }
  std::vector<LatticePoint> out(vertices.begin(), vertices.end());
  for (const auto& lambda : torsion_closure(gens, rank_)) {
    Rational sum = 0;
    for (const auto& x : lambda) sum += x;
    if (sum != 1) continue;
    RationalVector p(rank_, Rational(0));
    for (std::size_t j = 0; j < rank_; ++j) {
      for (std::size_t k = 0; k < rank_; ++k) p[k] += lambda[j] * v[j][k];
    }
    out.emplace_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> Overlattice::junior_simplex_points() const {
  std::vector<LatticePoint> units;
  for (std::size_t i = 0; i < rank_; ++i) units.push_back(LatticePoint::unit(rank_, i));
  return simplex_lattice_points(units);
}

std::vector<GroupElement> Overlattice::coset_representatives() const {
  std::vector<RationalVector> gens;
  for (const auto& g : generators_) gens.push_back(g.point());
  std::vector<GroupElement> out;
  for (const auto& v : torsion_closure(gens, rank_)) {
    Integer d = 1;
    for (const auto& c : v) d = lcm(d, c.get_den());
    IntVector a(rank_);
    for (std::size_t i = 0; i < rank_; ++i) a[i] = v[i].get_num() * (d / v[i].get_den());
    out.emplace_back(std::move(a), d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Overlattice::is_gorenstein() const {
  // Integral age is a homomorphism condition; checking generators suffices.
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const GroupElement& g) { return g.has_integral_age(); });
}

Overlattice overlattice(const std::vector<GroupElement>& generators, std::size_t rank) {
  return Overlattice(rank, generators);
}

}  // namespace crepantia
