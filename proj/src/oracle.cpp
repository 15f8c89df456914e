#include "crepantia/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_set>

#include "crepantia/continued_fraction.hpp"
#include "crepantia/errors.hpp"
#include "crepantia/fan.hpp"

namespace crepantia {

namespace {

using Small = std::vector<std::int64_t>;

struct SmallHash {
  std::size_t operator()(const Small& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

// The group L / Z^n as numerator vectors over a common denominator D.
struct Residues {
  std::int64_t D = 1;
  std::size_t n = 0;
  std::unordered_set<Small, SmallHash> set;
};

Residues residues(const Overlattice& L) {
  Residues out;
  out.n = L.rank();
  Integer D = 1;
  for (const auto& g : L.generators()) D = lcm(D, g.denominator());
  if (!D.fits_slong_p() || D > 1000000) throw ResourceLimitExceeded("lattice denominator too large for the oracle");
  out.D = D.get_si();
  std::vector<Small> gens;
  for (const auto& g : L.generators()) {
    Small v(out.n);
    Integer scale = D / g.denominator();
    for (std::size_t i = 0; i < out.n; ++i) v[i] = Integer(g[i] * scale).get_si();
    gens.push_back(std::move(v));
  }
  Small zero(out.n, 0);
  out.set.insert(zero);
  std::vector<Small> queue{zero};
  while (!queue.empty()) {
    Small cur = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : gens) {
      Small next(out.n);
      for (std::size_t i = 0; i < out.n; ++i) next[i] = (cur[i] + g[i]) % out.D;
      if (out.set.insert(next).second) {
        if (out.set.size() > 5000000) throw ResourceLimitExceeded("group too large for the oracle");
        queue.push_back(std::move(next));
      }
    }
  }
  return out;
}

LatticePoint to_point(const Small& v, std::int64_t D) {
  RationalVector c;
  for (auto x : v) c.emplace_back(Integer(x), Integer(D));
  for (auto& x : c) x.canonicalize();
  return LatticePoint(std::move(c));
}

}  // namespace

std::vector<LatticePoint> hilbert_basis(const Overlattice& L) {
  const Residues R = residues(L);
  const std::size_t n = R.n;
  // Candidates: the nonzero points of the half-open unit box, then the unit vectors.
  std::vector<Small> cand;
  for (const auto& v : R.set) {
    if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; })) cand.push_back(v);
  }
  std::sort(cand.begin(), cand.end());
  for (std::size_t i = 0; i < n; ++i) {
    Small e(n, 0);
    e[i] = R.D;
    cand.push_back(std::move(e));
  }
  std::vector<LatticePoint> out;
  for (const auto& p : cand) {
    bool reducible = false;
    for (const auto& q : cand) {
      if (q == p) continue;
      bool below = true;
      for (std::size_t i = 0; i < n && below; ++i) below = q[i] <= p[i];
      if (below) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(to_point(p, R.D));
  }
  std::sort(out.begin(), out.end());
  return out;
}

JuniorPoints junior_points(const Overlattice& L) {
  const Residues R = residues(L);
  const std::size_t n = R.n;
  JuniorPoints out;
  // Every composition of D into n nonnegative parts.
  Small k(n, 0);
  auto visit = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
    if (i + 1 == n) {
      k[i] = left;
      Small red(n);
      for (std::size_t j = 0; j < n; ++j) red[j] = k[j] % R.D;
      if (!R.set.count(red)) return;
      bool vertex = std::count(k.begin(), k.end(), std::int64_t(0)) == static_cast<std::ptrdiff_t>(n - 1);
      (vertex ? out.vertices : out.elements).push_back(to_point(k, R.D));
      return;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      k[i] = x;
      self(self, i + 1, left - x);
    }
  };
  visit(visit, 0, R.D);
  std::sort(out.elements.begin(), out.elements.end());
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

bool first_existence_check(const Overlattice& L) {
  for (const auto& g : L.generators()) {
    if (!g.has_integral_age())
      throw PreconditionError("first_existence_check needs a Gorenstein lattice; " + g.to_string() +
                              " has non-integral age");
  }
  auto hb = hilbert_basis(L);
  auto jp = junior_points(L);
  std::vector<LatticePoint> expected = jp.elements;
  expected.insert(expected.end(), jp.vertices.begin(), jp.vertices.end());
  std::sort(expected.begin(), expected.end());
  return hb == expected;
}

TypeCrossCheck cross_check_types(const ProperFraction& f) {
  if (!is_semi_unimodular(f)) throw PreconditionError(f.to_string() + " is not semi-unimodular");
  const std::size_t n = f.rank();
  auto res = fujiki_oka_resolve(Cone::orthant(n), 0, Overlattice(n, {f}));
  auto rp = remainder_polynomial(f);
  TypeCrossCheck out;
  std::set<Word> seen;
  for (const auto& node : res.transcript.nodes()) {
    if (!node.word) continue;
    ProperFraction t = node.normalized_type();
    const ProperFraction* coeff = rp.find(*node.word);
    if (t.is_identity()) {
      if (coeff) {
        out.ok = false;
        out.mismatches.push_back(node.word->to_string() + ": smooth cone but coefficient " + coeff->to_string());
      }
      continue;
    }
    ++out.checked;
    seen.insert(*node.word);
    if (!coeff || *coeff != t) {
      out.ok = false;
      out.mismatches.push_back(node.word->to_string() + ": cone type " + t.to_string() + " vs " +
                               (coeff ? coeff->to_string() : std::string("no term")));
    }
  }
  for (const auto& [w, c] : rp) {
    if (!seen.count(w)) {
      out.ok = false;
      out.mismatches.push_back(w.to_string() + ": term " + c.to_string() + " has no cone");
    }
  }
  return out;
}

}  // namespace crepantia
