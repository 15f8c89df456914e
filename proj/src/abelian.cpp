#include "crepantia/abelian.hpp"

#include <algorithm>
#include <set>

#include "crepantia/errors.hpp"

namespace crepantia {

// ---------------------------------------------------------------------------
// Groups

AbelianGroup::AbelianGroup(std::size_t rank, std::vector<GroupElement> generators)
    : rank_(rank), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.rank() != rank_) throw PreconditionError("generator " + g.to_string() + " has the wrong rank");
  }
  elements_ = Overlattice(rank_, generators_).coset_representatives();
  std::sort(elements_.begin(), elements_.end());
}

bool AbelianGroup::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool AbelianGroup::is_gorenstein() const {
  return std::all_of(elements_.begin(), elements_.end(), [](const GroupElement& g) { return g.has_integral_age(); });
}

bool AbelianGroup::is_cyclic() const {
  return std::any_of(elements_.begin(), elements_.end(),
                     [&](const GroupElement& g) { return g.denominator() == Integer(order()); });
}

AbelianGroup enumerate_group(const std::vector<GroupElement>& gens) {
  if (gens.empty()) throw PreconditionError("a group needs at least one generator");
  return AbelianGroup(gens.front().rank(), gens);
}

bool same_group(const AbelianGroup& a, const AbelianGroup& b) {
  return a.rank() == b.rank() && a.elements() == b.elements();
}

// ---------------------------------------------------------------------------
// Basic generating systems

std::vector<GroupElement> BasicGeneratingSystem::nontrivial_rows() const {
  std::vector<GroupElement> out;
  for (const auto& r : rows) {
    if (!r.is_identity()) out.push_back(r);
  }
  return out;
}

std::size_t BasicGeneratingSystem::leading_slot(const GroupElement& row) {
  for (std::size_t j = 0; j < row.rank(); ++j) {
    if (row[j] != 0) return j;
  }
  throw PreconditionError("the identity has no leading slot");
}

BasicGeneratingSystem basic_generating_system(const AbelianGroup& G) {
  if (!G.is_gorenstein()) throw PreconditionError("basic generating systems need a group inside SL(n)");
  const std::size_t n = G.rank();

  // G_i: elements vanishing in slots < i.
  std::vector<GroupElement> level = G.elements();
  BasicGeneratingSystem sys;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Order of the projection of G_i to slot i.
    Integer m = 1;
    for (const auto& g : level) {
      if (g[i] != 0) m = lcm(m, g.denominator() / gcd(g[i], g.denominator()));
    }
    if (m == 1) {
      sys.rows.push_back(ProperFraction::identity(n));
    } else {
      const GroupElement* best = nullptr;
      Integer best_max;
      for (const auto& g : level) {
        if (g.denominator() != m || g[i] != 1 || g.age() != 1) continue;
        Integer mx = *std::max_element(g.numerators().begin(), g.numerators().end());
        if (!best || mx < best_max || (mx == best_max && g.numerators() > best->numerators())) {
          best = &g;
          best_max = mx;
        }
      }
      if (!best) {
        throw NoAgeOneSystem("no age-one generator of the form 1/" + to_string(m) + "(0,...,0,1,...) in slot " +
                             std::to_string(i + 1));
      }
      sys.rows.push_back(*best);
    }
    std::vector<GroupElement> next;
    for (const auto& g : level) {
      if (g[i] == 0) next.push_back(g);
    }
    level = std::move(next);
  }
  if (level.size() != 1) throw NoAgeOneSystem("group elements supported on the last slot alone");

  auto rows = sys.nontrivial_rows();
  if (rows.empty()) rows.push_back(ProperFraction::identity(n));
  if (!same_group(AbelianGroup(n, rows), G)) throw Error("generating system does not regenerate the group");
  return sys;
}

LatticePoint phi_embed(std::size_t i, const ProperFraction& f, const LatticePoint& x) {
  if (!is_semi_unimodular(f)) throw PreconditionError("phi_embed needs a semi-unimodular fraction");
  if (!f.has_integral_age()) throw PreconditionError("phi_embed needs a fraction of integral age");
  if (x.rank() != f.rank()) throw PreconditionError("point and fraction ranks differ");
  auto child = remainder_map(i, f);
  if (is_infinite(child)) throw PreconditionError("R_" + std::to_string(i) + " of " + f.to_string() + " is infinite");
  Overlattice Ni(f.rank(), {std::get<ProperFraction>(child)});
  if (!Ni.contains(x)) throw PreconditionError(x.to_string() + " is not in the lattice of R_" + std::to_string(i));
  const std::size_t slot = i - 1;
  const Rational xi = x[slot];
  RationalVector out = x.coords();
  out[slot] = 0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    Rational fj(f[j], f.denominator());
    fj.canonicalize();
    out[j] += xi * fj;
  }
  return LatticePoint(std::move(out));
}

// ---------------------------------------------------------------------------
// Iterated resolutions

namespace {

std::optional<std::size_t> choose_apex(const Cone& c, const Overlattice& L, std::optional<std::size_t> preferred) {
  std::vector<std::size_t> order;
  if (preferred) {
    for (std::size_t s = 0; s < c.rank(); ++s) {
      if (c.ray(s) == LatticePoint::unit(c.rank(), *preferred)) order.push_back(s);
    }
  }
  for (std::size_t s = 0; s < c.rank(); ++s) {
    if (std::find(order.begin(), order.end(), s) == order.end()) order.push_back(s);
  }
  for (auto s : order) {
    if (is_semi_unimodular_over(c, s, L)) return s;
  }
  return std::nullopt;
}

}  // namespace

namespace {

std::vector<GroupElement> canonical_chain(const AbelianGroup& G) {
  auto rows = basic_generating_system(G).nontrivial_rows();
  std::reverse(rows.begin(), rows.end());
  return rows;
}

// Slot k of the result is slot order[k] of g.
GroupElement reorder(const GroupElement& g, const std::vector<std::size_t>& order) {
  IntVector a(g.rank());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = g[order[k]];
  return GroupElement(std::move(a), g.denominator());
}

}  // namespace

IteratedResolution iterated_fujiki_oka(const AbelianGroup& G, std::size_t max_cones) {
  std::vector<GroupElement> chain;
  try {
    chain = canonical_chain(G);
  } catch (const NoAgeOneSystem&) {
    const std::size_t n = G.rank();
    if (n > 6) throw;
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    while (std::next_permutation(order.begin(), order.end())) {
      std::vector<GroupElement> gens;
      for (const auto& g : G.generators()) gens.push_back(reorder(g, order));
      AbelianGroup H(n, gens);
      try {
        chain = canonical_chain(H);
      } catch (const NoAgeOneSystem&) {
        continue;
      }
      auto res = iterated_fujiki_oka(H, chain, max_cones);
      Fan fan(G.lattice());
      for (const auto& cone : res.fan.cones()) {
        std::vector<LatticePoint> rays;
        for (auto i : cone) {
          const LatticePoint& p = res.fan.rays()[i];
          RationalVector back(n);
          for (std::size_t k = 0; k < n; ++k) back[order[k]] = p[k];
          rays.emplace_back(std::move(back));
        }
        fan.add_cone(Cone(std::move(rays)));
      }
      res.transcript.coordinates = order;
      return IteratedResolution{std::move(fan), std::move(res.transcript)};
    }
    throw;
  }
  return iterated_fujiki_oka(G, chain, max_cones);
}

IteratedResolution iterated_fujiki_oka(const AbelianGroup& G, const std::vector<GroupElement>& chain,
                                       std::size_t max_cones) {
  const std::size_t n = G.rank();
  for (const auto& g : chain) {
    if (g.rank() != n) throw PreconditionError("chain element " + g.to_string() + " has the wrong rank");
  }
  {
    std::vector<GroupElement> gens = chain;
    gens.push_back(ProperFraction::identity(n));
    if (!same_group(AbelianGroup(n, gens), G)) throw PreconditionError("the chain does not generate the group");
  }

  Fan current{Overlattice(n)};
  current.add_cone(Cone::orthant(n));
  StageTranscript transcript;
  std::vector<GroupElement> sub;

  for (const auto& g : chain) {
    if (g.is_identity()) continue;
    sub.push_back(g);
    Overlattice L(n, sub);
    std::optional<std::size_t> preferred;
    for (std::size_t j = 0; j < n; ++j) {
      if (g[j] == 1) {
        preferred = j;
        break;
      }
    }

    Fan next{L};
    for (std::size_t j = 0; j < n; ++j) next.add_ray(LatticePoint::unit(n, j));
    std::vector<StageCone> resolved;
    for (std::size_t c = 0; c < current.size(); ++c) {
      const Cone before = current.cone(c);
      std::vector<LatticePoint> rays;
      for (const auto& p : before.rays()) rays.push_back(L.primitive_representative(p));
      Cone cone(std::move(rays));
      if (is_smooth(cone, L)) {
        next.add_cone(cone);
        continue;
      }
      auto apex = choose_apex(cone, L, preferred);
      if (!apex) {
        std::string text;
        for (const auto& p : cone.rays()) text += (text.empty() ? "" : ", ") + p.to_string();
        throw SemiUnimodularityLost("stage " + std::to_string(transcript.stages.size() + 1) + ": cone (" + text +
                                    ") is not semi-unimodular over any of its rays");
      }
      auto res = fujiki_oka_resolve(cone, *apex, L, max_cones);
      ProperFraction type = res.transcript.root().normalized_type();
      resolved.push_back(StageCone{cone, *apex, type, remainder_polynomial(type)});
      for (std::size_t k = 0; k < res.fan.size(); ++k) next.add_cone(res.fan.cone(k));
      if (next.size() > max_cones)
        throw ResourceLimitExceeded("resolution exceeds " + std::to_string(max_cones) + " cones");
    }
    transcript.stages.push_back(Stage{g, sub, L, next, std::move(resolved)});
    current = std::move(next);
  }
  return IteratedResolution{std::move(current), std::move(transcript)};
}

namespace {

IteratedVerdict judge(IteratedResolution res) {
  IteratedVerdict v{IteratedVerdictKind::Crepant, std::nullopt, std::nullopt, std::nullopt, false, std::move(res)};
  const auto& stages = v.resolution.transcript.stages;
  for (std::size_t s = 0; s < stages.size() && !v.witness; ++s) {
    for (const auto& rc : stages[s].resolved) {
      auto verdict = crepant_by_ages(rc.type);
      if (!verdict.crepant) {
        v.kind = IteratedVerdictKind::NotDetermined;
        v.stage = s;
        v.witness = verdict.witness;
        v.witness_coefficient = verdict.witness_coefficient;
        break;
      }
    }
  }
  v.fan_crepant = is_crepant(v.resolution.fan);
  if (v.kind == IteratedVerdictKind::Crepant && !v.fan_crepant)
    throw Error("stage coefficients all have age 1 but the assembled fan is not crepant");
  return v;
}

}  // namespace

IteratedVerdict crepant_iterated(const AbelianGroup& G, std::size_t max_cones) {
  return judge(iterated_fujiki_oka(G, max_cones));
}

IteratedVerdict crepant_iterated(const AbelianGroup& G, const std::vector<GroupElement>& chain,
                                 std::size_t max_cones) {
  return judge(iterated_fujiki_oka(G, chain, max_cones));
}

}  // namespace crepantia
