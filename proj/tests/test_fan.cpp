#include <doctest.h>

#include "crepantia/errors.hpp"
#include "crepantia/exact_lp.hpp"
#include "crepantia/fan.hpp"
#include "support.hpp"

using namespace crepantia;

namespace {

ProperFraction pf(IntVector a, long r) { return ProperFraction(std::move(a), r); }

LatticePoint e(std::size_t n, std::size_t i) { return LatticePoint::unit(n, i); }

FujikiOkaResult resolve(const ProperFraction& f, std::size_t apex = 0) {
  return fujiki_oka_resolve(Cone::orthant(f.rank()), apex, Overlattice(f.rank(), {f}));
}

}  // namespace

TEST_CASE("cone determinants and smoothness") {
  Overlattice L(3, {pf({1, 2, 8}, 11)});
  CHECK(cone_determinant(Cone::orthant(3), L) == 11);
  CHECK_FALSE(is_smooth(Cone::orthant(3), L));
  CHECK(is_smooth(Cone::orthant(3), Overlattice(3)));
  Cone c = Cone::orthant(3).replace(0, LatticePoint::from_fraction(pf({1, 2, 8}, 11)));
  CHECK(c.ray(1) == e(3, 1));
  CHECK(is_smooth(c, L));
}

TEST_CASE("types and Oka centers") {
  Overlattice L(3, {pf({1, 2, 8}, 11)});
  Cone root = Cone::orthant(3);
  CHECK(is_semi_unimodular_over(root, 0, L));
  CHECK(singularity_type(root, 0, L).to_string() == "1/11(1,2,8)");
  CHECK(oka_center(root, 0, L).to_string() == "1/11(1,2,8)");
  // Apex on the second ray: 6 * (1,2,8) = (6,1,4) mod 11.
  CHECK(singularity_type(root, 1, L).to_string() == "1/11(6,1,4)");
  CHECK(oka_center(root, 1, L).to_string() == "1/11(6,1,4)");
  CHECK(singularity_type(root, 0, Overlattice(3)).is_identity());
  CHECK_THROWS_AS(oka_center(root, 0, Overlattice(3)), PreconditionError);

  Overlattice klein(3, {pf({1, 1, 0}, 2), pf({0, 1, 1}, 2)});
  CHECK_FALSE(is_semi_unimodular_over(root, 0, klein));
  CHECK_THROWS_AS(singularity_type(root, 0, klein), SemiUnimodularityLost);
  CHECK_THROWS_AS(fujiki_oka_resolve(root, 0, klein), SemiUnimodularityLost);
}

TEST_CASE("every interior node has a consistent type and center") {
  // Centers are sum (t_j / r) P_j over the node's rays, inside the lattice,
  // and the node multiplicity is the type's denominator.
  for (auto f : {pf({1, 2, 8}, 11), pf({1, 6, 4, 4}, 15), pf({1, 5, 6, 12}, 24)}) {
    Overlattice L(f.rank(), {f});
    auto res = resolve(f);
    for (const auto& node : res.transcript.nodes()) {
      CHECK(cone_determinant(node.cone, L) == node.type.denominator());
      if (!node.center) continue;
      CHECK(node.type[node.apex] == 1);
      CHECK(L.contains(*node.center));
      CHECK(*node.center == oka_center(node.cone, node.apex, L));
      LatticePoint sum = LatticePoint::zero(f.rank());
      for (std::size_t j = 0; j < f.rank(); ++j) {
        Rational c(node.type[j], node.type.denominator());
        c.canonicalize();
        sum = sum + node.cone.ray(j) * c;
      }
      CHECK(sum == *node.center);
    }
  }
}

TEST_CASE("Fujiki-Oka fans of cyclic quotients") {
  auto a = resolve(pf({1, 2, 8}, 11));
  CHECK(a.fan.size() == 11);
  CHECK(a.fan.rays().size() == 8);
  CHECK(is_crepant(a.fan));
  CHECK(verify_resolution(a.fan, Cone::orthant(3)).ok());

  auto b = resolve(pf({1, 2, 4, 8}, 15));
  CHECK(b.fan.size() == 15);
  CHECK(is_crepant(b.fan));
  CHECK(verify_resolution(b.fan, Cone::orthant(4)).ok());

  auto c = resolve(pf({1, 6, 4, 4}, 15));
  CHECK(c.fan.size() == 29);
  CHECK_FALSE(is_crepant(c.fan));
  CHECK(verify_resolution(c.fan, Cone::orthant(4)).ok());
  Rational worst = 0;
  for (const auto& [p, d] : fan_discrepancies(c.fan)) worst = std::max(worst, d);
  CHECK(worst > 0);
}

TEST_CASE("transcript structure") {
  auto res = resolve(pf({1, 2, 8}, 11));
  const auto& t = res.transcript;
  const auto& root = t.root();
  REQUIRE(root.word);
  CHECK(root.word->empty());
  CHECK(root.type.to_string() == "1/11(1,2,8)");
  REQUIRE(root.center);
  CHECK(root.center->to_string() == "1/11(1,2,8)");
  REQUIRE(root.children.size() == 3);
  CHECK_FALSE(t.nodes()[root.children[0]].word);
  CHECK(t.nodes()[root.children[1]].word->to_string() == "x2");
  CHECK(t.nodes()[root.children[2]].word->to_string() == "x3");
  CHECK(t.nodes()[root.children[2]].normalized_type().to_string() == "1/8(1,2,5)");
  std::size_t leaves = 0;
  for (const auto& n : t.nodes()) {
    if (n.children.empty()) {
      ++leaves;
      CHECK(n.type.is_identity());
      CHECK_FALSE(n.center);
    }
  }
  CHECK(leaves == res.fan.size());
}

TEST_CASE("zero slots spawn no child") {
  auto res = resolve(pf({1, 1, 0}, 2));
  CHECK(res.transcript.root().children.size() == 2);
  CHECK(res.fan.size() == 2);
  CHECK(verify_resolution(res.fan, Cone::orthant(3)).ok());
}

TEST_CASE("a non-default apex also resolves") {
  auto res = resolve(pf({1, 2, 8}, 11), 1);
  CHECK(res.transcript.root().normalized_type().to_string() == "1/11(1,6,4)");
  CHECK(verify_resolution(res.fan, Cone::orthant(3)).ok());
  auto ref = resolve(pf({1, 6, 4}, 11));
  CHECK(res.fan.size() == ref.fan.size());
}

TEST_CASE("the cone cap is enforced") {
  CHECK_THROWS_AS(fujiki_oka_resolve(Cone::orthant(4), 0, Overlattice(4, {pf({1, 6, 4, 4}, 15)}), 5),
                  ResourceLimitExceeded);
  CHECK_NOTHROW(fujiki_oka_resolve(Cone::orthant(4), 0, Overlattice(4, {pf({1, 6, 4, 4}, 15)}), 29));
}

TEST_CASE("ray pool deduplicates") {
  Fan f(Overlattice(2));
  CHECK(f.add_ray(e(2, 0)) == 0);
  CHECK(f.add_ray(e(2, 1)) == 1);
  CHECK(f.add_ray(e(2, 0)) == 0);
  f.add_cone(Cone({e(2, 1), LatticePoint{1, 1}}));
  CHECK(f.rays().size() == 3);
  CHECK(f.cones().front() == std::vector<std::size_t>{1, 2});
  CHECK(f.ray_index(LatticePoint{1, 1}) == 2u);
  CHECK_FALSE(f.ray_index(LatticePoint{2, 1}));
  CHECK(f.cone(0).ray(1) == LatticePoint{1, 1});
}

TEST_CASE("verifier rejects broken fans") {
  const std::size_t n = 3;
  Overlattice Z(n);
  LatticePoint v{1, 1, 0};
  Cone root = Cone::orthant(n);

  Fan good(Z);
  good.add_cone(Cone({e(n, 0), v, e(n, 2)}));
  good.add_cone(Cone({v, e(n, 1), e(n, 2)}));
  CHECK(verify_resolution(good, root).ok());

  Fan missing(Z);
  missing.add_cone(Cone({e(n, 0), v, e(n, 2)}));
  auto m = verify_resolution(missing, root);
  CHECK_FALSE(m.covers);
  CHECK_FALSE(m.ok());
  CHECK_FALSE(m.failures.empty());

  Fan twice(Z);
  twice.add_cone(Cone({e(n, 0), v, e(n, 2)}));
  twice.add_cone(Cone({e(n, 0), v, e(n, 2)}));
  CHECK_FALSE(verify_resolution(twice, root).proper_faces);

  // Two smooth cones that overlap in their interiors.
  Fan overlap(Z);
  overlap.add_cone(Cone({e(n, 0), v, e(n, 2)}));
  overlap.add_cone(Cone({LatticePoint{1, 2, 0}, LatticePoint{2, 1, 0}, e(n, 2)}));
  auto o = verify_resolution(overlap, root);
  CHECK_FALSE(o.proper_faces);

  Fan coarse(Overlattice(n, {pf({1, 1, 1}, 3)}));
  coarse.add_cone(root);
  auto c = verify_resolution(coarse, root);
  CHECK_FALSE(c.smooth);

  Fan outside(Z);
  outside.add_cone(Cone({LatticePoint{1, -1, 0}, e(n, 1), e(n, 2)}));
  CHECK_FALSE(verify_resolution(outside, root).contained);
}

TEST_CASE("exact feasibility") {
  // x + y = 1, x >= 2, y >= 0: infeasible.
  std::vector<LinearConstraint> a = {
      {{1, 1}, Relation::Equal, 1},
      {{1, 0}, Relation::GreaterEqual, 2},
      {{0, 1}, Relation::GreaterEqual, 0},
  };
  CHECK_FALSE(is_feasible(a, 2));
  // Free variables: x - y <= -3, x >= -1.
  std::vector<LinearConstraint> b = {
      {{1, -1}, Relation::LessEqual, -3},
      {{1, 0}, Relation::GreaterEqual, -1},
  };
  CHECK(is_feasible(b, 2));
  // A thin slab: 3x = 1 and 3x <= 1 - 1/1000 fails, 3x <= 1 holds.
  std::vector<LinearConstraint> c = {{{3}, Relation::Equal, 1}, {{3}, Relation::LessEqual, Rational(999, 1000)}};
  CHECK_FALSE(is_feasible(c, 1));
  c[1].rhs = 1;
  CHECK(is_feasible(c, 1));
  CHECK(is_feasible({}, 3));
}
