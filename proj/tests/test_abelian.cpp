#include <doctest.h>

#include <set>

#include "crepantia/abelian.hpp"
#include "crepantia/errors.hpp"
#include "support.hpp"

using namespace crepantia;

namespace {

ProperFraction pf(IntVector a, long r) { return ProperFraction(std::move(a), r); }

std::set<std::set<LatticePoint>> cone_set(const Fan& fan) {
  std::set<std::set<LatticePoint>> out;
  for (const auto& idx : fan.cones()) {
    std::set<LatticePoint> c;
    for (auto i : idx) c.insert(fan.rays()[i]);
    out.insert(c);
  }
  return out;
}

AbelianGroup example() { return AbelianGroup(3, {pf({1, 3, 0}, 4), pf({1, 0, 3}, 4)}); }

AbelianGroup klein4() { return AbelianGroup(4, {pf({1, 1, 0, 0}, 2), pf({1, 0, 1, 0}, 2), pf({1, 0, 0, 1}, 2)}); }

}  // namespace

TEST_CASE("group enumeration") {
  CHECK(example().order() == 16);
  CHECK(AbelianGroup(3, {pf({1, 1, 0}, 2)}).order() == 2);
  CHECK(klein4().order() == 8);
  CHECK(example().elements().front().is_identity());
  CHECK(example().contains(pf({1, 1, 2}, 4)));
  CHECK_FALSE(example().contains(pf({1, 1, 0}, 4)));
  CHECK(example().is_gorenstein());
  CHECK_FALSE(example().is_cyclic());
  CHECK(AbelianGroup(3, {pf({1, 2, 8}, 11)}).is_cyclic());
  CHECK(AbelianGroup(2, {pf({1, 0}, 2), pf({0, 1}, 3)}).is_cyclic());
  CHECK_FALSE(AbelianGroup(2, {pf({1, 1}, 3)}).is_gorenstein());
  // Orders against the machine-integer closure.
  CHECK(example().order() == oracle::group_order({{{1, 3, 0}, 4}, {{1, 0, 3}, 4}}));
  CHECK(klein4().order() == oracle::group_order({{{1, 1, 0, 0}, 2}, {{1, 0, 1, 0}, 2}, {{1, 0, 0, 1}, 2}}));
  CHECK(same_group(example(), enumerate_group({pf({1, 2, 1}, 4), pf({0, 1, 3}, 4)})));
  CHECK_FALSE(same_group(example(), AbelianGroup(3, {pf({1, 2, 1}, 4)})));
}

TEST_CASE("basic generating systems") {
  auto sys = basic_generating_system(example());
  REQUIRE(sys.rows.size() == 2);
  CHECK(sys.rows[0].to_string() == "1/4(1,2,1)");
  CHECK(sys.rows[1].to_string() == "1/4(0,1,3)");

  auto k = basic_generating_system(klein4());
  REQUIRE(k.rows.size() == 3);
  CHECK(k.rows[0].to_string() == "1/2(1,1,0,0)");
  CHECK(k.rows[1].to_string() == "1/2(0,1,1,0)");
  CHECK(k.rows[2].to_string() == "1/2(0,0,1,1)");

  auto c = basic_generating_system(AbelianGroup(3, {pf({1, 2, 8}, 11)}));
  CHECK(c.nontrivial_rows() == std::vector<GroupElement>{pf({1, 2, 8}, 11)});
  CHECK(c.rows[1].is_identity());
  CHECK(BasicGeneratingSystem::leading_slot(sys.rows[1]) == 1);
  CHECK_THROWS_AS(BasicGeneratingSystem::leading_slot(c.rows[1]), PreconditionError);
}

TEST_CASE("generating systems have the triangular age-one shape") {
  std::vector<AbelianGroup> groups = {
      example(),
      klein4(),
      AbelianGroup(3, {pf({1, 1, 4}, 6), pf({0, 1, 2}, 3)}),
      AbelianGroup(4, {pf({1, 5, 6, 12}, 24)}),
      AbelianGroup(4, {pf({1, 1, 0, 2}, 4), pf({0, 1, 1, 0}, 2)}),
  };
  for (const auto& G : groups) {
    auto sys = basic_generating_system(G);
    CHECK(sys.rows.size() == G.rank() - 1);
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
      const auto& row = sys.rows[i];
      if (row.is_identity()) continue;
      CHECK(BasicGeneratingSystem::leading_slot(row) == i);
      CHECK(row[i] == 1);
      CHECK(row.age() == 1);
      CHECK(G.contains(row));
    }
    std::vector<GroupElement> rows = sys.rows;
    CHECK(same_group(AbelianGroup(G.rank(), rows), G));
  }
}

TEST_CASE("groups without an age-one system") {
  CHECK_THROWS_AS(basic_generating_system(AbelianGroup(4, {pf({1, 2, 3, 4}, 5)})), NoAgeOneSystem);
  CHECK_THROWS_AS(basic_generating_system(AbelianGroup(2, {pf({1, 2}, 5)})), PreconditionError);
}

TEST_CASE("phi embedding") {
  auto f = pf({1, 2, 8}, 11);
  Overlattice L(3, {f});
  CHECK(phi_embed(3, f, LatticePoint::unit(3, 2)) == LatticePoint::from_fraction(f));
  CHECK(phi_embed(3, f, LatticePoint::unit(3, 0)) == LatticePoint::unit(3, 0));
  CHECK(phi_embed(2, f, LatticePoint::unit(3, 1)) == LatticePoint::from_fraction(f));
  // R_3(f) = 1/8(1,2,5); its generator lands on an age-one point of L.
  auto r3 = std::get<ProperFraction>(remainder_map(3, f));
  auto img = phi_embed(3, f, LatticePoint::from_fraction(r3));
  CHECK(L.contains(img));
  CHECK(img.age() == 1);
  CHECK(img.to_string() == "1/11(2,4,5)");
  CHECK_THROWS_AS(phi_embed(3, f, LatticePoint{Rational(1, 3), 0, 0}), PreconditionError);
  CHECK_THROWS_AS(phi_embed(2, pf({2, 1, 8}, 11), LatticePoint::unit(3, 0)), PreconditionError);
}

TEST_CASE("iterated resolution of the worked example") {
  auto res = iterated_fujiki_oka(example());
  CHECK(res.fan.size() == 16);
  CHECK(is_crepant(res.fan));
  CHECK(verify_resolution(res.fan, Cone::orthant(3)).ok());
  REQUIRE(res.transcript.stages.size() == 2);
  CHECK(res.transcript.stages[0].added.to_string() == "1/4(0,1,3)");
  CHECK(res.transcript.stages[1].added.to_string() == "1/4(1,2,1)");
  CHECK(res.transcript.stages[1].lattice == example().lattice());

  auto v = crepant_iterated(example());
  CHECK(v.kind == IteratedVerdictKind::Crepant);
  CHECK(v.fan_crepant);
}

TEST_CASE("another chain gives another crepant fan") {
  std::vector<GroupElement> chain = {pf({1, 2, 1}, 4), pf({0, 1, 3}, 4)};
  auto a = iterated_fujiki_oka(example());
  auto b = iterated_fujiki_oka(example(), chain);
  CHECK(b.fan.size() == 16);
  CHECK(is_crepant(b.fan));
  CHECK(verify_resolution(b.fan, Cone::orthant(3)).ok());
  CHECK(cone_set(a.fan) != cone_set(b.fan));
  CHECK(crepant_iterated(example(), chain).kind == IteratedVerdictKind::Crepant);
  CHECK_THROWS_AS(iterated_fujiki_oka(example(), {pf({1, 3, 0}, 4)}), PreconditionError);
}

TEST_CASE("iterated resolution in rank four") {
  auto v = crepant_iterated(klein4());
  CHECK(v.kind == IteratedVerdictKind::Crepant);
  CHECK(v.resolution.fan.size() == 8);
  CHECK(verify_resolution(v.resolution.fan, Cone::orthant(4)).ok());
}

TEST_CASE("a cyclic group resolves exactly as the single recursion") {
  for (auto f : {pf({1, 2, 8}, 11), pf({1, 2, 4, 8}, 15), pf({1, 6, 4, 4}, 15)}) {
    AbelianGroup G(f.rank(), {f});
    auto it = iterated_fujiki_oka(G);
    auto fo = fujiki_oka_resolve(Cone::orthant(f.rank()), 0, Overlattice(f.rank(), {f}));
    CHECK(cone_set(it.fan) == cone_set(fo.fan));
    REQUIRE(it.transcript.stages.size() == 1);
    REQUIRE(it.transcript.stages[0].resolved.size() == 1);
    CHECK(it.transcript.stages[0].resolved[0].type == f);
  }
  auto v = crepant_iterated(AbelianGroup(4, {pf({1, 6, 4, 4}, 15)}));
  CHECK(v.kind == IteratedVerdictKind::NotDetermined);
  CHECK_FALSE(v.fan_crepant);
  REQUIRE(v.witness);
  CHECK(v.witness->to_string() == "x2");
}

TEST_CASE("coordinates are reordered when the input order has no system") {
  AbelianGroup G(3, {pf({2, 1, 1}, 4)});
  CHECK_THROWS_AS(basic_generating_system(G), NoAgeOneSystem);
  auto v = crepant_iterated(G);
  CHECK(v.kind == IteratedVerdictKind::Crepant);
  CHECK(v.resolution.transcript.coordinates == std::vector<std::size_t>{1, 0, 2});
  CHECK(v.resolution.fan.lattice() == G.lattice());
  CHECK(verify_resolution(v.resolution.fan, Cone::orthant(3)).ok());
  CHECK(v.resolution.transcript.stages[0].added.to_string() == "1/4(1,2,1)");
  CHECK(iterated_fujiki_oka(example()).transcript.coordinates.empty());
  CHECK_THROWS_AS(iterated_fujiki_oka(AbelianGroup(4, {pf({1, 2, 3, 4}, 5)})), NoAgeOneSystem);
}
