#include <doctest.h>

#include <numeric>
#include <set>

#include "crepantia/errors.hpp"
#include "crepantia/fan.hpp"
#include "crepantia/oracle.hpp"
#include "support.hpp"

using namespace crepantia;

namespace {

ProperFraction pf(IntVector a, long r) { return ProperFraction(std::move(a), r); }

}  // namespace

TEST_CASE("Hilbert basis of 1/11(1,8)") {
  auto hb = hilbert_basis(Overlattice(2, {pf({1, 8}, 11)}));
  std::vector<std::string> got;
  for (const auto& p : hb) got.push_back(p.to_string());
  std::vector<std::string> expected = {"(0,1)", "1/11(1,8)", "1/11(2,5)", "1/11(3,2)", "1/11(7,1)", "(1,0)"};
  std::sort(expected.begin(), expected.end());
  std::sort(got.begin(), got.end());
  CHECK(got == expected);
}

TEST_CASE("planar Hilbert bases match the sieve") {
  for (long r = 2; r <= 30; ++r) {
    for (long a = 1; a < r; ++a) {
      if (std::gcd(r, a) != 1) continue;
      auto hb = hilbert_basis(Overlattice(2, {pf({1, a}, r)}));
      std::vector<LatticePoint> expected;
      for (auto [x, y] : oracle::quadrant_hilbert_basis(r, a)) expected.push_back(oracle::point({x, y}, r));
      std::sort(expected.begin(), expected.end());
      CHECK(hb == expected);
    }
  }
}

TEST_CASE("junior points") {
  auto a = junior_points(Overlattice(3, {pf({1, 2, 8}, 11)}));
  CHECK(a.elements.size() == 5);
  CHECK(a.vertices.size() == 3);
  auto b = junior_points(Overlattice(4, {pf({1, 2, 4, 8}, 15)}));
  CHECK(b.elements.size() == 4);
  for (const auto& p : b.elements) CHECK(p.age() == 1);
  // Count age-one group elements directly.
  std::size_t age_one = 0;
  for (const auto& g : Overlattice(3, {pf({1, 2, 8}, 11)}).coset_representatives()) age_one += g.age() == 1;
  CHECK(age_one == 5);
}

TEST_CASE("first existence check") {
  CHECK(first_existence_check(Overlattice(3, {pf({1, 2, 8}, 11)})));
  CHECK_FALSE(first_existence_check(Overlattice(4, {pf({1, 6, 4, 4}, 15)})));
  CHECK(first_existence_check(Overlattice(4, {pf({1, 5, 8, 25}, 39)})));
  CHECK(first_existence_check(Overlattice(4, {pf({1, 5, 6, 12}, 24)})));
  CHECK_THROWS_AS(first_existence_check(Overlattice(3, {pf({1, 1, 1}, 2)})), PreconditionError);
}

TEST_CASE("crepant three-dimensional fans use every junior point") {
  for (auto f : {pf({1, 2, 8}, 11), pf({1, 3, 5}, 9), pf({1, 1, 4}, 6)}) {
    Overlattice L(3, {f});
    auto res = fujiki_oka_resolve(Cone::orthant(3), 0, L);
    REQUIRE(is_crepant(res.fan));
    std::set<LatticePoint> rays(res.fan.rays().begin(), res.fan.rays().end());
    auto jp = junior_points(L);
    std::set<LatticePoint> expected(jp.elements.begin(), jp.elements.end());
    expected.insert(jp.vertices.begin(), jp.vertices.end());
    CHECK(rays == expected);
  }
}

TEST_CASE("cone types match the remainder polynomial") {
  for (auto f : {pf({1, 2, 8}, 11), pf({1, 2, 4, 8}, 15), pf({1, 6, 4, 4}, 15), pf({1, 5, 6, 12}, 24),
                 pf({1, 1, 0}, 2), pf({1, 2, 5, 7}, 8)}) {
    auto c = cross_check_types(f);
    CHECK_MESSAGE(c.ok, f.to_string());
    CHECK(c.checked == remainder_polynomial(f).size());
  }
  CHECK(cross_check_types(pf({1, 2, 8}, 11)).checked == 7);
  CHECK_THROWS_AS(cross_check_types(pf({2, 1, 8}, 11)), PreconditionError);
}
