#include <catch2/catch_amalgamated.hpp>

#include "parind/group.hpp"

using namespace parind;

TEST_CASE("congruence quotient orders match the classical formulas") {
  CHECK(FiniteGroup::congruence_quotient(Family::SL2, 3, 1)->size() == 24);
  CHECK(FiniteGroup::congruence_quotient(Family::SL2, 2, 2)->size() == 48);
  CHECK(FiniteGroup::congruence_quotient(Family::SL2, 3, 2)->size() == 648);  // 3^3 * 24
  CHECK(FiniteGroup::congruence_quotient(Family::GL2, 2, 1)->size() == 6);
  CHECK(FiniteGroup::congruence_quotient(Family::GL2, 2, 2)->size() == 96);
  CHECK(FiniteGroup::congruence_quotient(Family::GL2, 3, 1)->size() == 48);
  CHECK(FiniteGroup::congruence_quotient(Family::GL3, 2, 1)->size() == 168);
}

TEST_CASE("group table is deterministic") {
  auto a = FiniteGroup::congruence_quotient(Family::SL2, 2, 2);
  auto b = FiniteGroup::congruence_quotient(Family::SL2, 2, 2);
  REQUIRE(a->size() == b->size());
  for (std::uint32_t i = 0; i < a->size(); ++i) CHECK(a->elem(i) == b->elem(i));
}

TEST_CASE("multiplication, inverse and associativity spot checks") {
  auto g = FiniteGroup::congruence_quotient(Family::SL2, 3, 1);
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    std::uint32_t x = rng() % g->size(), y = rng() % g->size(), z = rng() % g->size();
    CHECK(g->mult(g->mult(x, y), z) == g->mult(x, g->mult(y, z)));
    CHECK(g->mult(x, g->inverse(x)) == g->identity());
    CHECK(g->mult(g->identity(), x) == x);
  }
}

TEST_CASE("generators generate") {
  auto g = FiniteGroup::congruence_quotient(Family::SL2, 2, 2);
  auto gens = g->generators();
  CHECK(gens.size() <= 4);
  std::vector<GroupElement> ge;
  for (auto i : gens) ge.push_back(g->elem(i));
  CHECK(FiniteGroup::from_generators("regen", 2, ge)->size() == g->size());
}

TEST_CASE("from_generators builds cyclic groups") {
  auto c3 = FiniteGroup::from_generators("C3", 3, {make_element(2, 3, {1, 1, 0, 1})});
  CHECK(c3->size() == 3);
  auto c2 = FiniteGroup::from_generators("C2", 3, {make_element(2, 3, {1, 0, 0, 2})});
  CHECK(c2->size() == 2);
}

TEST_CASE("subgroup constructor rejects non-closed subsets") {
  auto g = FiniteGroup::congruence_quotient(Family::SL2, 3, 1);
  std::uint32_t u = g->index_of(make_element(2, 3, {1, 1, 0, 1}));
  std::uint32_t l = g->index_of(make_element(2, 3, {1, 0, 1, 1}));
  CHECK_THROWS_AS(Subgroup(g, {g->identity(), u, l}), error);
}

TEST_CASE("standard pro-p decomposition of SL2 at p = 3, level 9") {
  auto big = FiniteGroup::congruence_quotient(Family::SL2, 3, 2);
  auto dec = standard_iwahori(big, BlockPattern{{1, 1}}, /*pro_p=*/true);
  CHECK(dec.host->size() == 81);
  CHECK(dec.U.size() == 9);
  CHECK(dec.M.size() == 3);
  CHECK(dec.Ubar.size() == 3);
  // witness actually factors
  for (std::uint32_t i = 0; i < dec.host->size(); ++i) {
    auto [u, m, ub] = dec.factor[i];
    CHECK(dec.host->mult(dec.host->mult(u, m), ub) == i);
    CHECK(dec.U.contains(u));
    CHECK(dec.M.contains(m));
    CHECK(dec.Ubar.contains(ub));
  }
}

TEST_CASE("standard pro-p decomposition of SL2 at p = 2, level 4") {
  auto big = FiniteGroup::congruence_quotient(Family::SL2, 2, 2);
  auto dec = standard_iwahori(big, BlockPattern{{1, 1}}, true);
  CHECK(dec.host->size() == 16);
  CHECK(dec.U.size() == 4);
  CHECK(dec.M.size() == 2);
  CHECK(dec.Ubar.size() == 2);
}

TEST_CASE("full Iwahori of GL2 at level 4 has the unit torus") {
  auto big = FiniteGroup::congruence_quotient(Family::GL2, 2, 2);
  auto dec = standard_iwahori(big, BlockPattern{{1, 1}}, /*pro_p=*/false);
  CHECK(dec.host->size() == 32);
  CHECK(dec.U.size() == 4);
  CHECK(dec.M.size() == 4);
  CHECK(dec.Ubar.size() == 2);
}

TEST_CASE("Borel of GL2 over F3") {
  auto big = FiniteGroup::congruence_quotient(Family::GL2, 3, 1);
  auto dec = standard_iwahori(big, BlockPattern{{1, 1}}, false);
  CHECK(dec.host->size() == 12);
  CHECK(dec.U.size() == 3);
  CHECK(dec.M.size() == 4);
  CHECK(dec.Ubar.size() == 1);
}

TEST_CASE("maximal parabolic of GL3 over F2, pattern (2,1)") {
  auto big = FiniteGroup::congruence_quotient(Family::GL3, 2, 1);
  auto dec = standard_iwahori(big, BlockPattern{{2, 1}}, false);
  CHECK(dec.host->size() == 24);
  CHECK(dec.U.size() == 4);
  CHECK(dec.M.size() == 6);
  CHECK(dec.Ubar.size() == 1);
}

TEST_CASE("verify_iwahori rejects a non-bijective triple") {
  auto g = FiniteGroup::congruence_quotient(Family::SL2, 3, 1);
  auto U = Subgroup::from_predicate(
      g, [](const GroupElement& e) { return e.at(0, 0) == 1 && e.at(1, 1) == 1 && e.at(1, 0) == 0; },
      "U");
  auto M = Subgroup::from_predicate(
      g, [](const GroupElement& e) { return e.at(0, 1) == 0 && e.at(1, 0) == 0; }, "T");
  auto Ub = Subgroup::from_predicate(
      g, [](const GroupElement& e) { return e.at(0, 0) == 1 && e.at(1, 1) == 1 && e.at(0, 1) == 0; },
      "Ubar");
  auto rep = verify_iwahori(g, U, M, Ub);
  CHECK(rep.normalizer_ok);
  CHECK_FALSE(rep.product_bijective);  // Borel subsets cannot cover SL2(F3)
}

TEST_CASE("normalizing relations in the level 9 decomposition") {
  auto big = FiniteGroup::congruence_quotient(Family::SL2, 3, 2);
  auto dec = standard_iwahori(big, BlockPattern{{1, 1}}, true);
  CHECK(dec.M.normalizes(dec.U));
  CHECK(dec.M.normalizes(dec.Ubar));
  CHECK_FALSE(dec.U.normalizes(dec.M));
}

TEST_CASE("subgroup exported as standalone group") {
  auto big = FiniteGroup::congruence_quotient(Family::SL2, 3, 2);
  auto dec = standard_iwahori(big, BlockPattern{{1, 1}}, true);
  auto [m, back] = dec.M.as_group("M");
  CHECK(m->size() == 3);
  for (std::uint32_t i = 0; i < m->size(); ++i) CHECK(big->find(m->elem(i)).has_value());
  // back-map is consistent
  for (std::uint32_t i = 0; i < m->size(); ++i) CHECK(dec.host->elem(back[i]) == m->elem(i));
}

TEST_CASE("opposite decomposition swaps the unipotent parts") {
  auto big = FiniteGroup::congruence_quotient(Family::SL2, 2, 2);
  auto dec = standard_iwahori(big, BlockPattern{{1, 1}}, true);
  auto opp = opposite(dec);
  CHECK(opp.U.size() == dec.Ubar.size());
  CHECK(opp.Ubar.size() == dec.U.size());
  for (std::uint32_t i = 0; i < opp.host->size(); ++i) {
    auto [u, m, ub] = opp.factor[i];
    CHECK(opp.host->mult(opp.host->mult(u, m), ub) == i);
  }
}

TEST_CASE("left coset representatives partition the group") {
  auto g = FiniteGroup::congruence_quotient(Family::SL2, 2, 2);
  auto dec = standard_iwahori(g, BlockPattern{{1, 1}}, true);
  auto reps = dec.U.left_coset_reps();
  CHECK(reps.size() * dec.U.size() == dec.host->size());
}
