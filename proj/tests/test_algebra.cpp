#include <catch2/catch_amalgamated.hpp>

#include "parind/algebra.hpp"

using namespace parind;

namespace {
struct Fixture {
  GroupRef big = FiniteGroup::congruence_quotient(Family::SL2, 2, 2);
  IwahoriDecomposition dec = standard_iwahori(big, BlockPattern{{1, 1}}, true);
};
}  // namespace

TEST_CASE("delta convolution mirrors group multiplication") {
  auto g = FiniteGroup::congruence_quotient(Family::SL2, 3, 1);
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    std::uint32_t x = rng() % g->size(), y = rng() % g->size();
    auto dx = AlgebraElement::delta(g, x, rationals());
    auto dy = AlgebraElement::delta(g, y, rationals());
    CHECK(dx * dy == AlgebraElement::delta(g, g->mult(x, y), rationals()));
  }
  auto one = AlgebraElement::unit(g, rationals());
  auto dx = AlgebraElement::delta(g, 5, rationals());
  CHECK(one * dx == dx);
  CHECK(dx * one == dx);
}

TEST_CASE("convolution is associative and distributes") {
  auto g = FiniteGroup::congruence_quotient(Family::SL2, 3, 1);
  for (FieldTag f : {rationals(), prime_field(5)}) {
    Rng rng(23);
    for (int t = 0; t < 5; ++t) {
      auto rand_elt = [&]() {
        AlgebraElement e(g, f);
        for (int k = 0; k < 4; ++k)
          e.add_term(rng() % g->size(),
                     f.is_rational() ? Scalar::rational(long(rng() % 7) - 3, 1 + rng() % 3)
                                     : Scalar::modular(rng() % f.ell, f));
        return e;
      };
      AlgebraElement a = rand_elt(), b = rand_elt(), c = rand_elt();
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("haar elements are idempotent") {
  Fixture fx;
  for (FieldTag f : {rationals(), prime_field(5)}) {
    auto eu = haar_idempotent(fx.dec.U, f);
    auto eub = haar_idempotent(fx.dec.Ubar, f);
    CHECK(eu * eu == eu);
    CHECK(eub * eub == eub);
    CHECK(eu.coefficient_sum() == Scalar::one(f));
  }
}

TEST_CASE("haar idempotent refuses bad characteristic") {
  Fixture fx;
  CHECK_THROWS_AS(haar_idempotent(fx.dec.U, prime_field(2)), error);  // |U| = 4
}

TEST_CASE("antipode is an anti-automorphism") {
  auto g = FiniteGroup::congruence_quotient(Family::SL2, 3, 1);
  auto dx = AlgebraElement::delta(g, 7, rationals());
  CHECK(dx.antipode() == AlgebraElement::delta(g, g->inverse(7), rationals()));
  Rng rng(5);
  AlgebraElement a(g, rationals()), b(g, rationals());
  for (int k = 0; k < 5; ++k) {
    a.add_term(rng() % g->size(), Scalar::rational(long(rng() % 5) - 2));
    b.add_term(rng() % g->size(), Scalar::rational(long(rng() % 5) - 2));
  }
  CHECK((a * b).antipode() == b.antipode() * a.antipode());
}

TEST_CASE("centrality detection") {
  auto g = FiniteGroup::congruence_quotient(Family::SL2, 3, 1);
  std::uint32_t minus_one = g->index_of(make_element(2, 3, {2, 0, 0, 2}));
  CHECK(is_central(AlgebraElement::delta(g, minus_one, rationals())));
  std::uint32_t u = g->index_of(make_element(2, 3, {1, 1, 0, 1}));
  CHECK_FALSE(is_central(AlgebraElement::delta(g, u, rationals())));
  // conjugacy class sums are central
  AlgebraElement cls(g, rationals());
  std::vector<bool> seen(g->size(), false);
  for (std::uint32_t x = 0; x < g->size(); ++x) {
    std::uint32_t c = g->conj(x, u);
    if (!seen[c]) {
      seen[c] = true;
      cls.add_term(c, Scalar::rational(1));
    }
  }
  CHECK(is_central(cls));
}

TEST_CASE("central element of a subgroup algebra") {
  Fixture fx;
  auto id = fx.dec.host->identity();
  auto mi = fx.dec.host->index_of(make_element(2, 4, {3, 0, 0, 3}));
  AlgebraElement z(fx.dec.host, rationals());
  z.add_term(id, Scalar::rational(3, 4));
  z.add_term(mi, Scalar::rational(1, 4));
  CHECK(z.supported_in(fx.dec.M));
  CHECK(is_central_in_subgroup_algebra(z, fx.dec.M));
  AlgebraElement bad = z + AlgebraElement::delta(fx.dec.host, fx.dec.host->index_of(make_element(2, 4, {1, 1, 0, 1})), rationals());
  CHECK_FALSE(is_central_in_subgroup_algebra(bad, fx.dec.M));
}

TEST_CASE("inverse inside a subgroup algebra") {
  Fixture fx;
  auto id = fx.dec.host->identity();
  auto mi = fx.dec.host->index_of(make_element(2, 4, {3, 0, 0, 3}));
  AlgebraElement z(fx.dec.host, rationals());
  z.add_term(id, Scalar::rational(3, 4));
  z.add_term(mi, Scalar::rational(1, 4));
  auto zi = subalgebra_inverse(z, fx.dec.M);
  REQUIRE(zi.has_value());
  CHECK(zi->coeff(id) == Scalar::rational(3, 2));
  CHECK(zi->coeff(mi) == Scalar::rational(-1, 2));
  // idempotents other than the unit are not invertible
  auto em = haar_idempotent(fx.dec.M, rationals());
  CHECK_FALSE(subalgebra_inverse(em, fx.dec.M).has_value());
}

TEST_CASE("left ideal membership with verified certificates") {
  Fixture fx;
  auto f = rationals();
  auto eu = haar_idempotent(fx.dec.U, f);
  auto some_u = fx.dec.U.indices()[1];
  auto translated = AlgebraElement::delta(fx.dec.host, fx.dec.host->mult(some_u, 3), f) * eu;

  auto w1 = left_ideal_membership(eu, eu);
  CHECK(w1.member);
  CHECK(w1.verified);
  CHECK_FALSE(w1.digest.empty());

  auto w2 = left_ideal_membership(translated, eu);
  CHECK(w2.member);
  CHECK(w2.verified);

  auto w3 = left_ideal_membership(AlgebraElement::unit(fx.dec.host, f), eu);
  CHECK_FALSE(w3.member);  // deltas are never right-U-invariant for |U| > 1

  // digests are deterministic
  CHECK(left_ideal_membership(eu, eu).digest == w1.digest);
}

TEST_CASE("left ideal membership over a prime field") {
  Fixture fx;
  auto f5 = prime_field(5);
  auto eu = haar_idempotent(fx.dec.U, f5);
  auto eub = haar_idempotent(fx.dec.Ubar, f5);
  auto w = left_ideal_membership(eu * eub, eub);
  CHECK(w.member);
  CHECK(w.verified);
}

TEST_CASE("two-sided ideal membership") {
  auto g = FiniteGroup::congruence_quotient(Family::GL2, 2, 1);  // S3
  auto f = rationals();
  AlgebraElement total(g, f);
  for (std::uint32_t i = 0; i < g->size(); ++i) total.add_term(i, Scalar::rational(1));
  // the ideal generated by the all-ones element is one-dimensional
  auto w1 = two_sided_ideal_membership(total, total);
  CHECK(w1.member);
  auto w2 = two_sided_ideal_membership(AlgebraElement::unit(g, f), total);
  CHECK_FALSE(w2.member);
  // the ideal generated by a delta is everything
  auto w3 = two_sided_ideal_membership(total, AlgebraElement::delta(g, 2, f));
  CHECK(w3.member);
  CHECK(w3.verified);
}

TEST_CASE("sandwich dimension counts double cosets") {
  Fixture fx;
  auto f = rationals();
  auto eu = haar_idempotent(fx.dec.U, f);
  auto eub = haar_idempotent(fx.dec.Ubar, f);
  CHECK(sandwich_rank(eu, eub) == fx.dec.M.size());  // 2

  auto big9 = FiniteGroup::congruence_quotient(Family::SL2, 3, 2);
  auto dec9 = standard_iwahori(big9, BlockPattern{{1, 1}}, true);
  CHECK(sandwich_rank(haar_idempotent(dec9.U, f), haar_idempotent(dec9.Ubar, f)) == dec9.M.size());  // 3

  auto gl23 = FiniteGroup::congruence_quotient(Family::GL2, 3, 1);
  auto borel = standard_iwahori(gl23, BlockPattern{{1, 1}}, false);
  CHECK(sandwich_rank(haar_idempotent(borel.U, f), haar_idempotent(borel.Ubar, f)) == borel.M.size());  // 4
}

TEST_CASE("mixing hosts or fields is rejected") {
  auto g1 = FiniteGroup::congruence_quotient(Family::SL2, 3, 1);
  auto g2 = FiniteGroup::congruence_quotient(Family::SL2, 3, 1);
  auto a = AlgebraElement::unit(g1, rationals());
  auto b = AlgebraElement::unit(g2, rationals());
  CHECK_THROWS_AS(a * b, error);  // same table, distinct instances
  auto c = AlgebraElement::unit(g1, prime_field(5));
  CHECK_THROWS_AS(a + c, field_mismatch);
}
