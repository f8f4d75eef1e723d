#include <catch2/catch_amalgamated.hpp>

#include "parind/rep.hpp"

using namespace parind;

namespace {
GroupRef s3() { return FiniteGroup::congruence_quotient(Family::GL2, 2, 1); }

GroupRef c3() {
  return FiniteGroup::from_generators("C3", 3, {make_element(2, 3, {1, 1, 0, 1})});
}

// natural 2-dimensional action of GL2(F_2) on column vectors over F_2
Representation natural_gl2f2(const GroupRef& g) {
  FieldTag f2 = prime_field(2);
  std::vector<Matrix> t;
  for (std::uint32_t i = 0; i < g->size(); ++i) {
    Matrix m(2, 2, f2);
    for (unsigned r = 0; r < 2; ++r)
      for (unsigned c = 0; c < 2; ++c) m.at(r, c) = Scalar::modular(g->elem(i).at(r, c), f2);
    t.push_back(m);
  }
  return Representation(g, f2, std::move(t));
}
}  // namespace

TEST_CASE("permutation representation of S3 on three points") {
  auto g = s3();
  auto stab = Subgroup::from_predicate(
      g, [](const GroupElement& e) { return e.at(0, 0) == 1 && e.at(1, 0) == 0; }, "P1");
  REQUIRE(stab.size() == 2);
  auto perm = Representation::permutation(g, stab, rationals());
  CHECK(perm.dim() == 3);
  // averaging over the group fixes only multiples of the all-ones vector
  AlgebraElement avg(g, rationals());
  for (std::uint32_t i = 0; i < g->size(); ++i) avg.add_term(i, Scalar::rational(1, 6));
  CHECK(matrix_rank(perm.apply(avg)) == 1);
}

TEST_CASE("representation table validation") {
  auto g = c3();
  std::vector<Matrix> bad(g->size(), Matrix::identity(2, rationals()));
  bad[1].at(0, 1) = Scalar::rational(1);
  CHECK_THROWS_AS(Representation(g, rationals(), std::move(bad)), error);
}

TEST_CASE("hom dimensions for S3 modules over Q") {
  auto g = s3();
  auto stab = Subgroup::from_predicate(
      g, [](const GroupElement& e) { return e.at(0, 0) == 1 && e.at(1, 0) == 0; }, "P1");
  auto perm = Representation::permutation(g, stab, rationals());
  auto triv = Representation::trivial(g, rationals());
  CHECK(hom_dim(triv, triv) == 1);
  CHECK(hom_dim(perm, perm) == 2);  // trivial + standard
  CHECK(hom_dim(triv, perm) == 1);
  CHECK(hom_dim(perm, triv) == 1);
}

TEST_CASE("equivalence finds an invertible intertwiner") {
  auto g = s3();
  auto stab = Subgroup::from_predicate(
      g, [](const GroupElement& e) { return e.at(0, 0) == 1 && e.at(1, 0) == 0; }, "P1");
  auto perm = Representation::permutation(g, stab, rationals());
  auto t = equivalence(perm, perm);
  REQUIRE(t.has_value());
  for (auto s : g->generators()) CHECK(*t * perm.rho(s) == perm.rho(s) * *t);
  // a conjugated copy is equivalent
  auto basis = std::vector<Vec>{
      {Scalar::rational(1), Scalar::rational(1), Scalar::rational(0)},
      {Scalar::rational(0), Scalar::rational(1), Scalar::rational(0)},
      {Scalar::rational(0), Scalar::rational(1), Scalar::rational(1)}};
  auto conj = perm.subrepresentation(basis);
  auto t2 = equivalence(perm, conj);
  REQUIRE(t2.has_value());
  CHECK(inverse(*t2).has_value());
  CHECK_FALSE(equivalence(Representation::trivial(g, rationals()), perm).has_value());
}

TEST_CASE("irreducibility of known S3 modules") {
  auto g = s3();
  auto stab = Subgroup::from_predicate(
      g, [](const GroupElement& e) { return e.at(0, 0) == 1 && e.at(1, 0) == 0; }, "P1");
  auto perm = Representation::permutation(g, stab, rationals());

  auto triv = Representation::trivial(g, rationals());
  auto r1 = is_irreducible(triv);
  CHECK(r1.irreducible);
  CHECK(r1.certified);

  auto rp = is_irreducible(perm);
  CHECK_FALSE(rp.irreducible);
  CHECK(rp.certified);
  CHECK(rp.proper_dim > 0);
  CHECK(rp.proper_dim < 3);

  // the standard 2-dimensional summand
  Vec v = {Scalar::rational(1), Scalar::rational(-1), Scalar::rational(0)};
  auto std2 = perm.subrepresentation(perm.spin({v}));
  REQUIRE(std2.dim() == 2);
  auto rs = is_irreducible(std2);
  CHECK(rs.irreducible);
  CHECK(rs.certified);

  auto strict = is_irreducible_strict(std2);
  CHECK(strict.irreducible);
}

TEST_CASE("irreducibility over prime fields") {
  auto g3 = c3();
  FieldTag f5 = prime_field(5);
  auto reg = Representation::regular(g3, f5);
  auto rr = is_irreducible(reg);
  CHECK_FALSE(rr.irreducible);
  CHECK(rr.certified);
  // x^2 + x + 1 is irreducible over F5, so the 2-dimensional piece is simple
  Vec v = {Scalar::modular(1, f5), Scalar::modular(4, f5), Scalar::modular(0, f5)};
  auto two = reg.subrepresentation(reg.spin({v}));
  REQUIRE(two.dim() == 2);
  auto rt = is_irreducible(two);
  CHECK(rt.irreducible);
  CHECK(rt.certified);

  // natural module of GL2(F_2) in its own (non-semisimple) characteristic
  auto nat = natural_gl2f2(s3());
  auto rn = is_irreducible(nat);
  CHECK(rn.irreducible);
  CHECK(rn.certified);
}

TEST_CASE("reducibility certificates are genuine submodules") {
  auto g = s3();
  auto perm = Representation::regular(g, rationals());
  auto r = is_irreducible(perm);
  REQUIRE_FALSE(r.irreducible);
  REQUIRE(r.certified);
  REQUIRE(!r.submodule.empty());
  auto sub = perm.subrepresentation(r.submodule);  // throws if not invariant
  CHECK(sub.dim() == r.proper_dim);
}

TEST_CASE("trace map on tensor products") {
  auto g3 = c3();
  // free B: isomorphism in every characteristic, including ell = |G|
  for (FieldTag f : {rationals(), prime_field(5), prime_field(3)}) {
    auto b = Representation::regular(g3, f);
    auto a = Representation::trivial(g3, f);
    auto rep = trace_iso_check(b, a);
    CHECK(rep.bijective);
    CHECK(rep.dim_invariants == rep.dim_coinvariants);
  }
  // trivial B over F3 with |C3| = 3: the averaged operator vanishes
  {
    FieldTag f3 = prime_field(3);
    auto b = Representation::trivial(g3, f3);
    auto rep = trace_iso_check(b, b);
    CHECK_FALSE(rep.bijective);
    CHECK(rep.dim_invariants == 1);
    CHECK(rep.dim_coinvariants == 1);
    CHECK(rep.image_rank == 0);
  }
  // characteristic zero: always bijective, free or not
  {
    auto g = s3();
    auto stab = Subgroup::from_predicate(
        g, [](const GroupElement& e) { return e.at(0, 0) == 1 && e.at(1, 0) == 0; }, "P1");
    auto perm = Representation::permutation(g, stab, rationals());
    auto rep = trace_iso_check(perm, perm);
    CHECK(rep.bijective);
  }
  // free B over S3 in characteristic 2
  {
    auto g = s3();
    auto rep = trace_iso_check(Representation::regular(g, prime_field(2)), natural_gl2f2(g));
    CHECK(rep.bijective);
  }
}

TEST_CASE("functor data on the level 4 instance") {
  Functors fn(build_instance_by_key("sl2-p2-level4-pro-p"), rationals());
  CHECK(fn.e_dim() == 3);  // dim R[G] eps
  CHECK(fn.mgroup()->size() == 2);

  auto triv = Representation::trivial(fn.mgroup(), rationals());
  std::uint32_t nontriv = fn.mgroup()->identity() == 0 ? 1 : 0;
  std::vector<Scalar> vals(2, Scalar::rational(1));
  vals[nontriv] = Scalar::rational(-1);
  auto sign = Representation::character(fn.mgroup(), rationals(), vals);

  for (const auto* w : {&triv, &sign}) {
    auto iw = fn.induce(*w);
    CHECK(iw.dim() >= 1);
    // restriction recovers W
    auto back = fn.restrict(iw);
    CHECK(back.dim() == 1);
    REQUIRE(equivalence(*w, back).has_value());
    // U-invariants also recover W
    auto invs = fn.u_invariants(iw);
    CHECK(invs.dim() == 1);
    REQUIRE(equivalence(*w, invs).has_value());
  }
}

TEST_CASE("two-sided adjunction on the level 4 instance") {
  Functors fn(build_instance_by_key("sl2-p2-level4-pro-p"), rationals());
  auto triv = Representation::trivial(fn.mgroup(), rationals());
  auto vtriv = Representation::trivial(fn.dec().host, rationals());
  auto vperm = Representation::permutation(fn.dec().host, fn.dec().U, rationals());
  for (const auto* v : {&vtriv, &vperm}) {
    auto dims = check_two_sided_adjunction(fn, triv, *v);
    CHECK(dims.left_adjoint_ok());
    CHECK(dims.right_adjoint_ok());
  }
}

TEST_CASE("functor data on the level 9 instance") {
  Functors fn(build_instance_by_key("sl2-p3-level9-pro-p"), rationals());
  CHECK(fn.e_dim() == 7);
  CHECK(fn.mgroup()->size() == 3);

  auto triv = Representation::trivial(fn.mgroup(), rationals());
  // the 2-dimensional rational irreducible of C3
  auto regm = Representation::regular(fn.mgroup(), rationals());
  Vec v = {Scalar::rational(1), Scalar::rational(-1), Scalar::rational(0)};
  auto w2 = regm.subrepresentation(regm.spin({v}));
  REQUIRE(w2.dim() == 2);

  for (const auto* w : {&triv, &w2}) {
    auto iw = fn.induce(*w);
    auto back = fn.restrict(iw);
    CHECK(back.dim() == w->dim());
    REQUIRE(equivalence(*w, back).has_value());
    auto invs = fn.u_invariants(iw);
    CHECK(invs.dim() == w->dim());
    REQUIRE(equivalence(*w, invs).has_value());
  }

  auto vperm = Representation::permutation(fn.dec().host, fn.dec().U, rationals());
  auto dims = check_two_sided_adjunction(fn, w2, vperm);
  CHECK(dims.two_sided());
}

TEST_CASE("functors over a prime field away from p") {
  Functors fn(build_instance_by_key("sl2-p2-level4-pro-p"), prime_field(5));
  auto triv = Representation::trivial(fn.mgroup(), prime_field(5));
  auto iw = fn.induce(triv);
  auto back = fn.restrict(iw);
  CHECK(back.dim() == 1);
  REQUIRE(equivalence(triv, back).has_value());
}

TEST_CASE("random subrepresentations are deterministic in the seed") {
  auto g = s3();
  auto perm = Representation::regular(g, rationals());
  auto a = random_subrep(perm, 42);
  auto b = random_subrep(perm, 42);
  CHECK(a.dim() == b.dim());
  for (std::uint32_t i = 0; i < g->size(); ++i) CHECK(a.rho(i) == b.rho(i));
}
