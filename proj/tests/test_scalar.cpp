#include <catch2/catch_amalgamated.hpp>

#include "parind/scalar.hpp"

using namespace parind;

TEST_CASE("rational arithmetic is exact") {
  Scalar a = Scalar::rational(1, 3), b = Scalar::rational(1, 6);
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK((-a).str() == "-1/3");
  CHECK(a.inv().str() == "3");
  CHECK(a != b);
  CHECK(a + b == Scalar::rational(1, 2));
  CHECK(Scalar::zero(rationals()).is_zero());
  CHECK_FALSE(a.is_zero());
}

TEST_CASE("prime field arithmetic") {
  FieldTag f5 = prime_field(5);
  Scalar a = Scalar::modular(3, f5), b = Scalar::modular(4, f5);
  CHECK((a + b).str() == "2");
  CHECK((a * b).str() == "2");
  CHECK((a - b).str() == "4");
  CHECK(a.inv() * a == Scalar::one(f5));
  CHECK((b / a * a) == b);
  CHECK(Scalar::modular(10, f5).is_zero());
}

TEST_CASE("large prime field multiplication does not overflow") {
  FieldTag f = prime_field((1ull << 61) - 1);  // Mersenne prime
  Scalar x = Scalar::modular(f.ell - 2, f);
  CHECK(x * x == Scalar::modular(4, f));  // (-2)^2
  CHECK(x.inv() * x == Scalar::one(f));
}

TEST_CASE("mixed field operations are rejected") {
  Scalar q = Scalar::rational(1, 2), m = Scalar::modular(1, prime_field(5));
  CHECK_THROWS_AS(q + m, field_mismatch);
  CHECK_THROWS_AS(q * m, field_mismatch);
}

TEST_CASE("non-prime moduli are rejected") {
  CHECK_THROWS_AS(prime_field(6), error);
  CHECK_THROWS_AS(prime_field(1), error);
}

TEST_CASE("inverse_of_integer guards the characteristic") {
  CHECK(Scalar::inverse_of_integer(16, rationals()).str() == "1/16");
  CHECK(Scalar::inverse_of_integer(3, prime_field(5)) * Scalar::modular(3, prime_field(5)) ==
        Scalar::one(prime_field(5)));
  CHECK_THROWS_AS(Scalar::inverse_of_integer(10, prime_field(5)), error);
  CHECK_THROWS_WITH(Scalar::inverse_of_integer(16, prime_field(2)),
                    Catch::Matchers::ContainsSubstring("divisible by the coefficient characteristic"));
}

TEST_CASE("rational reduction into a prime field") {
  FieldTag f7 = prime_field(7);
  CHECK(Scalar::rational(1, 2).reduced_mod(f7) == Scalar::modular(4, f7));
  CHECK(Scalar::rational(-3, 5).reduced_mod(f7) == Scalar::modular(5, f7));  // -3 * 5^-1 = 4*3 = 12 = 5
  CHECK_THROWS_AS(Scalar::rational(1, 7).reduced_mod(f7), error);
}

TEST_CASE("scalar parsing") {
  CHECK(parse_scalar("-5/15", rationals()) == Scalar::rational(-1, 3));
  CHECK(parse_scalar("7", rationals()) == Scalar::rational(7, 1));
  CHECK(parse_scalar("3", prime_field(5)) == Scalar::modular(3, prime_field(5)));
  CHECK(parse_scalar("1/2", prime_field(5)) == Scalar::modular(3, prime_field(5)));
  CHECK_THROWS_AS(parse_scalar("abc", rationals()), error);
}

TEST_CASE("p-adic valuation of rationals") {
  CHECK(valuation_p(mpq_class(12), 2) == 2);
  CHECK(valuation_p(mpq_class(5, 8), 2) == -3);
  CHECK(valuation_p(mpq_class(9, 2), 3) == 2);
  CHECK(valuation_p(mpq_class(7), 5) == 0);
}

TEST_CASE("plus-minus power of p detection") {
  auto [ok1, k1] = is_z_inv_p_unit(mpq_class(1, 9), 3);
  CHECK(ok1);
  CHECK(k1 == -2);
  auto [ok2, k2] = is_z_inv_p_unit(mpq_class(-27), 3);
  CHECK(ok2);
  CHECK(k2 == 3);
  auto [ok3, k3] = is_z_inv_p_unit(mpq_class(2, 9), 3);
  CHECK_FALSE(ok3);
  (void)k3;
}
