#include <catch2/catch_amalgamated.hpp>

#include "parind/linalg.hpp"

using namespace parind;

namespace {
Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }

Matrix mat(std::size_t r, std::size_t c, std::initializer_list<long> vals) {
  Matrix m(r, c, rationals());
  auto it = vals.begin();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = q(*it++);
  return m;
}
}  // namespace

TEST_CASE("matrix product and transpose") {
  Matrix a = mat(2, 3, {1, 2, 3, 4, 5, 6});
  Matrix b = mat(3, 2, {7, 8, 9, 10, 11, 12});
  Matrix ab = a * b;
  CHECK(ab.at(0, 0) == q(58));
  CHECK(ab.at(1, 1) == q(154));
  CHECK(a.transpose().at(2, 1) == q(6));
  CHECK((a + a).at(1, 2) == q(12));
  CHECK((a - a).at(0, 0) == q(0));
}

TEST_CASE("echelon basis tracks rank and membership") {
  EchelonBasis eb(3, rationals());
  CHECK(eb.add({q(1), q(2), q(3)}));
  CHECK(eb.add({q(0), q(1), q(1)}));
  CHECK_FALSE(eb.add({q(1), q(3), q(4)}));  // dependent
  CHECK(eb.rank() == 2);
  CHECK(eb.contains({q(2), q(5), q(7)}));
  CHECK_FALSE(eb.contains({q(0), q(0), q(1)}));
}

TEST_CASE("echelon basis combination tracking reproduces inputs") {
  EchelonBasis eb(4, rationals(), /*track=*/true);
  std::vector<Vec> inputs = {
      {q(2), q(0), q(1), q(0)},
      {q(0), q(3), q(0), q(1)},
      {q(2), q(3), q(1), q(1)},  // sum of the first two
      {q(1), q(1), q(1), q(1)},
  };
  for (const auto& v : inputs) eb.add(v);
  CHECK(eb.rank() == 3);
  Vec target = {q(3), q(4), q(2), q(2)};
  Vec combo;
  Vec residual = eb.reduce(target, &combo);
  bool zero = true;
  for (const auto& s : residual) zero = zero && s.is_zero();
  REQUIRE(zero);
  REQUIRE(combo.size() == inputs.size());
  // recombine and compare
  Vec acc = zero_vec(4, rationals());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (std::size_t j = 0; j < 4; ++j) acc[j] = acc[j] + combo[i] * inputs[i][j];
  for (std::size_t j = 0; j < 4; ++j) CHECK(acc[j] == target[j]);
}

TEST_CASE("solve_linear finds exact solutions") {
  Matrix a = mat(3, 2, {1, 2, 3, 4, 5, 6});
  Vec b = {q(5), q(11), q(17)};  // x = (1, 2)
  auto x = solve_linear(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == q(1));
  CHECK((*x)[1] == q(2));
  Vec bad = {q(1), q(0), q(0)};
  CHECK_FALSE(solve_linear(a, bad).has_value());
}

TEST_CASE("kernel basis spans the nullspace") {
  Matrix a = mat(2, 4, {1, 0, 1, 0, 0, 1, 0, 1});
  auto ker = kernel_basis(a);
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) {
    Vec av = a.apply(v);
    for (const auto& s : av) CHECK(s.is_zero());
  }
}

TEST_CASE("matrix inverse over the rationals") {
  Matrix a = mat(3, 3, {2, 1, 0, 1, 3, 1, 0, 1, 2});
  auto ai = inverse(a);
  REQUIRE(ai.has_value());
  Matrix prod = a * *ai;
  CHECK(prod == Matrix::identity(3, rationals()));
  Matrix sing = mat(2, 2, {1, 2, 2, 4});
  CHECK_FALSE(inverse(sing).has_value());
}

TEST_CASE("determinant agrees with cofactor expansion on small cases") {
  CHECK(determinant(mat(2, 2, {3, 7, 1, 5})) == q(8));
  CHECK(determinant(mat(3, 3, {2, 0, 1, 1, 3, 2, 1, 0, 1})) == q(3));
  CHECK(determinant(mat(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9})) == q(0));
}

TEST_CASE("determinant with rational entries") {
  Matrix a(2, 2, rationals());
  a.at(0, 0) = q(1, 2);
  a.at(0, 1) = q(1, 3);
  a.at(1, 0) = q(1, 4);
  a.at(1, 1) = q(1, 5);
  CHECK(determinant(a) == q(1, 60));  // 1/10 - 1/12
}

TEST_CASE("determinant is multiplicative (randomized)") {
  Rng rng(12345);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(3, 3, rationals()), b(3, 3, rationals());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        a.at(i, j) = q(long(rng() % 11) - 5);
        b.at(i, j) = q(long(rng() % 11) - 5);
      }
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
  }
}

TEST_CASE("linear algebra over a prime field") {
  FieldTag f5 = prime_field(5);
  Matrix a(2, 2, f5);
  a.at(0, 0) = Scalar::modular(2, f5);
  a.at(0, 1) = Scalar::modular(3, f5);
  a.at(1, 0) = Scalar::modular(1, f5);
  a.at(1, 1) = Scalar::modular(4, f5);
  CHECK(determinant(a) == Scalar::modular(0, f5));  // 8 - 3 = 5
  CHECK(matrix_rank(a) == 1);
  a.at(1, 1) = Scalar::modular(0, f5);
  CHECK(determinant(a) == Scalar::modular(2, f5));  // -3 = 2
  auto ai = inverse(a);
  REQUIRE(ai.has_value());
  CHECK(a * *ai == Matrix::identity(2, f5));
}
