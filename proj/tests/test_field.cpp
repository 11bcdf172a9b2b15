#include "doctest.h"

#include <stdexcept>

#include "cubefree/field.hpp"

using namespace cubefree::ff;

TEST_CASE("prime field arithmetic") {
  FieldSpec F = make_field(13, 1);
  CHECK(F.q == 13);
  CHECK(F.modulus.empty());
  CHECK(F.add(7, 9) == 3);
  CHECK(F.sub(3, 9) == 7);
  CHECK(F.neg(5) == 8);
  CHECK(F.mul(7, 9) == 63 % 13);
  for (u64 a = 1; a < 13; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
  CHECK(F.pow(2, 12) == 1);
  CHECK(F.multiplicative_order(2) == 12);  // 2 generates F_13^*
  CHECK(F.multiplicative_order(3) == 3);
  CHECK(F.multiplicative_order(12) == 2);
}

TEST_CASE("F_9 uses x^2 + 1") {
  FieldSpec F = make_field(3, 2);
  CHECK(F.q == 9);
  // first monic irreducible of degree 2 over F_3 in the integer encoding
  CHECK(F.modulus == std::vector<u32>{1, 0});
  u64 x = F.from_coeffs({0, 1});
  CHECK(x == 3);
  CHECK(F.mul(x, x) == F.neg(1));  // x^2 = -1
  CHECK(F.multiplicative_order(x) == 4);
  for (u64 a = 0; a < 9; ++a) CHECK(F.from_coeffs(F.coeffs(a)) == a);
  for (u64 a = 1; a < 9; ++a) CHECK((8 % F.multiplicative_order(a)) == 0);
}

TEST_CASE("F_4 uses x^2 + x + 1") {
  FieldSpec F = make_field(2, 2);
  CHECK(F.q == 4);
  CHECK(F.modulus == std::vector<u32>{1, 1});
  u64 x = F.from_coeffs({0, 1});
  CHECK(F.multiplicative_order(x) == 3);
  CHECK(F.mul(x, F.mul(x, x)) == 1);
}

TEST_CASE("element_of_order picks the smallest witness") {
  FieldSpec F13 = make_field(13, 1);
  CHECK(element_of_order(F13, 1) == 1);
  CHECK(element_of_order(F13, 4) == 5);  // 5^2 = 25 = -1
  CHECK(element_of_order(F13, 12) == 2);
  CHECK_THROWS_AS(element_of_order(F13, 5), std::invalid_argument);
  FieldSpec F9 = make_field(3, 2);
  u64 g = element_of_order(F9, 8);
  CHECK(F9.multiplicative_order(g) == 8);
}

TEST_CASE("field construction rejects bad input") {
  CHECK_THROWS_AS(make_field(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_field(6, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_field(5, 0), std::invalid_argument);
}

TEST_CASE("frobenius relation in extension fields") {
  FieldSpec F = make_field(5, 2);
  for (u64 a = 0; a < F.q; ++a) {
    for (u64 b = 0; b < F.q; ++b) {
      CHECK(F.pow(F.add(a, b), 5) == F.add(F.pow(a, 5), F.pow(b, 5)));
    }
  }
}
