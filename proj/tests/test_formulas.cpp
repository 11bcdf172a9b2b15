#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cubefree/formulas.hpp"
#include "cubefree/numthy.hpp"

using namespace cubefree;
using formulas::BigInt;
using formulas::u64;

TEST_CASE("square-free group counts") {
  CHECK(formulas::holder_count(1) == 1);
  CHECK(formulas::holder_count(2) == 1);
  CHECK(formulas::holder_count(6) == 2);
  CHECK(formulas::holder_count(15) == 1);
  CHECK(formulas::holder_count(30) == 4);
  CHECK(formulas::holder_count(105) == 2);
  for (u64 p : {3, 5, 7, 11, 13}) CHECK(formulas::holder_count(p) == 1);
  CHECK_THROWS_AS(formulas::holder_count(12), std::invalid_argument);  // not square-free
}

TEST_CASE("global upper bounds") {
  formulas::BoundValue odd15 = formulas::upper_bound_odd(15);
  CHECK(odd15.log2_value == doctest::Approx(-2.0 + 1.75 * std::log2(15.0)).epsilon(1e-12));
  CHECK_FALSE(odd15.exact.has_value());

  formulas::BoundValue solv12 = formulas::upper_bound_solvable(12);
  REQUIRE(solv12.exact.has_value());
  CHECK(*solv12.exact == 20736);  // 12^4
  CHECK(solv12.log2_value == doctest::Approx(4.0 * std::log2(12.0)).epsilon(1e-12));

  CHECK(*formulas::upper_bound_odd(1).exact == 1);
  CHECK(*formulas::upper_bound_solvable(1).exact == 1);

  CHECK_THROWS_AS(formulas::upper_bound_odd(12), std::invalid_argument);  // even
  CHECK_THROWS_AS(formulas::upper_bound_odd(27), std::invalid_argument);  // not cube-free
  CHECK_THROWS_AS(formulas::upper_bound_solvable(8), std::invalid_argument);
}

TEST_CASE("exact bound comparisons") {
  // n = 15: (4 count)^4 <= 15^7 flips between 28 and 29
  CHECK(formulas::upper_bound_odd_holds(15, 28));
  CHECK_FALSE(formulas::upper_bound_odd_holds(15, 29));
  CHECK(formulas::upper_bound_solvable_holds(12, 20736));
  CHECK_FALSE(formulas::upper_bound_solvable_holds(12, 20737));
  // a bound far beyond 64-bit range still compares exactly:
  // n = 3^2 * 5 * 7 * ... * 43 has mu = 2, so the bound is n^4 (about 2^217)
  u64 n = 19624141997505045ULL;
  CHECK(formulas::upper_bound_solvable_holds(n, BigInt(1) << 200));
  CHECK_FALSE(formulas::upper_bound_solvable_holds(n, BigInt(1) << 240));
}

TEST_CASE("class-count bounds in GL(2,q)") {
  CHECK(formulas::abelian_classes_bound(7, false) ==
        doctest::Approx(0.5 * std::pow(6.0, 1.5) + 1.0));
  CHECK(formulas::abelian_classes_bound(7, true) ==
        doctest::Approx(0.75 * std::pow(6.0, 1.5) + 1.0));
  CHECK(formulas::odd_maximal_bound(3) == doctest::Approx(0.5 * std::pow(3.0, 1.5) - 1.0));
  CHECK(formulas::solvable_maximal_bound(5) == doctest::Approx(11.5));

  CHECK(formulas::abelian_classes_bound_holds(7, false, 8));
  CHECK_FALSE(formulas::abelian_classes_bound_holds(7, false, 9));
  CHECK(formulas::abelian_classes_bound_holds(7, true, 12));
  CHECK_FALSE(formulas::abelian_classes_bound_holds(7, true, 13));
  CHECK(formulas::odd_maximal_bound_holds(3, 1));
  CHECK_FALSE(formulas::odd_maximal_bound_holds(3, 2));
  CHECK(formulas::solvable_maximal_bound_holds(5, 11));
  CHECK_FALSE(formulas::solvable_maximal_bound_holds(5, 12));

  CHECK_THROWS_AS(formulas::abelian_classes_bound(8, false), std::invalid_argument);  // even q
  CHECK_THROWS_AS(formulas::odd_maximal_bound(9), std::invalid_argument);  // not prime
}

TEST_CASE("nonabelian maximal class counts") {
  formulas::Prop22Input in19 = formulas::prop22_input(19);
  CHECK(in19.S == std::vector<u64>{3});
  CHECK(in19.P == std::vector<u64>{3});
  CHECK(in19.t == 1);

  // q = 3 and q = 7 have q + 1 a power of two: no primitive classes there.
  CHECK(formulas::primitive_maximal_count(3) == 0);
  CHECK(formulas::primitive_maximal_count(7) == 0);
  CHECK(formulas::primitive_maximal_count(31) == 0);
  CHECK(formulas::primitive_maximal_count(5) == 2);
  CHECK(formulas::primitive_maximal_count(9) == 2);
  CHECK(formulas::imprimitive_maximal_count(3) == 0);
  CHECK(formulas::imprimitive_maximal_count(7) == 2);
  CHECK(formulas::imprimitive_maximal_count(19) == 4);

  CHECK(formulas::nonabelian_maximal_count(3) == 0);
  CHECK(formulas::nonabelian_maximal_count(5) == 2);
  CHECK(formulas::nonabelian_maximal_count(7) == 2);
  CHECK(formulas::nonabelian_maximal_count(9) == 2);
  CHECK(formulas::nonabelian_maximal_count(11) == 4);
  CHECK(formulas::nonabelian_maximal_count(13) == 4);
  CHECK(formulas::nonabelian_maximal_count(19) == 6);
  CHECK(formulas::nonabelian_maximal_count(31) == 2);
  CHECK(formulas::nonabelian_maximal_count(49) == 4);

  CHECK_THROWS_AS(formulas::nonabelian_maximal_count(8), std::invalid_argument);
  CHECK_THROWS_AS(formulas::nonabelian_maximal_count(15), std::invalid_argument);
}

TEST_CASE("subgroup counts in abelian p-groups") {
  CHECK(formulas::elem_abelian_subgroup_count(3, 1, 1, 0) == 1);
  CHECK(formulas::elem_abelian_subgroup_count(3, 1, 1, 1) == 4);
  CHECK(formulas::elem_abelian_subgroup_count(3, 1, 1, 2) == 1);
  CHECK(formulas::elem_abelian_subgroup_count(2, 0, 3, 1) == 7);
  CHECK(formulas::elem_abelian_subgroup_count(2, 0, 3, 2) == 7);
  CHECK(formulas::cyclic_p2_subgroup_count(3, 1, 1) == 3);
  CHECK(formulas::cyclic_p2_subgroup_count(5, 0, 2) == 0);  // exponent p only
  CHECK(formulas::cyclic_p2_subgroup_count(2, 2, 0) == 6);  // Z_4 x Z_4
}

TEST_CASE("split extension inputs and counts") {
  formulas::Thm13Input in = formulas::make_thm13_input(7, 3, 1);
  CHECK(in.l == 3);
  CHECK(in.m == 1);
  CHECK(in.s == 1);
  formulas::Thm13Input in2 = formulas::make_thm13_input(5, 3, 1);
  CHECK(in2.l == 1);
  CHECK(in2.s == 3);

  CHECK_THROWS_AS(formulas::make_thm13_input(7, 2, 1), std::invalid_argument);   // even c
  CHECK_THROWS_AS(formulas::make_thm13_input(7, 3, 3), std::invalid_argument);   // gcd(c,d) > 1
  CHECK_THROWS_AS(formulas::make_thm13_input(7, 27, 1), std::invalid_argument);  // c not cube-free
  CHECK_THROWS_AS(formulas::make_thm13_input(7, 3, 9), std::invalid_argument);   // d not square-free
  CHECK_THROWS_AS(formulas::make_thm13_input(3, 3, 1), std::invalid_argument);   // p | c
  CHECK_THROWS_AS(formulas::make_thm13_input(6, 5, 1), std::invalid_argument);   // p not prime

  CHECK(formulas::split_count_p2(5, 3, 1) == 2);
  CHECK(formulas::split_count_p2(7, 3, 1) == 4);
  CHECK(formulas::split_count_p2(7, 1, 3) == 5);
  CHECK(formulas::split_count_p2(11, 5, 1) == 5);
  CHECK(formulas::split_count_p2(13, 3, 1) == 4);

  CHECK(formulas::split_count_cyclic(7, 1, 3, 1) == 2);
  CHECK(formulas::split_count_cyclic(7, 2, 3, 1) == 2);
  CHECK(formulas::split_count_cyclic(5, 1, 3, 1) == 1);
  CHECK(formulas::split_count_cyclic(11, 1, 5, 1) == 2);
  CHECK(formulas::split_count_cyclic(13, 2, 3, 1) == 2);
  CHECK(formulas::split_count_cyclic(7, 40, 3, 1) == 2);  // alpha only needs p^alpha c d^2 abstractly
}

TEST_CASE("omega_irr") {
  CHECK(formulas::omega_irr(1, 100) == 0);
  CHECK(formulas::omega_irr(3, 1) == 1);
  CHECK(formulas::omega_irr(3, 3) == 2);
  CHECK(formulas::omega_irr(15, 9) == 9);  // tau(9) * (tau(15) - 1)
}

TEST_CASE("product lower bound") {
  CHECK(formulas::lower_bound_product(35, 1, 3, 1) == 2);
  CHECK(formulas::lower_bound_product(7, 5, 3, 1) == 4);
  CHECK(formulas::lower_bound_product(1, 1, 3, 1) == 1);
  CHECK(formulas::lower_bound_product(1, 1, 15, 1) == 1);
  CHECK_THROWS_AS(formulas::lower_bound_product(15, 3, 7, 1), std::invalid_argument);  // not coprime
  CHECK_THROWS_AS(formulas::lower_bound_product(4, 1, 3, 1), std::invalid_argument);   // even
}
