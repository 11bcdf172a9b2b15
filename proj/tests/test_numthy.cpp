#include "doctest.h"

#include <stdexcept>

#include "cubefree/numthy.hpp"

using namespace cubefree::numthy;

TEST_CASE("factorize basics") {
  Factorization f = factorize(360);
  REQUIRE(f.pe.size() == 3);
  CHECK(f.pe[0] == std::pair<u64, unsigned>{2, 3});
  CHECK(f.pe[1] == std::pair<u64, unsigned>{3, 2});
  CHECK(f.pe[2] == std::pair<u64, unsigned>{5, 1});
  CHECK(f.value() == 360);
  CHECK(factorize(1).pe.empty());
  CHECK(factorize(1).value() == 1);
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize roundtrips") {
  for (u64 n = 1; n <= 2000; ++n) CHECK(factorize(n).value() == n);
}

TEST_CASE("divisor counting functions") {
  CHECK(tau(1) == 1);
  CHECK(tau(12) == 6);
  CHECK(tau(97) == 2);
  CHECK(omega(1) == 0);
  CHECK(omega(12) == 2);
  CHECK(omega(30) == 3);
  CHECK(mu_exp(1) == 0);
  CHECK(mu_exp(30) == 1);
  CHECK(mu_exp(12) == 2);
  CHECK(mu_exp(360) == 3);
}

TEST_CASE("primality and powers") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(is_prime_power(8));
  CHECK(is_prime_power(9));
  CHECK(is_prime_power(13));
  CHECK(is_prime_power(121));
  CHECK_FALSE(is_prime_power(1));
  CHECK_FALSE(is_prime_power(12));
}

TEST_CASE("squarefree and cubefree") {
  CHECK(is_squarefree(1));
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(12));
  CHECK(is_cubefree(1));
  CHECK(is_cubefree(12));
  CHECK(is_cubefree(180));
  CHECK_FALSE(is_cubefree(8));
  CHECK_FALSE(is_cubefree(24));
  CHECK_FALSE(is_cubefree(360));
}

TEST_CASE("divisors ascending") {
  CHECK(divisors(1) == std::vector<u64>{1});
  CHECK(divisors(12) == std::vector<u64>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(49) == std::vector<u64>{1, 7, 49});
}

TEST_CASE("ipow") {
  CHECK(ipow(2, 10) == 1024);
  CHECK(ipow(7, 0) == 1);
  CHECK(ipow(1, 100) == 1);
  CHECK_THROWS_AS(ipow(2, 64), std::overflow_error);
  CHECK_THROWS_AS(ipow(10, 30), std::overflow_error);
}

TEST_CASE("cd decomposition of cube-free abelian invariants") {
  CdDecomposition a = cd_decompose({15});
  CHECK(a.c == 15);
  CHECK(a.d == 1);
  CdDecomposition b = cd_decompose({15, 3});
  CHECK(b.c == 5);
  CHECK(b.d == 3);
  CdDecomposition c = cd_decompose({});
  CHECK(c.c == 1);
  CHECK(c.d == 1);
  CHECK_THROWS_AS(cd_decompose({9, 3}), std::invalid_argument);  // 27 is not cube-free
  CHECK_THROWS_AS(cd_decompose({3, 9}), std::invalid_argument);  // not invariant factors
}
