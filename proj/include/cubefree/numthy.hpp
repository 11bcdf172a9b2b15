#pragma once
// Elementary multiplicative number theory: factorization, divisors, and the
// square-free / cube-free predicates the rest of the library leans on.

#include <cstdint>
#include <utility>
#include <vector>

namespace cubefree::numthy {

using u64 = std::uint64_t;

// Prime factorization with primes strictly ascending and exponents >= 1.
struct Factorization {
  std::vector<std::pair<u64, unsigned>> pe;
  u64 value() const;  // remultiplies to the original n
};

// n = c * d^2 reading of an abelian group with invariant factors (cd, d):
// c cube-free, d square-free, gcd(c, d) = 1.
struct CdDecomposition {
  u64 c = 1;
  u64 d = 1;
};

Factorization factorize(u64 n);    // trial division; rejects n = 0
u64 tau(u64 n);                    // number of divisors
unsigned omega(u64 n);             // number of distinct prime divisors
unsigned mu_exp(u64 n);            // largest exponent in the factorization; 0 for n = 1
bool is_prime(u64 n);
bool is_prime_power(u64 n);        // p^k with k >= 1
bool is_squarefree(u64 n);
bool is_cubefree(u64 n);
std::vector<u64> divisors(u64 n);  // ascending
u64 ipow(u64 base, unsigned e);    // overflow-checked

// Accepts at most two invariant factors (n2 | n1) and returns (c, d) with
// n1 = c*d, n2 = d. Rejects inputs whose group is not cube-free, i.e. unless
// c is cube-free, d is square-free and gcd(c, d) = 1.
CdDecomposition cd_decompose(const std::vector<u64>& invariant_factors);

}  // namespace cubefree::numthy
