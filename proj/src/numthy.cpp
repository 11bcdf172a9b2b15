#include "cubefree/numthy.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cubefree::numthy {

u64 Factorization::value() const {
  u64 n = 1;
  for (auto [p, e] : pe) n *= ipow(p, e);
  return n;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.pe.emplace_back(p, e);
  }
  if (n > 1) f.pe.emplace_back(n, 1);
  return f;
}

u64 tau(u64 n) {
  u64 t = 1;
  for (auto [p, e] : factorize(n).pe) t *= e + 1;
  return t;
}

unsigned omega(u64 n) { return static_cast<unsigned>(factorize(n).pe.size()); }

unsigned mu_exp(u64 n) {
  unsigned m = 0;
  for (auto [p, e] : factorize(n).pe) m = std::max(m, e);
  return m;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  auto f = factorize(n);
  return f.pe.size() == 1 && f.pe[0].second == 1;
}

bool is_prime_power(u64 n) {
  if (n < 2) return false;
  return factorize(n).pe.size() == 1;
}

bool is_squarefree(u64 n) { return mu_exp(n) <= 1; }

bool is_cubefree(u64 n) { return mu_exp(n) <= 2; }

std::vector<u64> divisors(u64 n) {
  auto f = factorize(n);
  std::vector<u64> ds{1};
  for (auto [p, e] : f.pe) {
    size_t base = ds.size();
    u64 pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

u64 ipow(u64 base, unsigned e) {
  u64 r = 1;
  while (e--) {
    if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("ipow overflow");
    r *= base;
  }
  return r;
}

CdDecomposition cd_decompose(const std::vector<u64>& invariant_factors) {
  if (invariant_factors.size() > 2)
    throw std::invalid_argument("cd_decompose: at most two invariant factors supported");
  for (u64 f : invariant_factors)
    if (f < 2) throw std::invalid_argument("cd_decompose: invariant factors must be >= 2");
  CdDecomposition r;
  if (invariant_factors.empty()) return r;  // trivial group
  u64 n1 = invariant_factors[0];
  u64 n2 = invariant_factors.size() > 1 ? invariant_factors[1] : 1;
  if (n2 > n1 || n1 % n2)
    throw std::invalid_argument("cd_decompose: second factor must divide the first");
  r.d = n2;
  r.c = n1 / n2;
  if (!is_cubefree(r.c) || !is_squarefree(r.d) || std::gcd(r.c, r.d) != 1)
    throw std::invalid_argument("cd_decompose: group is not cube-free of shape Z_cd x Z_d");
  return r;
}

}  // namespace cubefree::numthy
