#include "cubefree/formulas.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cubefree/gl2.hpp"
#include "cubefree/numthy.hpp"

namespace cubefree::formulas {

namespace {

BigInt big_pow(BigInt base, u64 e) {
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

u64 count_bits(const BigInt& v) { return boost::multiprecision::msb(v) + 1; }

}  // namespace

BigInt holder_count(u64 n) {
  if (!numthy::is_squarefree(n)) throw std::invalid_argument("holder_count: n not square-free");
  auto primes = numthy::factorize(n).pe;
  BigInt total = 0;
  // subsets of the prime set; bit i set means p_i divides m
  for (u64 mask = 0; mask < (u64(1) << primes.size()); ++mask) {
    BigInt term = 1;
    for (size_t i = 0; i < primes.size() && term != 0; ++i) {
      if (mask & (u64(1) << i)) continue;
      u64 p = primes[i].first;
      u64 cp = 0;
      for (size_t j = 0; j < primes.size(); ++j)
        if ((mask & (u64(1) << j)) && primes[j].first % p == 1) ++cp;
      BigInt num = big_pow(p, cp) - 1;
      if (num % (p - 1) != 0) throw std::logic_error("holder_count: non-integral factor");
      term *= num / (p - 1);
    }
    total += term;
  }
  return total;
}

BoundValue upper_bound_odd(u64 n) {
  if (n == 0 || n % 2 == 0) throw std::invalid_argument("upper_bound_odd: n must be odd");
  if (!numthy::is_cubefree(n)) throw std::invalid_argument("upper_bound_odd: n not cube-free");
  double w = static_cast<double>(numthy::omega(n));
  double mu = static_cast<double>(numthy::mu_exp(n));
  BoundValue b;
  b.log2_value = -w * mu + (2.0 * mu - 0.25) * std::log2(static_cast<double>(n));
  if (n == 1) b.exact = 1;  // the only cube-free n with an integral bound
  return b;
}

BoundValue upper_bound_solvable(u64 n) {
  if (n == 0) throw std::invalid_argument("upper_bound_solvable: n must be positive");
  if (!numthy::is_cubefree(n)) throw std::invalid_argument("upper_bound_solvable: n not cube-free");
  unsigned mu = numthy::mu_exp(n);
  BoundValue b;
  b.log2_value = 2.0 * mu * std::log2(static_cast<double>(n));
  BigInt exact = big_pow(n, 2 * mu);
  if (count_bits(exact) <= 512) b.exact = exact;
  return b;
}

bool upper_bound_odd_holds(u64 n, const BigInt& count) {
  if (n == 0 || n % 2 == 0 || !numthy::is_cubefree(n))
    throw std::invalid_argument("upper_bound_odd_holds: n must be odd cube-free");
  if (n == 1) return count <= 1;
  // count <= 2^{-wm} n^{2m - 1/4}  <=>  (count * 2^{wm})^4 <= n^{8m - 1}
  u64 wm = u64(numthy::omega(n)) * numthy::mu_exp(n);
  BigInt lhs = big_pow(count * big_pow(2, wm), 4);
  return lhs <= big_pow(n, 8 * u64(numthy::mu_exp(n)) - 1);
}

bool upper_bound_solvable_holds(u64 n, const BigInt& count) {
  if (n == 0 || !numthy::is_cubefree(n))
    throw std::invalid_argument("upper_bound_solvable_holds: n must be cube-free");
  return count <= big_pow(n, 2 * u64(numthy::mu_exp(n)));
}

namespace {

void require_odd_prime_power(u64 q, const char* who) {
  if (q < 3 || q % 2 == 0 || !numthy::is_prime_power(q))
    throw std::invalid_argument(std::string(who) + ": q must be an odd prime power");
}

void require_prime(u64 p, bool odd, const char* who) {
  if (!numthy::is_prime(p) || (odd && p == 2))
    throw std::invalid_argument(std::string(who) + (odd ? ": p must be an odd prime"
                                                        : ": p must be prime"));
}

}  // namespace

double abelian_classes_bound(u64 q, bool even) {
  require_odd_prime_power(q, "abelian_classes_bound");
  double x = std::pow(static_cast<double>(q - 1), 1.5);
  return (even ? 0.75 : 0.5) * x + 1.0;
}

double odd_maximal_bound(u64 p) {
  require_prime(p, true, "odd_maximal_bound");
  return 0.5 * std::pow(static_cast<double>(p), 1.5) - 1.0;
}

double solvable_maximal_bound(u64 p) {
  require_prime(p, false, "solvable_maximal_bound");
  return 0.5 * static_cast<double>(p) * static_cast<double>(p) - 1.0;
}

bool abelian_classes_bound_holds(u64 q, bool even, u64 count) {
  require_odd_prime_power(q, "abelian_classes_bound_holds");
  if (count == 0) return true;
  // odd: count <= (q-1)^{3/2}/2 + 1    <=>   4(count-1)^2 <= (q-1)^3
  // even: count <= 3(q-1)^{3/2}/4 + 1  <=>  16(count-1)^2 <= 9(q-1)^3
  BigInt c = count - 1, x = q - 1;
  if (even) return 16 * c * c <= 9 * x * x * x;
  return 4 * c * c <= x * x * x;
}

bool odd_maximal_bound_holds(u64 p, u64 count) {
  require_prime(p, true, "odd_maximal_bound_holds");
  // count <= p^{3/2}/2 - 1  <=>  4(count+1)^2 <= p^3
  BigInt c = count + 1;
  return 4 * c * c <= BigInt(p) * p * p;
}

bool solvable_maximal_bound_holds(u64 p, u64 count) {
  require_prime(p, false, "solvable_maximal_bound_holds");
  return BigInt(2) * (BigInt(count) + 1) <= BigInt(p) * p;
}

Prop22Input prop22_input(u64 q) {
  require_odd_prime_power(q, "prop22_input");
  Prop22Input in;
  in.q = q;
  for (auto [r, e] : numthy::factorize(q - 1).pe) {
    if (r == 2) continue;
    in.S.push_back(r);
    if (e >= 2) in.P.push_back(r);
  }
  in.t = static_cast<unsigned>(in.P.size());
  return in;
}

u64 imprimitive_maximal_count(u64 q) {
  Prop22Input in = prop22_input(q);
  u64 pw = numthy::ipow(3, in.t);
  // When S = P the odd part of the wreath-product core can be all-scalar;
  // those two candidates are abelian and drop out.
  return in.S == in.P ? 2 * pw - 2 : 2 * pw;
}

u64 primitive_maximal_count(u64 q) {
  require_odd_prime_power(q, "primitive_maximal_count");
  // The two primitive classes are built on the largest odd cube-free
  // subgroup K of a Singer cycle of order q^2 - 1. If q + 1 is a power of
  // two then K sits inside the scalars of order q - 1, the extension is
  // abelian, and no nonabelian primitive subgroup exists at all.
  u64 m = q + 1;
  while (m % 2 == 0) m /= 2;
  return m == 1 ? 0 : 2;
}

u64 nonabelian_maximal_count(u64 q) {
  return imprimitive_maximal_count(q) + primitive_maximal_count(q);
}

u64 elem_abelian_subgroup_count(u64 p, unsigned u, unsigned v, unsigned t) {
  if (!numthy::is_prime(p)) throw std::invalid_argument("elem_abelian_subgroup_count: p prime");
  unsigned s = u + v;
  if (t > s) throw std::invalid_argument("elem_abelian_subgroup_count: t exceeds rank");
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < t; ++i) {
    num *= big_pow(p, s - i) - 1;
    den *= big_pow(p, t - i) - 1;
  }
  if (num % den != 0) throw std::logic_error("elem_abelian_subgroup_count: non-integral");
  return static_cast<u64>(num / den);
}

u64 cyclic_p2_subgroup_count(u64 p, unsigned u, unsigned v) {
  if (!numthy::is_prime(p)) throw std::invalid_argument("cyclic_p2_subgroup_count: p prime");
  if (u == 0) return 0;
  unsigned s = u + v;
  BigInt num = big_pow(p, s - 1) * (big_pow(p, u) - 1);
  if (num % (p - 1) != 0) throw std::logic_error("cyclic_p2_subgroup_count: non-integral");
  return static_cast<u64>(num / (p - 1));
}

u64 omega_irr(u64 s, u64 l) {
  if (s == 0 || l == 0) throw std::invalid_argument("omega_irr: s, l >= 1");
  if (s == 1) return 0;
  return numthy::tau(l) * (numthy::tau(s) - 1);
}

Thm13Input make_thm13_input(u64 p, u64 c, u64 d) {
  if (!numthy::is_prime(p)) throw std::invalid_argument("thm13: p must be prime");
  if (c == 0 || d == 0 || c % 2 == 0 || d % 2 == 0)
    throw std::invalid_argument("thm13: c and d must be odd and positive");
  if (!numthy::is_cubefree(c)) throw std::invalid_argument("thm13: c must be cube-free");
  if (!numthy::is_squarefree(d)) throw std::invalid_argument("thm13: d must be square-free");
  if (std::gcd(c, d) != 1) throw std::invalid_argument("thm13: c and d must be coprime");
  if (c % p == 0 || d % p == 0) throw std::invalid_argument("thm13: p must not divide cd");
  Thm13Input in;
  in.p = p;
  in.c = c;
  in.d = d;
  in.l = std::gcd(c * d, p - 1);
  in.m = std::gcd(d, p - 1);
  in.s = std::gcd(c * d, p + 1);
  return in;
}

u64 split_count_p2(u64 p, u64 c, u64 d) {
  Thm13Input in = make_thm13_input(p, c, d);
  u64 total = 0;
  for (u64 t : numthy::divisors(in.l * in.m)) {
    // H(t) is the unique order-t subgroup type of Z_l x Z_m: the r-part is
    // Z_r x Z_r when r^2 | t and r | m (then r^2 cannot divide l), else cyclic
    u64 u = 1, v = 1;
    for (auto [r, e] : numthy::factorize(t).pe) {
      if (e >= 2 && in.m % r == 0) {
        u *= r;
        v *= r;
      } else {
        u *= numthy::ipow(r, e);
      }
    }
    total += gl2::count_reducible_classes(p, u, v);
  }
  return total + omega_irr(in.s, in.l);
}

u64 split_count_cyclic(u64 p, unsigned alpha, u64 c, u64 d) {
  Thm13Input in = make_thm13_input(p, c, d);
  if (alpha == 0) throw std::invalid_argument("split_count_cyclic: alpha >= 1");
  return numthy::tau(in.l);
}

u64 lower_bound_product(u64 a, u64 b, u64 c, u64 d) {
  for (u64 x : {a, b, c, d})
    if (x == 0 || x % 2 == 0)
      throw std::invalid_argument("lower_bound_product: arguments must be odd and positive");
  u64 vals[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::gcd(vals[i], vals[j]) != 1)
        throw std::invalid_argument("lower_bound_product: arguments must be mutually coprime");
  if (!numthy::is_cubefree(a) || !numthy::is_cubefree(c))
    throw std::invalid_argument("lower_bound_product: a and c must be cube-free");
  if (!numthy::is_squarefree(b) || !numthy::is_squarefree(d))
    throw std::invalid_argument("lower_bound_product: b and d must be square-free");
  u64 product = 1;
  for (auto [p, e] : numthy::factorize(a).pe) product *= split_count_cyclic(p, e, c, d);
  for (auto [p, e] : numthy::factorize(b).pe) product *= split_count_p2(p, c, d);
  return product;
}

}  // namespace cubefree::formulas
