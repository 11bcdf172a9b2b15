#include "cubefree/field.hpp"

#include <stdexcept>

#include "cubefree/numthy.hpp"

namespace cubefree::ff {

namespace {

// Polynomials over F_p are vectors of coefficients, ascending degree, with no
// trailing zeros. These helpers only serve modulus construction, so clarity
// beats speed.

using Poly = std::vector<u32>;

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Remainder of a mod b over F_p; b must be nonzero.
Poly poly_mod(Poly a, const Poly& b, u32 p) {
  u64 binv = 1;
  {
    // inverse of b's leading coefficient mod p
    u64 lead = b.back(), x = 1;
    for (u32 e = p - 2; e; e >>= 1) {
      if (e & 1) x = x * lead % p;
      lead = lead * lead % p;
    }
    binv = x;
  }
  a = trim(std::move(a));
  while (a.size() >= b.size()) {
    u64 f = a.back() * binv % p;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = static_cast<u32>((a[shift + i] + (p - 1ull) * f % p * b[i]) % p);
    a = trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

// Decode an integer encoding a_0 + a_1*p + ... into a polynomial.
Poly decode(u64 code, u32 p) {
  Poly c;
  while (code) {
    c.push_back(static_cast<u32>(code % p));
    code /= p;
  }
  return c;
}

bool is_irreducible(const Poly& f, u32 p) {
  // Trial division by every monic polynomial of degree 1..deg(f)/2.
  size_t deg = f.size() - 1;
  for (size_t d = 1; 2 * d <= deg; ++d) {
    u64 count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (u64 code = 0; code < count; ++code) {
      Poly g = decode(code, p);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<u32> FieldSpec::coeffs(u64 a) const {
  std::vector<u32> c(k);
  for (u32 i = 0; i < k; ++i) {
    c[i] = static_cast<u32>(a % p);
    a /= p;
  }
  return c;
}

u64 FieldSpec::from_coeffs(const std::vector<u32>& c) const {
  u64 a = 0;
  for (size_t i = c.size(); i-- > 0;) a = a * p + c[i] % p;
  return a;
}

u64 FieldSpec::add(u64 a, u64 b) const {
  if (k == 1) return (a + b) % p;
  u64 r = 0, mul = 1;
  for (u32 i = 0; i < k; ++i) {
    r += (a % p + b % p) % p * mul;
    a /= p;
    b /= p;
    mul *= p;
  }
  return r;
}

u64 FieldSpec::neg(u64 a) const {
  if (k == 1) return (p - a % p) % p;
  u64 r = 0, mul = 1;
  for (u32 i = 0; i < k; ++i) {
    r += (p - a % p) % p * mul;
    a /= p;
    mul *= p;
  }
  return r;
}

u64 FieldSpec::sub(u64 a, u64 b) const { return add(a, neg(b)); }

u64 FieldSpec::mul(u64 a, u64 b) const {
  if (k == 1) return a * b % p;
  u32 ca[32], cb[32];
  u64 prod[63] = {0};
  for (u32 i = 0; i < k; ++i) {
    ca[i] = static_cast<u32>(a % p);
    a /= p;
    cb[i] = static_cast<u32>(b % p);
    b /= p;
  }
  for (u32 i = 0; i < k; ++i) {
    if (!ca[i]) continue;
    for (u32 j = 0; j < k; ++j) prod[i + j] += u64(ca[i]) * cb[j];
  }
  // reduce x^m = -modulus for m from high to low
  for (u32 m = 2 * k - 2; m >= k; --m) {
    u64 c = prod[m] % p;
    prod[m] = 0;
    if (!c) continue;
    for (u32 i = 0; i < k; ++i)
      prod[m - k + i] += c * ((p - modulus[i] % p) % p);
  }
  u64 r = 0, mulb = 1;
  for (u32 i = 0; i < k; ++i) {
    r += prod[i] % p * mulb;
    mulb *= p;
  }
  return r;
}

u64 FieldSpec::pow(u64 a, u64 e) const {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 FieldSpec::inv(u64 a) const {
  if (a == 0) throw std::domain_error("field inverse of zero");
  return pow(a, q - 2);
}

u64 FieldSpec::multiplicative_order(u64 a) const {
  if (a == 0) throw std::domain_error("multiplicative order of zero");
  u64 ord = q - 1;
  for (auto [pr, e] : numthy::factorize(q - 1).pe) {
    for (unsigned i = 0; i < e; ++i) {
      if (pow(a, ord / pr) == 1)
        ord /= pr;
      else
        break;
    }
  }
  return ord;
}

FieldSpec make_field(u32 p, u32 k) {
  if (k == 0) throw std::invalid_argument("make_field: k must be >= 1");
  if (!numthy::is_prime(p)) throw std::invalid_argument("make_field: p must be prime");
  u64 q = 1;
  for (u32 i = 0; i < k; ++i) {
    q *= p;
    if (q > kFieldCap) throw std::invalid_argument("make_field: q exceeds cap 2^20");
  }
  FieldSpec F;
  F.p = p;
  F.k = k;
  F.q = q;
  if (k > 1) {
    u64 count = q;  // p^k encodings of the lower coefficients
    for (u64 code = 0; code < count; ++code) {
      Poly f = decode(code, p);
      f.resize(k + 1, 0);
      f[k] = 1;
      if (is_irreducible(f, p)) {
        F.modulus.assign(f.begin(), f.begin() + k);
        break;
      }
    }
    if (F.modulus.empty() && k > 1)
      throw std::logic_error("make_field: no irreducible polynomial found");
  }
  return F;
}

u64 element_of_order(const FieldSpec& F, u64 n) {
  if (n == 0 || (F.q - 1) % n)
    throw std::invalid_argument("element_of_order: n must divide q-1");
  for (u64 a = 1; a < F.q; ++a)
    if (F.multiplicative_order(a) == n) return a;
  throw std::logic_error("element_of_order: cyclic group F_q* must contain the order");
}

}  // namespace cubefree::ff
