#pragma once
// Small finite fields F_q, q = p^k, with a deterministic modulus: the first
// monic irreducible polynomial of degree k in the integer encoding
// a_0 + a_1*p + ... + a_{k-1}*p^{k-1}. Elements are the indices 0..q-1; the
// base-p digits of an index are its coefficients (digit i = coefficient of
// x^i), so index order doubles as the canonical enumeration order.

#include <cstdint>
#include <vector>

namespace cubefree::ff {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline constexpr u64 kFieldCap = u64(1) << 20;

struct FieldSpec {
  u32 p = 2;
  u32 k = 1;
  u64 q = 2;
  std::vector<u32> modulus;  // coefficients of x^0..x^{k-1}; x^k monic implicit; empty for k = 1

  u64 add(u64 a, u64 b) const;
  u64 sub(u64 a, u64 b) const;
  u64 neg(u64 a) const;
  u64 mul(u64 a, u64 b) const;
  u64 inv(u64 a) const;  // a != 0
  u64 pow(u64 a, u64 e) const;
  u64 multiplicative_order(u64 a) const;  // a != 0; always divides q-1
  std::vector<u32> coeffs(u64 a) const;   // ascending degree, length k
  u64 from_coeffs(const std::vector<u32>& c) const;
  bool operator==(const FieldSpec&) const = default;
};

// Deterministic field constructor. Rejects k = 0, p not prime, p^k > 2^20.
FieldSpec make_field(u32 p, u32 k);

// Smallest element (enumeration order) of exact multiplicative order n.
// Rejects n that do not divide q-1.
u64 element_of_order(const FieldSpec& F, u64 n);

}  // namespace cubefree::ff
