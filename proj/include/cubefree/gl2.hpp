#pragma once
// Subgroups of GL(2,q): the standard reference subgroups (diagonal, monomial,
// Singer cycle and its normalizer), conjugacy testing, class counting for
// reducible and irreducible cyclic subgroups, and the enumeration of maximal
// cube-free solvable q'-classes by kind.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubefree/field.hpp"

namespace cubefree::gl2 {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline constexpr u64 kDefaultMaxQ = 13;

struct Mat2 {
  std::array<u32, 4> e{0, 0, 0, 0};  // row-major [a b; c d], entries are field element indices
  bool operator==(const Mat2&) const = default;
};

u64 mat_key(const Mat2& m, u64 q);  // ((a*q+b)*q+c)*q+d
Mat2 mat_identity();
Mat2 mat_mul(const ff::FieldSpec& F, const Mat2& a, const Mat2& b);
Mat2 mat_inv(const ff::FieldSpec& F, const Mat2& m);
u64 mat_det(const ff::FieldSpec& F, const Mat2& m);
u64 mat_trace(const ff::FieldSpec& F, const Mat2& m);

// A subgroup given by its full element list, sorted by mat_key.
struct Subgroup {
  ff::FieldSpec F;
  std::vector<Mat2> els;
  u64 order() const { return els.size(); }
};

Subgroup diagonal_subgroup(u64 q);   // D(2,q), order (q-1)^2
Subgroup monomial_subgroup(u64 q);   // M(2,q), order 2(q-1)^2
Subgroup singer_cycle(u64 q);        // cyclic irreducible of order q^2-1
Subgroup singer_normalizer(u64 q);   // N(2,q), order 2(q^2-1)

bool is_reducible(const Subgroup& h);    // common eigenvector line over F_q
bool is_imprimitive(const Subgroup& h);  // irreducible and permutes a line pair

// Conjugating element g with g H g^-1 = K, if one exists. Requires the same
// field; uses invariant prefilters, then a scan over GL(2,q).
std::optional<Mat2> are_conjugate(const Subgroup& h, const Subgroup& k);

// Number of GL(2,q)-classes of subgroups of D(2,q) isomorphic to Z_u x Z_v
// (v | u | q-1; v = 1 gives cyclic Z_u; u = v = 1 the trivial group).
u64 count_reducible_classes(u64 q, u64 u, u64 v);

// Number of GL(2,q)-classes of irreducible cyclic subgroups of order t:
// 1 when t | q^2-1 and t does not divide q-1, else 0.
u64 count_irreducible_cyclic_classes(u64 q, u64 t);
// Exhaustive check of the same count (intended for small q in tests).
u64 count_irreducible_cyclic_classes_bruteforce(u64 q, u64 t);

enum class Kind { abelian_odd, abelian_even, nonabelian, odd_all, all };
const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& s);

// Conjugacy class representatives of the maximal members, of the given kind,
// among solvable cube-free q'-subgroups of GL(2,q). Maximality is relative to
// the kind: abelian kinds compare within abelian subgroups of that parity,
// odd_all within odd-order subgroups, nonabelian within nonabelian ones, and
// all within everything. Any prime power q <= max_q.
std::vector<Subgroup> maximal_cubefree_classes(u64 q, Kind kind, u64 max_q = kDefaultMaxQ);

// The explicit nonabelian representatives built from monomial data: the
// scalar/split pieces indexed per prime r with r^2 | q-1, crossed with the
// two point-stabilizer choices. Constructive, odd q only.
std::vector<Subgroup> imprimitive_representatives(u64 q);

// One-step extension test: no g in GL(2,q) outside H extends H to a strictly
// larger solvable cube-free q'-subgroup.
bool is_maximal_cubefree_solvable(const Subgroup& h);

}  // namespace cubefree::gl2
