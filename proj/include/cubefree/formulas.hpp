#pragma once
// Closed formulas and bounds for counting cube-free groups and subgroup
// classes: Hoelder's square-free count, the global upper bounds, the GL(2,q)
// class-count bounds and the nonabelian maximal-class formula, subgroup
// counts in abelian p-groups, the split-extension counts over Z_p x Z_p and
// Z_{p^alpha}, and the product lower bound.

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cubefree::formulas {

using u64 = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

// A bound that may be astronomically large: log2 always, the exact integer
// when the bound is integral and fits 512 bits.
struct BoundValue {
  double log2_value = 0.0;
  std::optional<BigInt> exact;
};

// Number of groups of square-free order n:
//   f(n) = sum over m | n of prod_p (p^{c(p)} - 1)/(p - 1),
// p running over the primes of n/m and c(p) = #{primes q | m : q = 1 mod p}.
BigInt holder_count(u64 n);

// Upper bounds for the number of groups of cube-free order n:
// odd n: 2^{-omega(n) mu(n)} n^{2 mu(n) - 1/4}; solvable: n^{2 mu(n)}.
BoundValue upper_bound_odd(u64 n);
BoundValue upper_bound_solvable(u64 n);
// Exact integer-arithmetic comparisons count <= bound.
bool upper_bound_odd_holds(u64 n, const BigInt& count);
bool upper_bound_solvable_holds(u64 n, const BigInt& count);

// Class-count bounds in GL(2,q). Abelian maximal classes: (q-1)^{3/2}/2 + 1
// for odd-order classes, 3(q-1)^{3/2}/4 + 1 for even-order ones (q an odd
// prime power). Maximal classes over the prime field: p^{3/2}/2 - 1 amongst
// odd-order subgroups (p odd), p^2/2 - 1 amongst all (any p).
double abelian_classes_bound(u64 q, bool even);
double odd_maximal_bound(u64 p);
double solvable_maximal_bound(u64 p);
bool abelian_classes_bound_holds(u64 q, bool even, u64 count);
bool odd_maximal_bound_holds(u64 p, u64 count);
bool solvable_maximal_bound_holds(u64 p, u64 count);

// S, P, t derived from q-1: S the odd primes dividing q-1, P those whose
// square also divides, t = |P|.
struct Prop22Input {
  u64 q = 0;
  std::vector<u64> S, P;
  unsigned t = 0;
};
Prop22Input prop22_input(u64 q);  // q an odd prime power

// Conjugacy classes of maximal nonabelian solvable cube-free p'-subgroups of
// GL(2,q), split by structure. Imprimitive (monomial) classes: 2 * 3^t, less
// the two classes with scalar odd part when S = P. Primitive classes: 2,
// except that when q + 1 is a power of two the largest odd cube-free subgroup
// of a Singer cycle is scalar, every candidate degenerates to an abelian
// group, and the count is 0 (this happens at q = 3, 7, 31, ...). Odd prime
// power q.
u64 imprimitive_maximal_count(u64 q);
u64 primitive_maximal_count(u64 q);
u64 nonabelian_maximal_count(u64 q);  // the sum of the two pieces

// Subgroup counts in Q = Z_{p^2}^u x Z_p^v (s = u+v): elementary abelian
// subgroups of order p^t (Gaussian binomial), and cyclic subgroups of order
// p^2 (p^{s-1}(p^u - 1)/(p - 1), zero when u = 0).
u64 elem_abelian_subgroup_count(u64 p, unsigned u, unsigned v, unsigned t);
u64 cyclic_p2_subgroup_count(u64 p, unsigned u, unsigned v);

// 0 when s = 1, else tau(l)(tau(s) - 1).
u64 omega_irr(u64 s, u64 l);

// p prime, c cube-free, d square-free, c and d odd and coprime, p not
// dividing cd; l, m, s are the derived gcds.
struct Thm13Input {
  u64 p = 0, c = 1, d = 1;
  u64 l = 1, m = 1, s = 1;
};
Thm13Input make_thm13_input(u64 p, u64 c, u64 d);

// Solvable cube-free counts of split type: over N = Z_p x Z_p the sum of
// reducible class counts N_red(H(t)) for t | lm plus omega_irr(s, l); over
// N = Z_{p^alpha} simply tau(l).
u64 split_count_p2(u64 p, u64 c, u64 d);
u64 split_count_cyclic(u64 p, unsigned alpha, u64 c, u64 d);

// Product lower bound: ab^2 splits into Sylow pieces of Z_{ab} x Z_b (each
// Z_p, Z_{p^2} or Z_p x Z_p); multiplies the matching split counts. The four
// arguments are mutually coprime and odd, b and d square-free, a and c
// cube-free.
u64 lower_bound_product(u64 a, u64 b, u64 c, u64 d);

}  // namespace cubefree::formulas
