#pragma once
// Explicit small groups as multiplication tables, plus the machinery built on
// them: abelian groups by invariant factors, automorphism groups realized as
// permutation groups, semidirect products, isomorphism testing and complete
// subgroup enumeration inside solvable ambients.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace cubefree::sg {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline constexpr u32 kOrderCap = 5000;

// Abelian group by invariant factors n1 >= n2 >= ..., with n_{i+1} | n_i and
// every factor >= 2. The empty list is the trivial group. Element indices are
// mixed-radix tuples: index = x1 + n1*(x2 + n2*(x3 + ...)).
struct AbelianSpec {
  std::vector<u64> factors;
  u64 order() const;
  bool operator==(const AbelianSpec&) const = default;
};
AbelianSpec make_abelian_spec(std::vector<u64> factors);

struct GroupTable {
  u32 n = 1;
  u16 id = 0;
  std::vector<u16> tab;   // n*n, row-major: tab[a*n+b] = a*b
  std::vector<u16> inv;   // inverses
  std::vector<u32> eord;  // element orders
  u16 mul(u16 a, u16 b) const { return tab[size_t(a) * n + b]; }
};

// Builds a table from an arbitrary multiplication callback on 0..n-1 and
// derives identity, inverses and element orders. Rejects n > cap and callbacks
// that do not describe a group (no identity / missing inverses).
GroupTable table_from_mul(u32 n, const std::function<u32(u32, u32)>& mul, u32 cap = kOrderCap);

GroupTable abelian_group(const AbelianSpec& spec, u32 cap = kOrderCap);
GroupTable cyclic_group(u64 n, u32 cap = kOrderCap);
GroupTable direct_product(const GroupTable& a, const GroupTable& b, u32 cap = kOrderCap);

// Identity, inverse and associativity checks. Associativity is exhaustive for
// order < 512 and sampled (10 * order^2 fixed-seed triples) above.
bool verify_table(const GroupTable& g);

bool is_abelian(const GroupTable& g);
std::vector<u32> element_order_multiset(const GroupTable& g);  // sorted ascending
std::vector<u16> closure(const GroupTable& g, std::vector<u16> seed);
bool subset_is_abelian(const GroupTable& g, const std::vector<u16>& elems);
bool is_solvable(const GroupTable& g);

using Perm = std::vector<u16>;

// Automorphism group of an abelian group, realized as permutations of its
// element indices. Supported shapes: every Sylow subgroup cyclic or Z_p x Z_p
// (equivalently, groups Z_{p^a} and Z_p x Z_p and coprime direct products).
struct AutGroup {
  AbelianSpec base;
  std::vector<Perm> els;  // els[0] is the identity
  std::vector<u32> ord;   // element orders
  std::vector<u32> gens;  // indices of a generating set
  u32 size() const { return static_cast<u32>(els.size()); }
  u32 compose(u32 a, u32 b) const;  // index of els[a] applied after els[b]
  u32 inverse(u32 a) const;
  u32 power(u32 a, u64 e) const;
  u32 lookup(const Perm& p) const;  // rejects permutations outside the group

 private:
  std::unordered_map<u64, std::vector<u32>> index_;
  friend AutGroup automorphism_group(const AbelianSpec&);
};

AutGroup automorphism_group(const AbelianSpec& spec);

// theta : Q -> Aut(N), recorded by the images of Q's invariant-factor
// generators. Valid when image orders divide the factor orders and the images
// commute pairwise.
struct Homomorphism {
  AbelianSpec source;
  const AutGroup* target = nullptr;
  std::vector<u32> images;  // indices into target->els, one per factor of source
};
void validate_homomorphism(const Homomorphism& h);

// N x| Q for coprime |N|, |Q|. Element index = n + |N| * q.
GroupTable semidirect_product(const AbelianSpec& N, const AbelianSpec& Q,
                              const Homomorphism& theta, u32 cap = kOrderCap);

// Isomorphism test: order-profile invariants, an abelian fast path, and a
// generator-image backtracking search with incremental consistency checking.
// IsoTester caches the generator analysis of its left-hand group so one
// representative can be tested against many candidates cheaply.
class IsoTester {
 public:
  explicit IsoTester(const GroupTable& a);
  bool test(const GroupTable& b) const;

 private:
  const GroupTable* a_;
  bool abelian_;
  std::vector<u32> ordMultiset_;
  std::vector<std::pair<u32, u32>> profile_;  // sorted (order, class size) pairs
  u64 centerSize_ = 0, derivedSize_ = 0;
  std::vector<u16> gens_;                  // generator sequence
  std::vector<std::pair<u32, u32>> genKey_;  // (order, class size) per generator
  std::vector<u32> levelSize_;             // |<g1..gi>|
  // BFS replay script per level: (element, parent, generator index) edges plus
  // full edge-consistency checks, precomputed once on the left group.
  struct Step {
    u16 elem;
    u16 src;
    u16 gen;
    bool discovers;
  };
  std::vector<std::vector<Step>> script_;
  bool backtrack(const GroupTable& b, const std::vector<std::vector<u16>>& buckets) const;
};

bool are_isomorphic(const GroupTable& a, const GroupTable& b);

// Every subgroup of a solvable group arises from the trivial group by repeated
// prime-index cyclic extension inside its normalizer, which is what this
// enumerates. `keep` selects which subgroup orders are reported, `grow` which
// orders may be passed through while extending. Rejects non-solvable ambients.
std::vector<std::vector<u16>> solvable_subgroups(const GroupTable& g,
                                                 const std::function<bool(u64)>& keep,
                                                 const std::function<bool(u64)>& grow);

// All subgroups of order k, as sorted element-index lists. Rejects k not
// dividing |G| and non-solvable ambients.
std::vector<std::vector<u16>> subgroups_of_order(const GroupTable& g, u64 k);

}  // namespace cubefree::sg
