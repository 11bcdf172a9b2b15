#pragma once
// Split extensions N x| Q for coprime abelian N and Q: enumerating the
// actions theta : Q -> Aut(N), the (kappa, lambda) equivalence moves, image
// subgroups up to Aut(N)-conjugacy, and isomorphism classes of the resulting
// semidirect products.

#include <cstdint>
#include <memory>
#include <vector>

#include "cubefree/smallgroup.hpp"

namespace cubefree::ext {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Hom(Q, Aut(N)), each homomorphism recorded by the images of Q's
// invariant-factor generators (indices into autN).
struct HomSet {
  sg::AbelianSpec N, Q;
  std::shared_ptr<sg::AutGroup> autN;
  std::vector<std::vector<u32>> homs;
};

// Requires gcd(|N|, |Q|) = 1, both nontrivial orders allowed, and
// |N| * |Q| <= cap so every semidirect product stays buildable. Homs are
// emitted in lexicographic image order, the trivial one first.
HomSet enumerate_homs(const sg::AbelianSpec& N, const sg::AbelianSpec& Q,
                      u32 cap = sg::kOrderCap);

// The move theta |-> theta' with theta'(x) = kappa theta(lambda^-1(x)) kappa^-1,
// returned as generator images. kappa indexes hs.autN, lambda indexes autQ.
std::vector<u32> act(const HomSet& hs, const sg::AutGroup& autQ, u32 kappa, u32 lambda,
                     const std::vector<u32>& hom);

// Orbits of Hom(Q, Aut(N)) under all (kappa, lambda) moves.
u64 orbit_count(const HomSet& hs);

// Aut(N)-conjugacy classes of the image subgroups theta(Q) <= Aut(N).
u64 image_conjugacy_count(const HomSet& hs);

// Isomorphism classes among the groups N x|_theta Q.
u64 iso_class_count_direct(const sg::AbelianSpec& N, const sg::AbelianSpec& Q,
                           u32 cap = sg::kOrderCap);

}  // namespace cubefree::ext
