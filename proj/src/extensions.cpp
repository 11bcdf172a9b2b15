#include "cubefree/extensions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace cubefree::ext {

namespace {

// (e_1, ..., e_k) mixed-radix coordinates of a Q element index
std::vector<u64> coords_of(const sg::AbelianSpec& spec, u64 idx) {
  std::vector<u64> e;
  for (u64 f : spec.factors) {
    e.push_back(idx % f);
    idx /= f;
  }
  return e;
}

u64 generator_index(const sg::AbelianSpec& spec, size_t j) {
  u64 idx = 1;
  for (size_t i = 0; i < j; ++i) idx *= spec.factors[i];
  return idx;
}

}  // namespace

HomSet enumerate_homs(const sg::AbelianSpec& N, const sg::AbelianSpec& Q, u32 cap) {
  if (std::gcd(N.order(), Q.order()) != 1)
    throw std::invalid_argument("enumerate_homs: |N| and |Q| must be coprime");
  if (N.order() * Q.order() > cap)
    throw std::invalid_argument("enumerate_homs: |N| * |Q| exceeds cap");
  HomSet hs;
  hs.N = N;
  hs.Q = Q;
  hs.autN = std::make_shared<sg::AutGroup>(sg::automorphism_group(N));
  const sg::AutGroup& A = *hs.autN;

  // per factor: candidates are elements whose order divides the factor
  std::vector<std::vector<u32>> cand(Q.factors.size());
  for (size_t j = 0; j < Q.factors.size(); ++j)
    for (u32 a = 0; a < A.size(); ++a)
      if (Q.factors[j] % A.ord[a] == 0) cand[j].push_back(a);

  std::vector<u32> cur(Q.factors.size(), 0);
  auto rec = [&](auto&& self, size_t j) -> void {
    if (j == Q.factors.size()) {
      hs.homs.push_back(cur);
      return;
    }
    for (u32 a : cand[j]) {
      bool ok = true;
      for (size_t i = 0; i < j && ok; ++i)
        ok = A.compose(cur[i], a) == A.compose(a, cur[i]);
      if (!ok) continue;
      cur[j] = a;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return hs;
}

std::vector<u32> act(const HomSet& hs, const sg::AutGroup& autQ, u32 kappa, u32 lambda,
                     const std::vector<u32>& hom) {
  if (hom.size() != hs.Q.factors.size()) throw std::invalid_argument("act: hom arity");
  if (!(autQ.base == hs.Q)) throw std::invalid_argument("act: Aut(Q) mismatch");
  const sg::AutGroup& A = *hs.autN;
  u32 kinv = A.inverse(kappa);
  u32 linv = autQ.inverse(lambda);
  std::vector<u32> out(hom.size());
  for (size_t j = 0; j < hom.size(); ++j) {
    u64 pre = autQ.els[linv][generator_index(hs.Q, j)];
    std::vector<u64> e = coords_of(hs.Q, pre);
    u32 img = 0;  // identity
    for (size_t i = 0; i < hom.size(); ++i)
      if (e[i]) img = A.compose(img, A.power(hom[i], e[i]));
    out[j] = A.compose(kappa, A.compose(img, kinv));
  }
  return out;
}

u64 orbit_count(const HomSet& hs) {
  const sg::AutGroup& A = *hs.autN;
  sg::AutGroup autQ = sg::automorphism_group(hs.Q);
  std::map<std::vector<u32>, size_t> index;
  for (size_t i = 0; i < hs.homs.size(); ++i) index[hs.homs[i]] = i;

  std::vector<size_t> parent(hs.homs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](size_t x, size_t y) { parent[find(x)] = find(y); };

  for (size_t i = 0; i < hs.homs.size(); ++i) {
    for (u32 kg : A.gens) unite(i, index.at(act(hs, autQ, kg, 0, hs.homs[i])));
    for (u32 lg : autQ.gens) unite(i, index.at(act(hs, autQ, 0, lg, hs.homs[i])));
  }
  u64 count = 0;
  for (size_t i = 0; i < parent.size(); ++i)
    if (find(i) == i) ++count;
  return count;
}

namespace {

struct ImageData {
  std::vector<u32> els;  // sorted autN indices of theta(Q)
  std::unordered_set<u32> memb;
  // conjugation-invariant fingerprint: sorted (order, fixed points) per member
  std::vector<std::pair<u32, u32>> finger;
};

ImageData make_image(const sg::AutGroup& A, const std::vector<u32>& hom) {
  std::vector<u32> els{0};
  std::unordered_set<u32> seen{0};
  for (u32 g : hom)
    if (seen.insert(g).second) els.push_back(g);
  for (size_t i = 0; i < els.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      u32 x = A.compose(els[i], els[j]);
      if (seen.insert(x).second) els.push_back(x);
    }
  std::sort(els.begin(), els.end());
  ImageData d;
  d.els = std::move(els);
  d.memb = std::move(seen);
  for (u32 g : d.els) {
    u32 fix = 0;
    const sg::Perm& p = A.els[g];
    for (size_t x = 0; x < p.size(); ++x)
      if (p[x] == x) ++fix;
    d.finger.push_back({A.ord[g], fix});
  }
  std::sort(d.finger.begin(), d.finger.end());
  return d;
}

bool images_conjugate(const sg::AutGroup& A, const ImageData& x, const ImageData& y) {
  if (x.els.size() != y.els.size() || x.finger != y.finger) return false;
  u32 a0 = x.els.back();  // a large-order member as prefilter
  for (u32 g : x.els)
    if (A.ord[g] > A.ord[a0]) a0 = g;
  for (u32 k = 0; k < A.size(); ++k) {
    u32 ki = A.inverse(k);
    if (!y.memb.count(A.compose(k, A.compose(a0, ki)))) continue;
    bool ok = true;
    for (u32 g : x.els)
      if (!y.memb.count(A.compose(k, A.compose(g, ki)))) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace

u64 image_conjugacy_count(const HomSet& hs) {
  const sg::AutGroup& A = *hs.autN;
  std::map<std::vector<u32>, char> seen;
  std::vector<ImageData> images;
  for (const auto& hom : hs.homs) {
    ImageData d = make_image(A, hom);
    if (seen.try_emplace(d.els, 1).second) images.push_back(std::move(d));
  }
  std::vector<size_t> reps;
  for (size_t i = 0; i < images.size(); ++i) {
    bool matched = false;
    for (size_t r : reps)
      if (images_conjugate(A, images[i], images[r])) {
        matched = true;
        break;
      }
    if (!matched) reps.push_back(i);
  }
  return reps.size();
}

u64 iso_class_count_direct(const sg::AbelianSpec& N, const sg::AbelianSpec& Q, u32 cap) {
  HomSet hs = enumerate_homs(N, Q, cap);
  std::deque<sg::GroupTable> repTables;
  std::deque<sg::IsoTester> testers;
  for (const auto& hom : hs.homs) {
    sg::Homomorphism theta{hs.Q, hs.autN.get(), hom};
    sg::GroupTable g = sg::semidirect_product(hs.N, hs.Q, theta, cap);
    bool matched = false;
    for (const auto& t : testers)
      if (t.test(g)) {
        matched = true;
        break;
      }
    if (!matched) {
      repTables.push_back(std::move(g));
      testers.emplace_back(repTables.back());
    }
  }
  return testers.size();
}

}  // namespace cubefree::ext
