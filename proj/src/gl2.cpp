#include "cubefree/gl2.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "cubefree/numthy.hpp"
#include "cubefree/smallgroup.hpp"

namespace cubefree::gl2 {

u64 mat_key(const Mat2& m, u64 q) {
  return ((m.e[0] * q + m.e[1]) * q + m.e[2]) * q + m.e[3];
}

Mat2 mat_identity() { return Mat2{{1, 0, 0, 1}}; }

Mat2 mat_mul(const ff::FieldSpec& F, const Mat2& a, const Mat2& b) {
  Mat2 r;
  r.e[0] = static_cast<u32>(F.add(F.mul(a.e[0], b.e[0]), F.mul(a.e[1], b.e[2])));
  r.e[1] = static_cast<u32>(F.add(F.mul(a.e[0], b.e[1]), F.mul(a.e[1], b.e[3])));
  r.e[2] = static_cast<u32>(F.add(F.mul(a.e[2], b.e[0]), F.mul(a.e[3], b.e[2])));
  r.e[3] = static_cast<u32>(F.add(F.mul(a.e[2], b.e[1]), F.mul(a.e[3], b.e[3])));
  return r;
}

u64 mat_det(const ff::FieldSpec& F, const Mat2& m) {
  return F.sub(F.mul(m.e[0], m.e[3]), F.mul(m.e[1], m.e[2]));
}

u64 mat_trace(const ff::FieldSpec& F, const Mat2& m) { return F.add(m.e[0], m.e[3]); }

Mat2 mat_inv(const ff::FieldSpec& F, const Mat2& m) {
  u64 di = F.inv(mat_det(F, m));
  Mat2 r;
  r.e[0] = static_cast<u32>(F.mul(m.e[3], di));
  r.e[1] = static_cast<u32>(F.mul(F.neg(m.e[1]), di));
  r.e[2] = static_cast<u32>(F.mul(F.neg(m.e[2]), di));
  r.e[3] = static_cast<u32>(F.mul(m.e[0], di));
  return r;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::abelian_odd: return "abelian_odd";
    case Kind::abelian_even: return "abelian_even";
    case Kind::nonabelian: return "nonabelian";
    case Kind::odd_all: return "odd_all";
    case Kind::all: return "all";
  }
  return "?";
}

std::optional<Kind> kind_from_name(const std::string& s) {
  for (Kind k : {Kind::abelian_odd, Kind::abelian_even, Kind::nonabelian, Kind::odd_all,
                 Kind::all})
    if (s == kind_name(k)) return k;
  return std::nullopt;
}

namespace {

ff::FieldSpec field_for_q(u64 q) {
  auto f = numthy::factorize(q);
  if (f.pe.size() != 1) throw std::invalid_argument("q must be a prime power");
  return ff::make_field(static_cast<ff::u32>(f.pe[0].first), f.pe[0].second);
}

std::vector<Mat2> sorted_by_key(std::vector<Mat2> v, u64 q) {
  std::sort(v.begin(), v.end(),
            [q](const Mat2& a, const Mat2& b) { return mat_key(a, q) < mat_key(b, q); });
  return v;
}

// Closure of a matrix set under products. abortAbove > 0 caps the size; an
// empty result signals the cap was crossed.
std::vector<Mat2> mat_closure(const ff::FieldSpec& F, const std::vector<Mat2>& gens,
                              u64 abortAbove = 0) {
  std::unordered_map<u64, char> seen;
  std::vector<Mat2> list{mat_identity()};
  seen[mat_key(list[0], F.q)] = 1;
  auto push = [&](const Mat2& m) -> bool {
    u64 k = mat_key(m, F.q);
    auto [it, fresh] = seen.try_emplace(k, 1);
    if (fresh) list.push_back(m);
    return !abortAbove || list.size() <= abortAbove;
  };
  for (const Mat2& g : gens)
    if (!push(g)) return {};
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      if (!push(mat_mul(F, list[i], list[j]))) return {};
      if (!push(mat_mul(F, list[j], list[i]))) return {};
    }
  return sorted_by_key(std::move(list), F.q);
}

// ---- GL(2,q) context: full element list with orders and inverses ----

struct Ctx {
  ff::FieldSpec F;
  u64 q = 0, p = 0;
  std::vector<Mat2> els;
  std::vector<int> pos;  // mat_key -> index, -1 for singular
  std::vector<u32> ord;
  std::vector<u32> invIdx;
  u64 maxCfOrder = 1;  // largest cube-free p'-divisor of |GL(2,q)|

  u32 idx(const Mat2& m) const {
    int i = pos[mat_key(m, q)];
    if (i < 0) throw std::invalid_argument("matrix not in GL(2,q)");
    return static_cast<u32>(i);
  }
  u32 mul(u32 a, u32 b) const { return idx(mat_mul(F, els[a], els[b])); }
  u32 conj(u32 g, u32 x) const {  // g x g^-1
    return idx(mat_mul(F, mat_mul(F, els[g], els[x]), els[invIdx[g]]));
  }
};

const Ctx& get_ctx(u64 q) {
  static std::map<u64, std::unique_ptr<Ctx>> cache;
  auto it = cache.find(q);
  if (it != cache.end()) return *it->second;
  if (q > 25) throw std::invalid_argument("GL(2,q) context capped at q <= 25");
  auto c = std::make_unique<Ctx>();
  c->F = field_for_q(q);
  c->q = q;
  c->p = c->F.p;
  c->pos.assign(q * q * q * q, -1);
  for (u32 a = 0; a < q; ++a)
    for (u32 b = 0; b < q; ++b)
      for (u32 cc = 0; cc < q; ++cc)
        for (u32 d = 0; d < q; ++d) {
          Mat2 m{{a, b, cc, d}};
          if (mat_det(c->F, m) == 0) continue;
          c->pos[mat_key(m, q)] = static_cast<int>(c->els.size());
          c->els.push_back(m);
        }
  u64 glOrder = (q * q - 1) * (q * q - q);
  if (c->els.size() != glOrder) throw std::logic_error("GL(2,q) element count mismatch");
  c->ord.resize(c->els.size());
  c->invIdx.resize(c->els.size());
  Mat2 id = mat_identity();
  u64 idKey = mat_key(id, q);
  for (size_t i = 0; i < c->els.size(); ++i) {
    Mat2 x = c->els[i];
    u32 o = 1;
    while (mat_key(x, q) != idKey) {
      x = mat_mul(c->F, x, c->els[i]);
      ++o;
    }
    c->ord[i] = o;
    c->invIdx[i] = c->idx(mat_inv(c->F, c->els[i]));
  }
  c->maxCfOrder = 1;
  for (auto [r, e] : numthy::factorize(glOrder).pe)
    if (r != c->p) c->maxCfOrder *= numthy::ipow(r, std::min(e, 2u));
  return *(cache[q] = std::move(c));
}

// ---- subgroups as index sets with conjugacy invariants ----

struct SubData {
  std::vector<u32> idx;   // sorted ctx indices
  std::vector<char> memb;
  u64 order = 1;
  bool abelian = true;
  bool odd = true;
  std::vector<u32> ordMul, trMul, detMul;  // sorted multisets
  u64 invHash = 0;
};

u64 hash_mix(u64 h, u64 v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

SubData make_subdata(const Ctx& c, std::vector<u32> idxs) {
  SubData s;
  std::sort(idxs.begin(), idxs.end());
  s.idx = std::move(idxs);
  s.order = s.idx.size();
  s.odd = s.order % 2 == 1;
  s.memb.assign(c.els.size(), 0);
  for (u32 i : s.idx) s.memb[i] = 1;
  for (u32 i : s.idx) {
    s.ordMul.push_back(c.ord[i]);
    s.trMul.push_back(static_cast<u32>(mat_trace(c.F, c.els[i])));
    s.detMul.push_back(static_cast<u32>(mat_det(c.F, c.els[i])));
  }
  std::sort(s.ordMul.begin(), s.ordMul.end());
  std::sort(s.trMul.begin(), s.trMul.end());
  std::sort(s.detMul.begin(), s.detMul.end());
  s.abelian = true;
  for (size_t i = 0; i < s.idx.size() && s.abelian; ++i)
    for (size_t j = i + 1; j < s.idx.size(); ++j)
      if (c.mul(s.idx[i], s.idx[j]) != c.mul(s.idx[j], s.idx[i])) {
        s.abelian = false;
        break;
      }
  u64 h = hash_mix(1, s.order);
  for (u32 v : s.ordMul) h = hash_mix(h, v);
  for (u32 v : s.trMul) h = hash_mix(h, v + 1000003);
  for (u32 v : s.detMul) h = hash_mix(h, v + 2000003);
  s.invHash = h;
  return s;
}

bool same_invariants(const SubData& a, const SubData& b) {
  return a.order == b.order && a.invHash == b.invHash && a.ordMul == b.ordMul &&
         a.trMul == b.trMul && a.detMul == b.detMul;
}

// g with g A g^-1 = B, or none. Assumes same_invariants already held by caller
// when used as a partition step; recheck is cheap so do it anyway.
std::optional<u32> conj_element(const Ctx& c, const SubData& A, const SubData& B) {
  if (!same_invariants(A, B)) return std::nullopt;
  if (A.order == 1) return c.idx(mat_identity());
  u32 a0 = A.idx[0];
  for (u32 i : A.idx)
    if (c.ord[i] > c.ord[a0]) a0 = i;
  for (u32 g = 0; g < c.els.size(); ++g) {
    if (!B.memb[c.conj(g, a0)]) continue;
    bool ok = true;
    for (u32 a : A.idx)
      if (!B.memb[c.conj(g, a)]) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return std::nullopt;
}

// GroupTable of an index-set subgroup, with the local->ctx mapping.
sg::GroupTable subgroup_table(const Ctx& c, const std::vector<u32>& idxs) {
  std::unordered_map<u32, u32> toLocal;
  for (size_t i = 0; i < idxs.size(); ++i) toLocal[idxs[i]] = static_cast<u32>(i);
  return sg::table_from_mul(static_cast<u32>(idxs.size()), [&](u32 a, u32 b) {
    return toLocal.at(c.mul(idxs[a], idxs[b]));
  });
}

// ---- the candidate pool ----
//
// Every solvable cube-free p'-subgroup of GL(2,q) is conjugate to a subgroup
// of M(2,q) or of N(2,q): reducible ones diagonalize into D(2,q) <= M(2,q)
// (complete reducibility for p'-order), imprimitive ones are monomial by
// definition, and solvable primitive ones normalize a Singer cycle. The
// exceptional primitive solvable subgroups (those inducing A_4 or S_4 on
// lines) contain a quaternion or dihedral group of order 8 and are never
// cube-free. So enumerating all cube-free subgroups of M(2,q) and N(2,q)
// covers every conjugacy class, and it stays closed under passing to
// conjugate subgroups that still lie in M or N.
struct Pool {
  std::vector<SubData> subs;
};

std::vector<Mat2> monomial_elements(const ff::FieldSpec& F);
std::vector<Mat2> singer_normalizer_elements(const ff::FieldSpec& F);

const Pool& get_pool(u64 q) {
  static std::map<u64, std::unique_ptr<Pool>> cache;
  auto it = cache.find(q);
  if (it != cache.end()) return *it->second;
  const Ctx& c = get_ctx(q);
  auto pool = std::make_unique<Pool>();
  std::unordered_map<u64, std::vector<size_t>> dedup;
  auto addAmbient = [&](const std::vector<Mat2>& mats) {
    std::vector<u32> ambient;
    ambient.reserve(mats.size());
    for (const Mat2& m : mats) ambient.push_back(c.idx(m));
    std::sort(ambient.begin(), ambient.end());
    sg::GroupTable t = subgroup_table(c, ambient);
    // cube-free and p' are both divisor-closed, so restricting growth keeps
    // the enumeration complete for the kept subgroups
    auto keep = [&](u64 o) { return numthy::is_cubefree(o) && o % c.p != 0; };
    for (const auto& sub : sg::solvable_subgroups(t, keep, keep)) {
      std::vector<u32> idxs;
      idxs.reserve(sub.size());
      for (sg::u16 loc : sub) idxs.push_back(ambient[loc]);
      std::sort(idxs.begin(), idxs.end());
      u64 h = 1469598103934665603ull;
      for (u32 v : idxs) h = hash_mix(h, v);
      auto& bucket = dedup[h];
      bool dup = false;
      for (size_t si : bucket)
        if (pool->subs[si].idx == idxs) {
          dup = true;
          break;
        }
      if (dup) continue;
      bucket.push_back(pool->subs.size());
      pool->subs.push_back(make_subdata(c, std::move(idxs)));
    }
  };
  addAmbient(monomial_elements(c.F));
  addAmbient(singer_normalizer_elements(c.F));
  return *(cache[q] = std::move(pool));
}

bool kind_accepts(Kind k, const SubData& s) {
  switch (k) {
    case Kind::abelian_odd: return s.abelian && s.odd;
    case Kind::abelian_even: return s.abelian && !s.odd;
    case Kind::nonabelian: return !s.abelian;
    case Kind::odd_all: return s.odd;
    case Kind::all: return true;
  }
  return false;
}

bool contains(const SubData& big, const SubData& small) {
  for (u32 i : small.idx)
    if (!big.memb[i]) return false;
  return true;
}

// Solvability of an index-set subgroup by derived series.
bool idx_solvable(const Ctx& c, std::vector<u32> cur) {
  while (cur.size() > 1) {
    std::unordered_map<u64, char> seen;
    std::vector<u32> comms;
    for (u32 a : cur)
      for (u32 b : cur) {
        u32 x = c.mul(c.mul(c.invIdx[a], c.invIdx[b]), c.mul(a, b));
        if (seen.try_emplace(x, 1).second) comms.push_back(x);
      }
    // close under products
    for (size_t i = 0; i < comms.size(); ++i)
      for (size_t j = 0; j <= i; ++j) {
        u32 x = c.mul(comms[i], comms[j]);
        if (seen.try_emplace(x, 1).second) comms.push_back(x);
        x = c.mul(comms[j], comms[i]);
        if (seen.try_emplace(x, 1).second) comms.push_back(x);
      }
    if (comms.size() == cur.size()) return false;
    cur = std::move(comms);
  }
  return true;
}

}  // namespace

// ---- named subgroups ----

namespace {

std::vector<Mat2> diagonal_elements(const ff::FieldSpec& F) {
  std::vector<Mat2> v;
  for (u32 a = 1; a < F.q; ++a)
    for (u32 b = 1; b < F.q; ++b) v.push_back(Mat2{{a, 0, 0, b}});
  return v;
}

std::vector<Mat2> monomial_elements(const ff::FieldSpec& F) {
  std::vector<Mat2> v = diagonal_elements(F);
  for (u32 a = 1; a < F.q; ++a)
    for (u32 b = 1; b < F.q; ++b) v.push_back(Mat2{{0, a, b, 0}});
  return v;
}

// Quadratic extension F_{q^2} = F_q[x]/(x^2 + g1 x + g0) with the first
// irreducible modulus in the g0 + q*g1 encoding. Elements are (a, b) = a + bx.
struct QuadExt {
  const ff::FieldSpec* F;
  u64 g0 = 0, g1 = 0;

  QuadExt(const ff::FieldSpec& base) : F(&base) {
    for (u64 code = 0;; ++code) {
      if (code >= base.q * base.q) throw std::logic_error("no irreducible quadratic");
      u64 c0 = code % base.q, c1 = code / base.q;
      bool hasRoot = false;
      for (u64 t = 0; t < base.q && !hasRoot; ++t)
        hasRoot = base.add(base.add(base.mul(t, t), base.mul(c1, t)), c0) == 0;
      if (!hasRoot) {
        g0 = c0;
        g1 = c1;
        break;
      }
    }
  }
  std::pair<u64, u64> mul(std::pair<u64, u64> u, std::pair<u64, u64> v) const {
    u64 ac = F->mul(u.first, v.first);
    u64 bd = F->mul(u.second, v.second);
    u64 cross = F->add(F->mul(u.first, v.second), F->mul(u.second, v.first));
    return {F->sub(ac, F->mul(bd, g0)), F->sub(cross, F->mul(bd, g1))};
  }
  std::pair<u64, u64> pow(std::pair<u64, u64> u, u64 e) const {
    std::pair<u64, u64> r{1, 0};
    while (e) {
      if (e & 1) r = mul(r, u);
      u = mul(u, u);
      e >>= 1;
    }
    return r;
  }
  u64 order(std::pair<u64, u64> u) const {
    u64 n = F->q * F->q - 1;
    for (auto [r, e] : numthy::factorize(n).pe)
      for (unsigned i = 0; i < e; ++i) {
        if (pow(u, n / r) == std::pair<u64, u64>{1, 0})
          n /= r;
        else
          break;
      }
    return n;
  }
  // multiplication-by-(a+bx) matrix on the basis {1, x}
  Mat2 mult_matrix(std::pair<u64, u64> u) const {
    Mat2 m;
    m.e[0] = static_cast<u32>(u.first);
    m.e[2] = static_cast<u32>(u.second);
    m.e[1] = static_cast<u32>(F->neg(F->mul(u.second, g0)));
    m.e[3] = static_cast<u32>(F->sub(u.first, F->mul(u.second, g1)));
    return m;
  }
};

std::vector<Mat2> singer_elements(const ff::FieldSpec& F) {
  QuadExt E(F);
  u64 full = F.q * F.q - 1;
  std::pair<u64, u64> gamma{0, 0};
  bool found = false;
  for (u64 code = 1; code < F.q * F.q && !found; ++code) {
    std::pair<u64, u64> u{code % F.q, code / F.q};
    if (E.order(u) == full) {
      gamma = u;
      found = true;
    }
  }
  if (!found) throw std::logic_error("no primitive element in F_{q^2}");
  std::vector<Mat2> v;
  std::pair<u64, u64> cur{1, 0};
  for (u64 i = 0; i < full; ++i) {
    v.push_back(E.mult_matrix(cur));
    cur = E.mul(cur, gamma);
  }
  return v;
}

std::vector<Mat2> singer_normalizer_elements(const ff::FieldSpec& F) {
  QuadExt E(F);
  std::vector<Mat2> s = singer_elements(F);
  auto frob = E.pow({0, 1}, F.q);  // x^q
  Mat2 fm;
  fm.e[0] = 1;
  fm.e[2] = 0;
  fm.e[1] = static_cast<u32>(frob.first);
  fm.e[3] = static_cast<u32>(frob.second);
  std::vector<Mat2> v = s;
  for (const Mat2& m : s) v.push_back(mat_mul(F, fm, m));
  if (v.size() != 2 * s.size()) throw std::logic_error("singer normalizer size");
  return v;
}

}  // namespace

Subgroup diagonal_subgroup(u64 q) {
  ff::FieldSpec F = field_for_q(q);
  return Subgroup{F, sorted_by_key(diagonal_elements(F), q)};
}

Subgroup monomial_subgroup(u64 q) {
  ff::FieldSpec F = field_for_q(q);
  return Subgroup{F, sorted_by_key(monomial_elements(F), q)};
}

Subgroup singer_cycle(u64 q) {
  ff::FieldSpec F = field_for_q(q);
  return Subgroup{F, sorted_by_key(singer_elements(F), q)};
}

Subgroup singer_normalizer(u64 q) {
  ff::FieldSpec F = field_for_q(q);
  auto els = sorted_by_key(singer_normalizer_elements(F), q);
  // honesty check: every member normalizes the cycle
  auto s = singer_elements(F);
  std::unordered_map<u64, char> inS;
  for (const Mat2& m : s) inS[mat_key(m, q)] = 1;
  for (const Mat2& g : els) {
    Mat2 gi = mat_inv(F, g);
    for (const Mat2& m : s)
      if (!inS.count(mat_key(mat_mul(F, mat_mul(F, g, m), gi), q)))
        throw std::logic_error("singer normalizer: element fails to normalize");
  }
  return Subgroup{F, std::move(els)};
}

namespace {

// lines of F_q^2: id t < q is the line through (1, t); id q is (0, 1)
u64 line_apply(const ff::FieldSpec& F, const Mat2& m, u64 line) {
  u64 x = line < F.q ? 1 : 0;
  u64 y = line < F.q ? line : 1;
  u64 nx = F.add(F.mul(m.e[0], x), F.mul(m.e[1], y));
  u64 ny = F.add(F.mul(m.e[2], x), F.mul(m.e[3], y));
  if (nx == 0) return F.q;
  return F.mul(ny, F.inv(nx));
}

}  // namespace

bool is_reducible(const Subgroup& h) {
  const ff::FieldSpec& F = h.F;
  for (u64 line = 0; line <= F.q; ++line) {
    bool fixed = true;
    for (const Mat2& m : h.els)
      if (line_apply(F, m, line) != line) {
        fixed = false;
        break;
      }
    if (fixed) return true;
  }
  return false;
}

bool is_imprimitive(const Subgroup& h) {
  if (is_reducible(h)) return false;
  const ff::FieldSpec& F = h.F;
  for (u64 l1 = 0; l1 <= F.q; ++l1)
    for (u64 l2 = l1 + 1; l2 <= F.q; ++l2) {
      bool stable = true;
      for (const Mat2& m : h.els) {
        u64 a = line_apply(F, m, l1), b = line_apply(F, m, l2);
        if (!((a == l1 && b == l2) || (a == l2 && b == l1))) {
          stable = false;
          break;
        }
      }
      if (stable) return true;
    }
  return false;
}

std::optional<Mat2> are_conjugate(const Subgroup& h, const Subgroup& k) {
  if (!(h.F == k.F)) throw std::invalid_argument("are_conjugate: different fields");
  if (h.els.size() != k.els.size())
    throw std::invalid_argument("are_conjugate: orders differ");
  const Ctx& c = get_ctx(h.F.q);
  std::vector<u32> hi, ki;
  for (const Mat2& m : h.els) hi.push_back(c.idx(m));
  for (const Mat2& m : k.els) ki.push_back(c.idx(m));
  SubData A = make_subdata(c, std::move(hi));
  SubData B = make_subdata(c, std::move(ki));
  auto g = conj_element(c, A, B);
  if (!g) return std::nullopt;
  return c.els[*g];
}

u64 count_reducible_classes(u64 q, u64 u, u64 v) {
  if (u == 0 || v == 0 || u % v || (q - 1) % u)
    throw std::invalid_argument("count_reducible_classes: need v | u | q-1");
  const Ctx& c = get_ctx(q);
  std::vector<u32> ambient;
  for (const Mat2& m : diagonal_elements(c.F)) ambient.push_back(c.idx(m));
  std::sort(ambient.begin(), ambient.end());
  sg::GroupTable t = subgroup_table(c, ambient);
  u64 target = u * v;
  auto subs = sg::solvable_subgroups(
      t, [&](u64 o) { return o == target; }, [&](u64 o) { return target % o == 0; });
  // keep those of isomorphism type Z_u x Z_v: inside Z_{q-1}^2 every subgroup
  // has rank <= 2, so (order, exponent) pins the type
  std::vector<SubData> typed;
  for (const auto& sub : subs) {
    u32 expo = 1;
    for (sg::u16 loc : sub) expo = std::lcm(expo, t.eord[loc]);
    if (expo != u) continue;
    std::vector<u32> idxs;
    for (sg::u16 loc : sub) idxs.push_back(ambient[loc]);
    typed.push_back(make_subdata(c, std::move(idxs)));
  }
  std::vector<size_t> reps;
  for (size_t i = 0; i < typed.size(); ++i) {
    bool matched = false;
    for (size_t r : reps)
      if (conj_element(c, typed[i], typed[r])) {
        matched = true;
        break;
      }
    if (!matched) reps.push_back(i);
  }
  return reps.size();
}

u64 count_irreducible_cyclic_classes(u64 q, u64 t) {
  if (t == 0 || std::gcd(t, q) != 1)
    throw std::invalid_argument("count_irreducible_cyclic_classes: need gcd(t, q) = 1");
  // order-t subgroups of GL(2,q) with t | q^2-1, t coprime to q, are cyclic
  // inside a Singer cycle (unique up to conjugacy); irreducible exactly when
  // no eigenvalue lives in F_q, i.e. t does not divide q-1
  return (q * q - 1) % t == 0 && (q - 1) % t != 0 ? 1 : 0;
}

u64 count_irreducible_cyclic_classes_bruteforce(u64 q, u64 t) {
  if (t == 0 || std::gcd(t, q) != 1)
    throw std::invalid_argument("count_irreducible_cyclic_classes: need gcd(t, q) = 1");
  const Ctx& c = get_ctx(q);
  std::unordered_map<u64, std::vector<size_t>> dedup;
  std::vector<SubData> groups;
  for (u32 g = 0; g < c.els.size(); ++g) {
    if (c.ord[g] != t) continue;
    std::vector<u32> cyc;
    u32 x = g;
    u32 idIdx = c.idx(mat_identity());
    while (x != idIdx) {
      cyc.push_back(x);
      x = c.mul(x, g);
    }
    cyc.push_back(idIdx);
    std::sort(cyc.begin(), cyc.end());
    u64 h = 1469598103934665603ull;
    for (u32 v : cyc) h = hash_mix(h, v);
    auto& bucket = dedup[h];
    bool dup = false;
    for (size_t si : bucket)
      if (groups[si].idx == cyc) {
        dup = true;
        break;
      }
    if (dup) continue;
    std::vector<Mat2> mats;
    for (u32 i : cyc) mats.push_back(c.els[i]);
    if (is_reducible(Subgroup{c.F, sorted_by_key(std::move(mats), q)})) continue;
    bucket.push_back(groups.size());
    groups.push_back(make_subdata(c, std::move(cyc)));
  }
  std::vector<size_t> reps;
  for (size_t i = 0; i < groups.size(); ++i) {
    bool matched = false;
    for (size_t r : reps)
      if (conj_element(c, groups[i], groups[r])) {
        matched = true;
        break;
      }
    if (!matched) reps.push_back(i);
  }
  return reps.size();
}

std::vector<Subgroup> maximal_cubefree_classes(u64 q, Kind kind, u64 max_q) {
  if (q > max_q) throw std::invalid_argument("maximal_cubefree_classes: q exceeds cap");
  const Ctx& c = get_ctx(q);
  const Pool& pool = get_pool(q);
  std::vector<size_t> members;
  for (size_t i = 0; i < pool.subs.size(); ++i)
    if (kind_accepts(kind, pool.subs[i])) members.push_back(i);

  // a pool member is dominated if some pool member of the same kind strictly
  // contains it; since the pool is complete up to conjugacy AND closed under
  // conjugate subgroups lying in M or N, a class is maximal iff none of its
  // pool members is dominated
  std::vector<char> dominated(members.size(), 0);
  for (size_t i = 0; i < members.size(); ++i) {
    const SubData& x = pool.subs[members[i]];
    for (size_t j = 0; j < members.size(); ++j) {
      const SubData& k = pool.subs[members[j]];
      if (k.order <= x.order || k.order % x.order) continue;
      if (contains(k, x)) {
        dominated[i] = 1;
        break;
      }
    }
  }

  std::vector<size_t> reps;  // indices into members
  for (size_t i = 0; i < members.size(); ++i) {
    if (dominated[i]) continue;
    bool matched = false;
    for (size_t r : reps)
      if (conj_element(c, pool.subs[members[i]], pool.subs[members[r]])) {
        matched = true;
        break;
      }
    if (!matched) reps.push_back(i);
  }
  std::vector<char> dead(reps.size(), 0);
  for (size_t i = 0; i < members.size(); ++i) {
    if (!dominated[i]) continue;
    for (size_t ci = 0; ci < reps.size(); ++ci) {
      if (dead[ci]) continue;
      if (conj_element(c, pool.subs[members[i]], pool.subs[members[reps[ci]]])) {
        dead[ci] = 1;
        break;
      }
    }
  }
  std::vector<Subgroup> out;
  for (size_t ci = 0; ci < reps.size(); ++ci) {
    if (dead[ci]) continue;
    std::vector<Mat2> mats;
    for (u32 i : pool.subs[members[reps[ci]]].idx) mats.push_back(c.els[i]);
    out.push_back(Subgroup{c.F, sorted_by_key(std::move(mats), q)});
  }
  std::sort(out.begin(), out.end(), [q](const Subgroup& a, const Subgroup& b) {
    if (a.els.size() != b.els.size()) return a.els.size() < b.els.size();
    for (size_t i = 0; i < a.els.size(); ++i) {
      u64 ka = mat_key(a.els[i], q), kb = mat_key(b.els[i], q);
      if (ka != kb) return ka < kb;
    }
    return false;
  });
  return out;
}

std::vector<Subgroup> imprimitive_representatives(u64 q) {
  ff::FieldSpec F = field_for_q(q);
  if (F.q % 2 == 0) throw std::invalid_argument("imprimitive_representatives: q must be odd");
  std::vector<u64> S, P;
  for (auto [r, e] : numthy::factorize(q - 1).pe) {
    if (r == 2) continue;
    S.push_back(r);
    if (e >= 2) P.push_back(r);
  }
  u64 l = 1;
  for (u64 r : S)
    if (std::find(P.begin(), P.end(), r) == P.end()) l *= r;
  bool sEqualsP = S.size() == P.size();

  u64 u = F.neg(1);  // the unique element of order 2
  Mat2 swap{{0, 1, 1, 0}};
  std::vector<std::vector<Mat2>> pGens(2);
  pGens[0] = {Mat2{{static_cast<u32>(u), 0, 0, static_cast<u32>(u)}}, swap};
  pGens[1] = {Mat2{{0, 1, static_cast<u32>(u), 0}}};

  std::vector<Mat2> uGens;
  if (l > 1) {
    u64 mu = ff::element_of_order(F, l);
    uGens.push_back(Mat2{{static_cast<u32>(mu), 0, 0, 1}});
    uGens.push_back(Mat2{{1, 0, 0, static_cast<u32>(mu)}});
  }
  struct RPiece {
    u64 r;
    Mat2 a, b, ar, br;  // a_r, b_r and their r-th powers
  };
  std::vector<RPiece> pieces;
  for (u64 r : P) {
    u64 lam = ff::element_of_order(F, r * r);
    RPiece pc;
    pc.r = r;
    pc.a = Mat2{{static_cast<u32>(lam), 0, 0, static_cast<u32>(F.inv(lam))}};
    pc.b = Mat2{{static_cast<u32>(lam), 0, 0, static_cast<u32>(lam)}};
    u64 lr = F.pow(lam, r);
    pc.ar = Mat2{{static_cast<u32>(lr), 0, 0, static_cast<u32>(F.inv(lr))}};
    pc.br = Mat2{{static_cast<u32>(lr), 0, 0, static_cast<u32>(lr)}};
    pieces.push_back(pc);
  }

  std::vector<Subgroup> out;
  u64 tuples = numthy::ipow(3, static_cast<unsigned>(P.size()));
  for (u64 tup = 0; tup < tuples; ++tup) {
    bool allScalar = true;
    std::vector<unsigned> choice(P.size());
    u64 tt = tup;
    for (size_t i = 0; i < P.size(); ++i) {
      choice[i] = static_cast<unsigned>(tt % 3) + 1;
      tt /= 3;
      if (choice[i] != 2) allScalar = false;
    }
    if (sEqualsP && allScalar) continue;  // those two members are abelian
    for (int j = 0; j < 2; ++j) {
      std::vector<Mat2> gens = pGens[j];
      u64 expect = 4 * l * l;
      for (size_t i = 0; i < pieces.size(); ++i) {
        const RPiece& pc = pieces[i];
        if (choice[i] == 1)
          gens.push_back(pc.a);
        else if (choice[i] == 2)
          gens.push_back(pc.b);
        else {
          gens.push_back(pc.ar);
          gens.push_back(pc.br);
        }
        expect *= pc.r * pc.r;
      }
      for (const Mat2& m : uGens) gens.push_back(m);
      auto els = mat_closure(F, gens);
      if (els.size() != expect)
        throw std::logic_error("imprimitive_representatives: unexpected order");
      out.push_back(Subgroup{F, std::move(els)});
    }
  }
  return out;
}

bool is_maximal_cubefree_solvable(const Subgroup& h) {
  const Ctx& c = get_ctx(h.F.q);
  std::vector<u32> hidx;
  for (const Mat2& m : h.els) hidx.push_back(c.idx(m));
  std::sort(hidx.begin(), hidx.end());
  std::vector<char> memb(c.els.size(), 0);
  for (u32 i : hidx) memb[i] = 1;

  std::vector<u32> stamp(c.els.size(), 0);
  u32 gen = 0;
  std::vector<u32> work;
  for (u32 g = 0; g < c.els.size(); ++g) {
    if (memb[g]) continue;
    u64 go = c.ord[g];
    if (go % c.p == 0 || !numthy::is_cubefree(go)) continue;
    // grow <H, g>; anything past the largest cube-free p'-order is hopeless
    ++gen;
    work.clear();
    bool aborted = false;
    auto push = [&](u32 x) {
      if (stamp[x] == gen) return true;
      stamp[x] = gen;
      work.push_back(x);
      return work.size() <= c.maxCfOrder;
    };
    for (u32 i : hidx) push(i);
    if (!push(g)) continue;
    for (size_t i = 0; i < work.size() && !aborted; ++i)
      for (size_t j = 0; j <= i; ++j) {
        if (!push(c.mul(work[i], work[j])) || !push(c.mul(work[j], work[i]))) {
          aborted = true;
          break;
        }
      }
    if (aborted) continue;
    u64 ko = work.size();
    if (!numthy::is_cubefree(ko) || ko % c.p == 0) continue;
    if (ko >= 60 && !idx_solvable(c, work)) continue;
    return false;  // strictly larger solvable cube-free p'-subgroup found
  }
  return true;
}

}  // namespace cubefree::gl2
