#include "cubefree/smallgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "cubefree/numthy.hpp"

namespace cubefree::sg {

namespace {

u64 fnv_hash_u16(const std::vector<u16>& v) {
  u64 h = 1469598103934665603ull;
  for (u16 x : v) {
    h ^= x;
    h *= 1099511628211ull;
    h ^= x >> 8;
    h *= 1099511628211ull;
  }
  return h;
}

u64 modinv(u64 a, u64 m) {
  if (m == 1) return 0;
  long long t = 0, nt = 1;
  long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::logic_error("modinv: arguments not coprime");
  return static_cast<u64>(t < 0 ? t + static_cast<long long>(m) : t);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

// Smallest primitive root modulo an odd prime power.
u64 primitive_root_mod(u64 pe, u64 p) {
  u64 phi = pe - pe / p;
  auto fac = numthy::factorize(phi);
  for (u64 g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [r, e] : fac.pe)
      if (powmod(g, phi / r, pe) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root_mod: none found");
}

// Fills inverses and element orders of a table whose identity is already set.
void finalize_table(GroupTable& g) {
  u32 n = g.n;
  g.inv.assign(n, 0);
  for (u32 a = 0; a < n; ++a) {
    bool ok = false;
    for (u32 b = 0; b < n; ++b)
      if (g.mul(static_cast<u16>(a), static_cast<u16>(b)) == g.id &&
          g.mul(static_cast<u16>(b), static_cast<u16>(a)) == g.id) {
        g.inv[a] = static_cast<u16>(b);
        ok = true;
        break;
      }
    if (!ok) throw std::invalid_argument("group table: missing inverse");
  }
  g.eord.assign(n, 0);
  for (u32 a = 0; a < n; ++a) {
    u32 o = 1;
    u16 x = static_cast<u16>(a);
    while (x != g.id) {
      x = g.mul(x, static_cast<u16>(a));
      if (++o > n) throw std::invalid_argument("group table: element order exceeds order");
    }
    g.eord[a] = o;
  }
}

std::vector<u16> derived_of(const GroupTable& g, const std::vector<u16>& elems) {
  std::vector<char> seen(g.n, 0);
  std::vector<u16> comms;
  for (u16 a : elems)
    for (u16 b : elems) {
      u16 c = g.mul(g.mul(g.inv[a], g.inv[b]), g.mul(a, b));
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return closure(g, comms);
}

struct Invariants {
  std::vector<u32> classSize;                 // per element
  std::vector<std::pair<u32, u32>> profile;   // sorted (order, class size)
  u64 centerSize = 0;
  u64 derivedSize = 0;
};

Invariants invariants_of(const GroupTable& g) {
  Invariants iv;
  u32 n = g.n;
  iv.classSize.resize(n);
  for (u32 x = 0; x < n; ++x) {
    u32 cent = 0;
    for (u32 y = 0; y < n; ++y)
      if (g.mul(static_cast<u16>(x), static_cast<u16>(y)) ==
          g.mul(static_cast<u16>(y), static_cast<u16>(x)))
        ++cent;
    iv.classSize[x] = n / cent;
    if (cent == n) ++iv.centerSize;
  }
  iv.profile.resize(n);
  for (u32 x = 0; x < n; ++x) iv.profile[x] = {g.eord[x], iv.classSize[x]};
  std::sort(iv.profile.begin(), iv.profile.end());
  std::vector<u16> all(n);
  std::iota(all.begin(), all.end(), 0);
  iv.derivedSize = derived_of(g, all).size();
  return iv;
}

}  // namespace

u64 AbelianSpec::order() const {
  u64 n = 1;
  for (u64 f : factors) n *= f;
  return n;
}

AbelianSpec make_abelian_spec(std::vector<u64> factors) {
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2)
      throw std::invalid_argument("make_abelian_spec: invariant factors must be >= 2");
    if (i + 1 < factors.size() && factors[i] % factors[i + 1])
      throw std::invalid_argument("make_abelian_spec: each factor must divide the previous one");
  }
  return AbelianSpec{std::move(factors)};
}

GroupTable table_from_mul(u32 n, const std::function<u32(u32, u32)>& mul, u32 cap) {
  if (n == 0) throw std::invalid_argument("table_from_mul: empty carrier");
  if (n > cap || n > 65535) throw std::invalid_argument("table_from_mul: order exceeds cap");
  GroupTable g;
  g.n = n;
  g.tab.resize(static_cast<size_t>(n) * n);
  for (u32 a = 0; a < n; ++a)
    for (u32 b = 0; b < n; ++b) {
      u32 c = mul(a, b);
      if (c >= n) throw std::invalid_argument("table_from_mul: product out of range");
      g.tab[static_cast<size_t>(a) * n + b] = static_cast<u16>(c);
    }
  bool found = false;
  for (u32 e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (u32 x = 0; x < n && ok; ++x)
      ok = g.mul(static_cast<u16>(e), static_cast<u16>(x)) == x &&
           g.mul(static_cast<u16>(x), static_cast<u16>(e)) == x;
    if (ok) {
      g.id = static_cast<u16>(e);
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("table_from_mul: no identity element");
  finalize_table(g);
  return g;
}

GroupTable abelian_group(const AbelianSpec& spec, u32 cap) {
  auto checked = make_abelian_spec(spec.factors);
  u64 n64 = checked.order();
  if (n64 > cap) throw std::invalid_argument("abelian_group: order exceeds cap");
  u32 n = static_cast<u32>(n64);
  size_t r = checked.factors.size();
  std::vector<std::vector<u32>> coord(r, std::vector<u32>(n));
  for (u32 x = 0; x < n; ++x) {
    u64 t = x;
    for (size_t i = 0; i < r; ++i) {
      coord[i][x] = static_cast<u32>(t % checked.factors[i]);
      t /= checked.factors[i];
    }
  }
  auto mul = [&](u32 a, u32 b) {
    u64 idx = 0, radix = 1;
    for (size_t i = 0; i < r; ++i) {
      u64 f = checked.factors[i];
      idx += (coord[i][a] + coord[i][b]) % f * radix;
      radix *= f;
    }
    return static_cast<u32>(idx);
  };
  return table_from_mul(n, mul, cap);
}

GroupTable cyclic_group(u64 n, u32 cap) {
  if (n == 1) return abelian_group(AbelianSpec{}, cap);
  return abelian_group(AbelianSpec{{n}}, cap);
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b, u32 cap) {
  u64 n64 = static_cast<u64>(a.n) * b.n;
  if (n64 > cap) throw std::invalid_argument("direct_product: order exceeds cap");
  u32 n = static_cast<u32>(n64);
  auto mul = [&](u32 x, u32 y) {
    u32 xa = x % a.n, xb = x / a.n;
    u32 ya = y % a.n, yb = y / a.n;
    return static_cast<u32>(a.mul(static_cast<u16>(xa), static_cast<u16>(ya))) +
           a.n * static_cast<u32>(b.mul(static_cast<u16>(xb), static_cast<u16>(yb)));
  };
  return table_from_mul(n, mul, cap);
}

bool verify_table(const GroupTable& g) {
  u32 n = g.n;
  if (g.tab.size() != static_cast<size_t>(n) * n || g.inv.size() != n || g.eord.size() != n)
    return false;
  for (u32 x = 0; x < n; ++x)
    if (g.mul(g.id, static_cast<u16>(x)) != x || g.mul(static_cast<u16>(x), g.id) != x)
      return false;
  for (u32 x = 0; x < n; ++x)
    if (g.mul(static_cast<u16>(x), g.inv[x]) != g.id ||
        g.mul(g.inv[x], static_cast<u16>(x)) != g.id)
      return false;
  auto assoc = [&](u32 a, u32 b, u32 c) {
    return g.mul(g.mul(static_cast<u16>(a), static_cast<u16>(b)), static_cast<u16>(c)) ==
           g.mul(static_cast<u16>(a), g.mul(static_cast<u16>(b), static_cast<u16>(c)));
  };
  if (n < 512) {
    for (u32 a = 0; a < n; ++a)
      for (u32 b = 0; b < n; ++b)
        for (u32 c = 0; c < n; ++c)
          if (!assoc(a, b, c)) return false;
  } else {
    std::mt19937 rng(0xC0FFEE);
    std::uniform_int_distribution<u32> d(0, n - 1);
    u64 trials = 10ull * n * n;
    for (u64 i = 0; i < trials; ++i)
      if (!assoc(d(rng), d(rng), d(rng))) return false;
  }
  return true;
}

bool is_abelian(const GroupTable& g) {
  for (u32 a = 0; a < g.n; ++a)
    for (u32 b = a + 1; b < g.n; ++b)
      if (g.mul(static_cast<u16>(a), static_cast<u16>(b)) !=
          g.mul(static_cast<u16>(b), static_cast<u16>(a)))
        return false;
  return true;
}

std::vector<u32> element_order_multiset(const GroupTable& g) {
  std::vector<u32> v = g.eord;
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<u16> closure(const GroupTable& g, std::vector<u16> seed) {
  std::vector<char> in(g.n, 0);
  std::vector<u16> list;
  auto push = [&](u16 x) {
    if (!in[x]) {
      in[x] = 1;
      list.push_back(x);
    }
  };
  push(g.id);
  for (u16 s : seed) push(s);
  // pairs (i, j<=i); appended elements revisit all earlier partners later
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      push(g.mul(list[i], list[j]));
      push(g.mul(list[j], list[i]));
    }
  std::sort(list.begin(), list.end());
  return list;
}

bool subset_is_abelian(const GroupTable& g, const std::vector<u16>& elems) {
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j)
      if (g.mul(elems[i], elems[j]) != g.mul(elems[j], elems[i])) return false;
  return true;
}

bool is_solvable(const GroupTable& g) {
  std::vector<u16> cur(g.n);
  std::iota(cur.begin(), cur.end(), 0);
  while (cur.size() > 1) {
    auto next = derived_of(g, cur);
    if (next.size() == cur.size()) return false;
    cur = std::move(next);
  }
  return true;
}

u32 AutGroup::lookup(const Perm& p) const {
  auto it = index_.find(fnv_hash_u16(p));
  if (it != index_.end())
    for (u32 c : it->second)
      if (els[c] == p) return c;
  throw std::invalid_argument("AutGroup::lookup: permutation not in the group");
}

u32 AutGroup::compose(u32 a, u32 b) const {
  const Perm& A = els[a];
  const Perm& B = els[b];
  Perm r(A.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = A[B[i]];
  return lookup(r);
}

u32 AutGroup::inverse(u32 a) const {
  const Perm& A = els[a];
  Perm r(A.size());
  for (size_t i = 0; i < r.size(); ++i) r[A[i]] = static_cast<u16>(i);
  return lookup(r);
}

u32 AutGroup::power(u32 a, u64 e) const {
  e %= ord[a];
  u32 r = 0;
  u32 base = a;
  while (e) {
    if (e & 1) r = compose(base, r);
    base = compose(base, base);
    e >>= 1;
  }
  return r;
}

AutGroup automorphism_group(const AbelianSpec& spec0) {
  auto spec = make_abelian_spec(spec0.factors);
  u64 n64 = spec.order();
  if (n64 > kOrderCap) throw std::invalid_argument("automorphism_group: order exceeds cap");
  u32 n = static_cast<u32>(n64);
  size_t r = spec.factors.size();

  struct CycPiece {
    u64 p, pe, m;
    unsigned a;
    size_t coord;
  };
  struct ElemPiece {
    u64 p, mi, mj;
    size_t ci, cj;
  };
  std::vector<CycPiece> cyc;
  std::vector<ElemPiece> ele;
  std::map<u64, std::vector<std::pair<size_t, unsigned>>> byPrime;
  for (size_t i = 0; i < r; ++i)
    for (auto [p, e] : numthy::factorize(spec.factors[i]).pe) byPrime[p].push_back({i, e});
  u64 expected = 1;
  for (auto& [p, occ] : byPrime) {
    if (occ.size() == 1) {
      auto [coord, e] = occ[0];
      u64 pe = numthy::ipow(p, e);
      cyc.push_back({p, pe, spec.factors[coord] / pe, e, coord});
      expected *= pe - pe / p;
    } else if (occ.size() == 2 && occ[0].second == 1 && occ[1].second == 1) {
      ele.push_back({p, spec.factors[occ[0].first] / p, spec.factors[occ[1].first] / p,
                     occ[0].first, occ[1].first});
      expected *= (p * p - 1) * (p * p - p);
    } else {
      throw std::invalid_argument(
          "automorphism_group: Sylow subgroups must be cyclic or Z_p x Z_p");
    }
  }

  std::vector<std::vector<u32>> coord(r, std::vector<u32>(n));
  std::vector<u64> radix(r);
  {
    u64 rad = 1;
    for (size_t i = 0; i < r; ++i) {
      radix[i] = rad;
      rad *= spec.factors[i];
    }
  }
  for (u32 x = 0; x < n; ++x) {
    u64 t = x;
    for (size_t i = 0; i < r; ++i) {
      coord[i][x] = static_cast<u32>(t % spec.factors[i]);
      t /= spec.factors[i];
    }
  }
  auto crt = [](u64 pe, u64 m, u64 a, u64 b) -> u64 {
    if (m == 1) return a;
    u64 t = (b + m - a % m) % m * modinv(pe % m, m) % m;
    return a + pe * t;
  };

  std::vector<Perm> genPerms;
  auto add_gen_cyc = [&](const CycPiece& pc, u64 u) {
    Perm pm(n);
    for (u32 x = 0; x < n; ++x) {
      u64 xc = coord[pc.coord][x];
      u64 a2 = xc % pc.pe * u % pc.pe;
      u64 nc = crt(pc.pe, pc.m, a2, pc.m == 1 ? 0 : xc % pc.m);
      pm[x] = static_cast<u16>(x - xc * radix[pc.coord] + nc * radix[pc.coord]);
    }
    genPerms.push_back(std::move(pm));
  };
  auto add_gen_elem = [&](const ElemPiece& pc, u64 A, u64 B, u64 C, u64 D) {
    Perm pm(n);
    for (u32 x = 0; x < n; ++x) {
      u64 xi = coord[pc.ci][x], xj = coord[pc.cj][x];
      u64 a = xi % pc.p, b = xj % pc.p;
      u64 a2 = (A * a + B * b) % pc.p, b2 = (C * a + D * b) % pc.p;
      u64 ni = crt(pc.p, pc.mi, a2, pc.mi == 1 ? 0 : xi % pc.mi);
      u64 nj = crt(pc.p, pc.mj, b2, pc.mj == 1 ? 0 : xj % pc.mj);
      pm[x] = static_cast<u16>(x - xi * radix[pc.ci] - xj * radix[pc.cj] + ni * radix[pc.ci] +
                               nj * radix[pc.cj]);
    }
    genPerms.push_back(std::move(pm));
  };

  for (auto& pc : cyc) {
    if (pc.pe == 2) continue;  // trivial unit group
    if (pc.p == 2) {
      add_gen_cyc(pc, 3 % pc.pe);
      if (pc.a >= 3) add_gen_cyc(pc, pc.pe - 1);
    } else {
      add_gen_cyc(pc, primitive_root_mod(pc.pe, pc.p));
    }
  }
  for (auto& pc : ele) {
    add_gen_elem(pc, 1, 1, 0, 1);
    add_gen_elem(pc, 1, 0, 1, 1);
    if (pc.p > 2) add_gen_elem(pc, primitive_root_mod(pc.p, pc.p), 0, 0, 1);
  }

  AutGroup A;
  A.base = spec;
  Perm idp(n);
  std::iota(idp.begin(), idp.end(), 0);
  A.index_[fnv_hash_u16(idp)].push_back(0);
  A.els.push_back(std::move(idp));
  for (size_t qi = 0; qi < A.els.size(); ++qi) {
    const Perm cur = A.els[qi];  // copy: els may reallocate
    for (const Perm& g : genPerms) {
      Perm w(n);
      for (u32 x = 0; x < n; ++x) w[x] = g[cur[x]];
      u64 h = fnv_hash_u16(w);
      auto& bucket = A.index_[h];
      bool found = false;
      for (u32 c : bucket)
        if (A.els[c] == w) {
          found = true;
          break;
        }
      if (!found) {
        bucket.push_back(static_cast<u32>(A.els.size()));
        A.els.push_back(std::move(w));
      }
    }
  }
  if (A.els.size() != expected)
    throw std::logic_error("automorphism_group: closure order mismatch");
  A.ord.resize(A.els.size());
  std::vector<char> vis(n);
  for (size_t i = 0; i < A.els.size(); ++i) {
    std::fill(vis.begin(), vis.end(), 0);
    u64 l = 1;
    for (u32 x = 0; x < n; ++x) {
      if (vis[x]) continue;
      u64 len = 0;
      u32 y = x;
      do {
        vis[y] = 1;
        y = A.els[i][y];
        ++len;
      } while (y != x);
      l = std::lcm(l, len);
    }
    A.ord[i] = static_cast<u32>(l);
  }
  for (const Perm& g : genPerms) A.gens.push_back(A.lookup(g));
  return A;
}

void validate_homomorphism(const Homomorphism& h) {
  if (!h.target) throw std::invalid_argument("homomorphism: missing target");
  if (h.images.size() != h.source.factors.size())
    throw std::invalid_argument("homomorphism: one image per invariant factor required");
  for (size_t i = 0; i < h.images.size(); ++i) {
    if (h.images[i] >= h.target->size())
      throw std::invalid_argument("homomorphism: image index out of range");
    if (h.source.factors[i] % h.target->ord[h.images[i]])
      throw std::invalid_argument("homomorphism: image order must divide the factor order");
  }
  for (size_t i = 0; i < h.images.size(); ++i)
    for (size_t j = i + 1; j < h.images.size(); ++j)
      if (h.target->compose(h.images[i], h.images[j]) !=
          h.target->compose(h.images[j], h.images[i]))
        throw std::invalid_argument("homomorphism: images must commute");
}

GroupTable semidirect_product(const AbelianSpec& N, const AbelianSpec& Q,
                              const Homomorphism& theta, u32 cap) {
  auto nSpec = make_abelian_spec(N.factors);
  auto qSpec = make_abelian_spec(Q.factors);
  u64 nn = nSpec.order(), nq = qSpec.order();
  if (std::gcd(nn, nq) != 1)
    throw std::invalid_argument("semidirect_product: |N| and |Q| must be coprime");
  if (!(theta.source == qSpec))
    throw std::invalid_argument("semidirect_product: theta source is not Q");
  if (!theta.target || !(theta.target->base == nSpec))
    throw std::invalid_argument("semidirect_product: theta target is not Aut(N)");
  validate_homomorphism(theta);
  if (nn * nq > cap) throw std::invalid_argument("semidirect_product: order exceeds cap");

  GroupTable Nt = abelian_group(nSpec, cap);
  GroupTable Qt = abelian_group(qSpec, cap);
  const AutGroup& aut = *theta.target;
  std::vector<const Perm*> th(Qt.n);
  for (u32 qx = 0; qx < Qt.n; ++qx) {
    u64 t = qx;
    u32 acc = 0;
    for (size_t i = 0; i < qSpec.factors.size(); ++i) {
      u64 e = t % qSpec.factors[i];
      t /= qSpec.factors[i];
      acc = aut.compose(aut.power(theta.images[i], e), acc);
    }
    th[qx] = &aut.els[acc];
  }
  u32 n = static_cast<u32>(nn * nq);
  GroupTable g;
  g.n = n;
  g.id = 0;
  g.tab.resize(static_cast<size_t>(n) * n);
  for (u32 x = 0; x < n; ++x) {
    u32 n1 = x % Nt.n, q1 = x / Nt.n;
    const Perm& p1 = *th[q1];
    u16* row = &g.tab[static_cast<size_t>(x) * n];
    for (u32 y = 0; y < n; ++y) {
      u32 n2 = y % Nt.n, q2 = y / Nt.n;
      row[y] = static_cast<u16>(Nt.mul(static_cast<u16>(n1), p1[n2]) +
                                Nt.n * Qt.mul(static_cast<u16>(q1), static_cast<u16>(q2)));
    }
  }
  finalize_table(g);
  return g;
}

IsoTester::IsoTester(const GroupTable& a) : a_(&a) {
  abelian_ = is_abelian(a);
  ordMultiset_ = element_order_multiset(a);
  auto iv = invariants_of(a);
  profile_ = iv.profile;
  centerSize_ = iv.centerSize;
  derivedSize_ = iv.derivedSize;
  if (abelian_) return;

  u32 n = a.n;
  std::vector<std::pair<u32, u32>> key(n);
  std::map<std::pair<u32, u32>, u32> bucketCount;
  for (u32 x = 0; x < n; ++x) {
    key[x] = {a.eord[x], iv.classSize[x]};
    ++bucketCount[key[x]];
  }

  std::vector<char> inU(n, 0);
  std::vector<u16> U{a.id};
  inU[a.id] = 1;
  // closure of U and one extra element; U is already closed, so only pairs
  // touching the new tail need scanning. Returns the size only.
  auto grown_size = [&](u32 extra) -> size_t {
    std::vector<char> in2(inU);
    std::vector<u16> list(U);
    size_t base = list.size();
    auto push = [&](u16 v) {
      if (!in2[v]) {
        in2[v] = 1;
        list.push_back(v);
      }
    };
    push(static_cast<u16>(extra));
    for (size_t i = base; i < list.size(); ++i) {
      for (size_t j = 0; j <= i; ++j) {
        push(a.mul(list[i], list[j]));
        push(a.mul(list[j], list[i]));
        if (list.size() == n) return n;
      }
    }
    return list.size();
  };
  while (U.size() < n) {
    u32 bestG = 0;
    size_t bestCl = 0;
    u32 bestBucket = 0;
    for (u32 cand = 0; cand < n; ++cand) {
      if (inU[cand]) continue;
      size_t cl = grown_size(cand);
      u32 bc = bucketCount[key[cand]];
      if (cl > bestCl || (cl == bestCl && bc < bestBucket)) {
        bestCl = cl;
        bestBucket = bc;
        bestG = cand;
      }
    }
    gens_.push_back(static_cast<u16>(bestG));
    genKey_.push_back(key[bestG]);
    std::vector<u16> seed(U);
    seed.push_back(static_cast<u16>(bestG));
    U = closure(a, seed);
    std::fill(inU.begin(), inU.end(), 0);
    for (u16 x : U) inU[x] = 1;
    levelSize_.push_back(static_cast<u32>(U.size()));
  }

  // BFS scripts: per level, the edges that extend the partial map and the
  // edges that only need consistency checks. Every (element, generator) edge
  // of the Cayley graph is covered at exactly one level.
  script_.resize(gens_.size());
  std::vector<char> known(n, 0);
  std::vector<u16> knownList{a.id};
  known[a.id] = 1;
  for (size_t lev = 0; lev < gens_.size(); ++lev) {
    auto& sc = script_[lev];
    size_t oldCount = knownList.size();
    for (size_t qi = 0; qi < knownList.size(); ++qi) {
      u16 x = knownList[qi];
      size_t jlo = qi < oldCount ? lev : 0;
      for (size_t j = jlo; j <= lev; ++j) {
        u16 w = a.mul(x, gens_[j]);
        if (!known[w]) {
          known[w] = 1;
          knownList.push_back(w);
          sc.push_back({w, x, static_cast<u16>(j), true});
        } else {
          sc.push_back({w, x, static_cast<u16>(j), false});
        }
      }
    }
    if (knownList.size() != levelSize_[lev])
      throw std::logic_error("IsoTester: script level size mismatch");
  }
}

bool IsoTester::backtrack(const GroupTable& b,
                          const std::vector<std::vector<u16>>& buckets) const {
  u32 n = a_->n;
  std::vector<int> m(n, -1);
  std::vector<char> used(n, 0);
  m[a_->id] = b.id;
  used[b.id] = 1;
  std::vector<u16> images(gens_.size());
  std::vector<u16> trail;

  // replay one script level; on failure the caller unwinds the trail
  auto replay = [&](size_t lev) -> bool {
    for (const Step& s : script_[lev]) {
      u16 mw = b.mul(static_cast<u16>(m[s.src]), images[s.gen]);
      if (s.discovers) {
        if (used[mw]) return false;
        m[s.elem] = mw;
        used[mw] = 1;
        trail.push_back(s.elem);
      } else if (m[s.elem] != static_cast<int>(mw)) {
        return false;
      }
    }
    return true;
  };

  std::function<bool(size_t)> dfs = [&](size_t lev) -> bool {
    if (lev == gens_.size()) return true;
    for (u16 cand : buckets[lev]) {
      if (used[cand]) continue;
      images[lev] = cand;
      size_t t0 = trail.size();
      bool ok = replay(lev) && dfs(lev + 1);
      if (ok) return true;
      while (trail.size() > t0) {
        u16 e = trail.back();
        trail.pop_back();
        used[m[e]] = 0;
        m[e] = -1;
      }
    }
    return false;
  };
  return dfs(0);
}

bool IsoTester::test(const GroupTable& b) const {
  if (b.n != a_->n) return false;
  if (element_order_multiset(b) != ordMultiset_) return false;
  if (is_abelian(b) != abelian_) return false;
  if (abelian_) return true;  // equal order multisets decide for abelian groups
  auto iv = invariants_of(b);
  if (iv.profile != profile_) return false;
  if (iv.centerSize != centerSize_ || iv.derivedSize != derivedSize_) return false;
  std::vector<std::vector<u16>> buckets(gens_.size());
  for (u32 x = 0; x < b.n; ++x) {
    std::pair<u32, u32> key{b.eord[x], iv.classSize[x]};
    for (size_t i = 0; i < gens_.size(); ++i)
      if (genKey_[i] == key) buckets[i].push_back(static_cast<u16>(x));
  }
  return backtrack(b, buckets);
}

bool are_isomorphic(const GroupTable& a, const GroupTable& b) {
  if (a.n != b.n) return false;
  return IsoTester(a).test(b);
}

std::vector<std::vector<u16>> solvable_subgroups(const GroupTable& g,
                                                 const std::function<bool(u64)>& keep,
                                                 const std::function<bool(u64)>& grow) {
  if (!is_solvable(g))
    throw std::invalid_argument("solvable_subgroups: ambient group must be solvable");
  bool ambientAbelian = is_abelian(g);
  u32 n = g.n;

  std::vector<std::vector<u16>> results;
  std::vector<std::vector<u16>> queue;
  std::vector<std::vector<u16>> seenByHashCheck;  // resolve rare hash collisions honestly
  std::unordered_map<u64, std::vector<size_t>> seenBuckets;

  auto try_insert = [&](std::vector<u16> sub) -> bool {
    u64 h = fnv_hash_u16(sub);
    auto& bucket = seenBuckets[h];
    for (size_t i : bucket)
      if (seenByHashCheck[i] == sub) return false;
    bucket.push_back(seenByHashCheck.size());
    seenByHashCheck.push_back(sub);
    queue.push_back(std::move(sub));
    return true;
  };

  try_insert({g.id});
  if (keep(1)) results.push_back({g.id});

  std::vector<char> memb(n);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const std::vector<u16> H = queue[qi];  // copy: queue may reallocate
    u64 m = H.size();
    std::fill(memb.begin(), memb.end(), 0);
    for (u16 h : H) memb[h] = 1;
    for (u32 cand = 0; cand < n; ++cand) {
      if (memb[cand]) continue;
      u16 c = static_cast<u16>(cand);
      if (!ambientAbelian) {
        bool normalizes = true;
        u16 cInv = g.inv[c];
        for (u16 h : H)
          if (!memb[g.mul(g.mul(c, h), cInv)]) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
      }
      // minimal j >= 1 with c^j in H; prime j suffices for completeness
      u32 j = 1;
      u16 x = c;
      while (!memb[x]) {
        x = g.mul(x, c);
        ++j;
      }
      if (!numthy::is_prime(j)) continue;
      u64 newOrder = m * j;
      if (!grow(newOrder)) continue;
      std::vector<u16> sub;
      sub.reserve(newOrder);
      u16 cp = g.id;
      for (u32 e = 0; e < j; ++e) {
        for (u16 h : H) sub.push_back(g.mul(h, cp));
        cp = g.mul(cp, c);
      }
      std::sort(sub.begin(), sub.end());
      if (try_insert(sub) && keep(newOrder)) results.push_back(queue.back());
    }
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return results;
}

std::vector<std::vector<u16>> subgroups_of_order(const GroupTable& g, u64 k) {
  if (k == 0 || g.n % k)
    throw std::invalid_argument("subgroups_of_order: k must divide the group order");
  return solvable_subgroups(
      g, [&](u64 o) { return o == k; }, [&](u64 o) { return k % o == 0; });
}

}  // namespace cubefree::sg
