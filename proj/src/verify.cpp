#include "cubefree/verify.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "cubefree/extensions.hpp"
#include "cubefree/formulas.hpp"
#include "cubefree/gl2.hpp"
#include "cubefree/numthy.hpp"
#include "cubefree/smallgroup.hpp"

namespace cubefree::verify {

Budget::Budget(double seconds)
    : deadline_(std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(seconds))) {}

void Budget::check() const {
  if (std::chrono::steady_clock::now() > deadline_) throw BudgetExhausted{};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"prop22", "lemma21", "thm13",  "prop4x",
                                              "lemma31", "holder",  "cor14", "bounds"};
  return names;
}

namespace {

using formulas::BigInt;

json big_to_json(const BigInt& v) {
  if (v <= BigInt(std::numeric_limits<u64>::max())) return static_cast<u64>(v);
  return v.str();
}

sg::AbelianSpec spec_of(std::vector<u64> factors) {
  factors.erase(std::remove(factors.begin(), factors.end(), u64(1)), factors.end());
  return sg::make_abelian_spec(std::move(factors));
}

json factors_json(const sg::AbelianSpec& s) { return json(s.factors); }

// runs one case, timing it and folding its match into the suite
struct SuiteBuilder {
  json cases = json::array();
  bool overall = true;
  Budget* budget;

  explicit SuiteBuilder(Budget& b) : budget(&b) {}

  template <typename F>
  void run(json params, F&& body) {
    budget->check();
    auto t0 = std::chrono::steady_clock::now();
    auto [formula, oracle, match] = body();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    json c;
    c["params"] = std::move(params);
    c["formula_value"] = std::move(formula);
    c["oracle_value"] = std::move(oracle);
    c["match"] = match;
    c["elapsed_ms"] = static_cast<std::int64_t>(ms);
    cases.push_back(std::move(c));
    overall = overall && match;
  }

  json finish(const std::string& name) && {
    json r;
    r["suite"] = name;
    r["cases"] = std::move(cases);
    r["overall"] = overall;
    return r;
  }
};

std::vector<u64> odd_prime_powers_leq(u64 cap) {
  std::vector<u64> v;
  for (u64 q = 3; q <= cap; q += 2)
    if (numthy::is_prime_power(q)) v.push_back(q);
  return v;
}

json suite_prop22(const Caps& caps, Budget& budget) {
  SuiteBuilder b(budget);
  for (u64 q : odd_prime_powers_leq(caps.max_q)) {
    b.run(json{{"q", q}}, [&] {
      u64 formula = formulas::nonabelian_maximal_count(q);
      u64 oracle =
          gl2::maximal_cubefree_classes(q, gl2::Kind::nonabelian, caps.max_q).size();
      return std::tuple<json, json, bool>{formula, oracle, formula == oracle};
    });
  }
  return std::move(b).finish("prop22");
}

json suite_lemma21(const Caps& caps, Budget& budget) {
  SuiteBuilder b(budget);
  for (u64 q : odd_prime_powers_leq(caps.max_q)) {
    for (bool even : {false, true}) {
      b.run(json{{"q", q}, {"kind", even ? "abelian_even" : "abelian_odd"}}, [&] {
        gl2::Kind k = even ? gl2::Kind::abelian_even : gl2::Kind::abelian_odd;
        u64 count = gl2::maximal_cubefree_classes(q, k, caps.max_q).size();
        double bound = formulas::abelian_classes_bound(q, even);
        return std::tuple<json, json, bool>{
            bound, count, formulas::abelian_classes_bound_holds(q, even, count)};
      });
    }
  }
  for (u64 p = 2; p <= caps.max_q; ++p) {
    if (!numthy::is_prime(p)) continue;
    if (p > 2) {
      b.run(json{{"p", p}, {"kind", "odd_all"}}, [&] {
        u64 count = gl2::maximal_cubefree_classes(p, gl2::Kind::odd_all, caps.max_q).size();
        double bound = formulas::odd_maximal_bound(p);
        return std::tuple<json, json, bool>{bound, count,
                                            formulas::odd_maximal_bound_holds(p, count)};
      });
    }
    b.run(json{{"p", p}, {"kind", "all"}}, [&] {
      u64 count = gl2::maximal_cubefree_classes(p, gl2::Kind::all, caps.max_q).size();
      double bound = formulas::solvable_maximal_bound(p);
      return std::tuple<json, json, bool>{bound, count,
                                          formulas::solvable_maximal_bound_holds(p, count)};
    });
  }
  return std::move(b).finish("lemma21");
}

struct P2Tuple {
  u64 p, c, d;
};
constexpr P2Tuple kP2Tuples[] = {{5, 3, 1}, {7, 3, 1}, {7, 1, 3}, {11, 5, 1}, {13, 3, 1}};

struct CyclicTuple {
  u64 p;
  unsigned alpha;
  u64 c, d;
};
constexpr CyclicTuple kCyclicTuples[] = {
    {7, 1, 3, 1}, {7, 2, 3, 1}, {5, 1, 3, 1}, {11, 1, 5, 1}, {13, 2, 3, 1}};

json suite_thm13(const Caps& caps, Budget& budget) {
  SuiteBuilder b(budget);
  for (const auto& t : kP2Tuples) {
    u64 order = t.p * t.p * t.c * t.d * t.d;
    if (order > caps.max_order || t.p > caps.max_q) continue;
    b.run(json{{"p", t.p}, {"c", t.c}, {"d", t.d}, {"shape", "p2"}}, [&] {
      u64 formula = formulas::split_count_p2(t.p, t.c, t.d);
      u64 oracle = ext::iso_class_count_direct(spec_of({t.p, t.p}),
                                               spec_of({t.c * t.d, t.d}));
      return std::tuple<json, json, bool>{formula, oracle, formula == oracle};
    });
  }
  for (const auto& t : kCyclicTuples) {
    u64 order = numthy::ipow(t.p, t.alpha) * t.c * t.d * t.d;
    if (order > caps.max_order) continue;
    b.run(json{{"p", t.p}, {"alpha", t.alpha}, {"c", t.c}, {"d", t.d}, {"shape", "cyclic"}},
          [&] {
            u64 formula = formulas::split_count_cyclic(t.p, t.alpha, t.c, t.d);
            u64 oracle = ext::iso_class_count_direct(spec_of({numthy::ipow(t.p, t.alpha)}),
                                                     spec_of({t.c * t.d, t.d}));
            return std::tuple<json, json, bool>{formula, oracle, formula == oracle};
          });
  }
  return std::move(b).finish("thm13");
}

struct PairNQ {
  std::vector<u64> N, Q;
};

const std::vector<PairNQ>& prop4x_pairs() {
  static const std::vector<PairNQ> pairs{
      {{7}, {3}},        {{5}, {3}},      {{49}, {3}},     {{169}, {3}},
      {{11}, {5}},       {{5, 5}, {3}},   {{7, 7}, {3}},   {{7, 7}, {3, 3}},
      {{11, 11}, {5}},   {{13, 13}, {3}}, {{4}, {3}},      {{2, 2}, {3}},
      {{9}, {2}},        {{3, 3}, {2}},   {{3, 3}, {2, 2}}, {{3, 3}, {4}},
      {{5}, {4}},        {{15}, {2}},     {{35}, {3}},     {{35, 5}, {3}},
      {{7}, {3, 3}},     {{5, 5}, {3, 3}}, {{7, 7}, {2}},  {{13}, {4}},
      {{11, 11}, {3}}};
  return pairs;
}

json suite_prop4x(const Caps& caps, Budget& budget) {
  SuiteBuilder b(budget);
  for (const auto& pr : prop4x_pairs()) {
    sg::AbelianSpec N = spec_of(pr.N), Q = spec_of(pr.Q);
    if (N.order() * Q.order() > caps.max_order) continue;
    budget.check();
    ext::HomSet hs = ext::enumerate_homs(N, Q);
    u64 direct = ext::iso_class_count_direct(N, Q);
    b.run(json{{"N", factors_json(N)}, {"Q", factors_json(Q)}, {"check", "orbit_vs_direct"}},
          [&] {
            u64 orbits = ext::orbit_count(hs);
            return std::tuple<json, json, bool>{orbits, direct, orbits == direct};
          });
    b.run(json{{"N", factors_json(N)}, {"Q", factors_json(Q)}, {"check", "image_vs_direct"}},
          [&] {
            u64 images = ext::image_conjugacy_count(hs);
            return std::tuple<json, json, bool>{images, direct, images == direct};
          });
  }
  return std::move(b).finish("prop4x");
}

json suite_lemma31(const Caps& caps, Budget& budget) {
  SuiteBuilder b(budget);
  for (u64 p : {u64(2), u64(3), u64(5)})
    for (unsigned u = 0; u <= 2; ++u)
      for (unsigned v = 0; v <= 2; ++v) {
        u64 order = numthy::ipow(p, 2 * u + v);
        if (order > caps.max_order) continue;
        std::vector<u64> factors;
        for (unsigned i = 0; i < u; ++i) factors.push_back(p * p);
        for (unsigned i = 0; i < v; ++i) factors.push_back(p);
        sg::GroupTable g = sg::abelian_group(spec_of(std::move(factors)));
        for (unsigned t = 0; t <= u + v; ++t) {
          b.run(json{{"p", p}, {"u", u}, {"v", v}, {"t", t}, {"shape", "elementary"}}, [&] {
            u64 formula = formulas::elem_abelian_subgroup_count(p, u, v, t);
            u64 target = numthy::ipow(p, t);
            u64 census = 0;
            for (const auto& sub : sg::subgroups_of_order(g, target)) {
              bool elem = true;
              for (sg::u16 e : sub)
                if (g.eord[e] > p) {
                  elem = false;
                  break;
                }
              if (elem) ++census;
            }
            return std::tuple<json, json, bool>{formula, census, formula == census};
          });
        }
        b.run(json{{"p", p}, {"u", u}, {"v", v}, {"shape", "cyclic_p2"}}, [&] {
          u64 formula = formulas::cyclic_p2_subgroup_count(p, u, v);
          u64 census = 0;
          if (order % (p * p) == 0) {
            for (const auto& sub : sg::subgroups_of_order(g, p * p)) {
              bool cyc = false;
              for (sg::u16 e : sub)
                if (g.eord[e] == p * p) {
                  cyc = true;
                  break;
                }
              if (cyc) ++census;
            }
          }
          return std::tuple<json, json, bool>{formula, census, formula == census};
        });
      }
  return std::move(b).finish("lemma31");
}

json suite_holder(const Caps& caps, Budget& budget) {
  SuiteBuilder b(budget);
  for (u64 n = 1; n <= caps.max_n; ++n) {
    if (!numthy::is_squarefree(n)) continue;
    b.run(json{{"n", n}}, [&] {
      BigInt formula = formulas::holder_count(n);
      u64 oracle = metacyclic_class_count(n);
      return std::tuple<json, json, bool>{big_to_json(formula), oracle,
                                          formula == BigInt(oracle)};
    });
  }
  return std::move(b).finish("holder");
}

struct Cor14Tuple {
  u64 a, b, c, d;
};
constexpr Cor14Tuple kCor14Tuples[] = {{35, 1, 3, 1}, {7, 5, 3, 1}, {11, 1, 5, 1}, {5, 1, 3, 1}};

json suite_cor14(const Caps& caps, Budget& budget) {
  SuiteBuilder b(budget);
  for (const auto& t : kCor14Tuples) {
    u64 order = t.a * t.b * t.b * t.c * t.d * t.d;
    if (order > caps.max_order) continue;
    b.run(json{{"a", t.a}, {"b", t.b}, {"c", t.c}, {"d", t.d}}, [&] {
      u64 formula = formulas::lower_bound_product(t.a, t.b, t.c, t.d);
      u64 oracle = ext::iso_class_count_direct(spec_of({t.a * t.b, t.b}),
                                               spec_of({t.c * t.d, t.d}));
      return std::tuple<json, json, bool>{formula, oracle, formula <= oracle};
    });
  }
  return std::move(b).finish("cor14");
}

json suite_bounds(const Caps& caps, Budget& budget) {
  SuiteBuilder b(budget);
  for (u64 n = 1; n <= caps.max_n; ++n) {
    if (!numthy::is_squarefree(n)) continue;
    BigInt count = formulas::holder_count(n);
    b.run(json{{"check", "holder_solvable"}, {"n", n}}, [&] {
      return std::tuple<json, json, bool>{formulas::upper_bound_solvable(n).log2_value,
                                          big_to_json(count),
                                          formulas::upper_bound_solvable_holds(n, count)};
    });
    if (n % 2 == 1) {
      b.run(json{{"check", "holder_odd"}, {"n", n}}, [&] {
        return std::tuple<json, json, bool>{formulas::upper_bound_odd(n).log2_value,
                                            big_to_json(count),
                                            formulas::upper_bound_odd_holds(n, count)};
      });
    }
  }
  for (const auto& t : kP2Tuples) {
    if (t.p > caps.max_q) continue;
    u64 n = t.p * t.p * t.c * t.d * t.d;
    u64 count = formulas::split_count_p2(t.p, t.c, t.d);
    b.run(json{{"check", "split_p2_solvable"}, {"n", n}}, [&] {
      return std::tuple<json, json, bool>{formulas::upper_bound_solvable(n).log2_value, count,
                                          formulas::upper_bound_solvable_holds(n, count)};
    });
    b.run(json{{"check", "split_p2_odd"}, {"n", n}}, [&] {
      return std::tuple<json, json, bool>{formulas::upper_bound_odd(n).log2_value, count,
                                          formulas::upper_bound_odd_holds(n, count)};
    });
  }
  for (const auto& t : kCyclicTuples) {
    u64 n = numthy::ipow(t.p, t.alpha) * t.c * t.d * t.d;
    u64 count = formulas::split_count_cyclic(t.p, t.alpha, t.c, t.d);
    b.run(json{{"check", "split_cyclic_solvable"}, {"n", n}}, [&] {
      return std::tuple<json, json, bool>{formulas::upper_bound_solvable(n).log2_value, count,
                                          formulas::upper_bound_solvable_holds(n, count)};
    });
    b.run(json{{"check", "split_cyclic_odd"}, {"n", n}}, [&] {
      return std::tuple<json, json, bool>{formulas::upper_bound_odd(n).log2_value, count,
                                          formulas::upper_bound_odd_holds(n, count)};
    });
  }
  for (u64 q : odd_prime_powers_leq(caps.max_q)) {
    if (q < 5 || !numthy::is_prime(q)) continue;
    u64 count = formulas::nonabelian_maximal_count(q);
    b.run(json{{"check", "nonabelian_vs_solvable_maximal"}, {"p", q}}, [&] {
      return std::tuple<json, json, bool>{formulas::solvable_maximal_bound(q), count,
                                          formulas::solvable_maximal_bound_holds(q, count)};
    });
  }
  for (const auto& pr : prop4x_pairs()) {
    sg::AbelianSpec N = spec_of(pr.N), Q = spec_of(pr.Q);
    u64 n = N.order() * Q.order();
    if (n > caps.max_order) continue;
    budget.check();
    ext::HomSet hs = ext::enumerate_homs(N, Q);
    u64 count = ext::orbit_count(hs);
    b.run(json{{"check", "pair_split_solvable"}, {"N", factors_json(N)},
               {"Q", factors_json(Q)}},
          [&] {
            return std::tuple<json, json, bool>{formulas::upper_bound_solvable(n).log2_value,
                                                count,
                                                formulas::upper_bound_solvable_holds(n, count)};
          });
    if (n % 2 == 1) {
      b.run(json{{"check", "pair_split_odd"}, {"N", factors_json(N)},
                 {"Q", factors_json(Q)}},
            [&] {
              return std::tuple<json, json, bool>{formulas::upper_bound_odd(n).log2_value,
                                                  count,
                                                  formulas::upper_bound_odd_holds(n, count)};
            });
    }
  }
  return std::move(b).finish("bounds");
}

}  // namespace

u64 metacyclic_class_count(u64 n) {
  if (!numthy::is_squarefree(n))
    throw std::invalid_argument("metacyclic_class_count: n not square-free");
  std::deque<sg::GroupTable> repTables;
  std::deque<sg::IsoTester> testers;
  u64 classes = 0;
  for (u64 m : numthy::divisors(n)) {
    sg::AbelianSpec N = spec_of({m}), Q = spec_of({n / m});
    ext::HomSet hs = ext::enumerate_homs(N, Q);
    for (const auto& hom : hs.homs) {
      sg::Homomorphism theta{Q, hs.autN.get(), hom};
      sg::GroupTable g = sg::semidirect_product(N, Q, theta);
      bool matched = false;
      for (const auto& t : testers)
        if (t.test(g)) {
          matched = true;
          break;
        }
      if (!matched) {
        repTables.push_back(std::move(g));
        testers.emplace_back(repTables.back());
        ++classes;
      }
    }
  }
  return classes;
}

json run_suite(const std::string& name, const Caps& caps, Budget& budget) {
  if (name == "prop22") return suite_prop22(caps, budget);
  if (name == "lemma21") return suite_lemma21(caps, budget);
  if (name == "thm13") return suite_thm13(caps, budget);
  if (name == "prop4x") return suite_prop4x(caps, budget);
  if (name == "lemma31") return suite_lemma31(caps, budget);
  if (name == "holder") return suite_holder(caps, budget);
  if (name == "cor14") return suite_cor14(caps, budget);
  if (name == "bounds") return suite_bounds(caps, budget);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace cubefree::verify
