#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "cubefree/smallgroup.hpp"

using namespace cubefree::sg;

namespace {

// A concrete nonabelian group of order 21 = Z_7 x| Z_3.
GroupTable order21_group(u32 whichCube) {
  AbelianSpec N = make_abelian_spec({7});
  AbelianSpec Q = make_abelian_spec({3});
  static AutGroup autN = automorphism_group(N);  // Z_6
  u32 g = 0;
  for (u32 i = 0; i < autN.size(); ++i)
    if (autN.ord[i] == 3) {
      g = i;
      break;
    }
  Homomorphism theta{Q, &autN, {autN.power(g, whichCube)}};
  return semidirect_product(N, Q, theta);
}

}  // namespace

TEST_CASE("abelian spec validation") {
  CHECK(make_abelian_spec({}).order() == 1);
  CHECK(make_abelian_spec({6, 2}).order() == 12);
  CHECK_THROWS_AS(make_abelian_spec({2, 6}), std::invalid_argument);  // wrong order
  CHECK_THROWS_AS(make_abelian_spec({6, 4}), std::invalid_argument);  // 4 does not divide 6
  CHECK_THROWS_AS(make_abelian_spec({3, 1}), std::invalid_argument);  // factor < 2
}

TEST_CASE("cyclic and abelian tables") {
  GroupTable z12 = cyclic_group(12);
  CHECK(z12.n == 12);
  CHECK(verify_table(z12));
  CHECK(is_abelian(z12));
  CHECK(std::count(z12.eord.begin(), z12.eord.end(), 12u) == 4);  // phi(12)

  GroupTable g = abelian_group(make_abelian_spec({6, 2}));
  CHECK(verify_table(g));
  CHECK(is_abelian(g));
  std::vector<u32> orders = element_order_multiset(g);
  CHECK(orders == std::vector<u32>{1, 2, 2, 2, 3, 3, 6, 6, 6, 6, 6, 6});
}

TEST_CASE("direct products and isomorphism") {
  CHECK(are_isomorphic(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3))));
  CHECK_FALSE(are_isomorphic(cyclic_group(9), abelian_group(make_abelian_spec({3, 3}))));
  CHECK_FALSE(are_isomorphic(cyclic_group(12), abelian_group(make_abelian_spec({6, 2}))));
  CHECK(are_isomorphic(abelian_group(make_abelian_spec({6, 2})),
                       direct_product(cyclic_group(6), cyclic_group(2))));
}

TEST_CASE("table_from_mul rejects non-groups") {
  CHECK_THROWS_AS(table_from_mul(3, [](u32 a, u32 b) { return a * b % 3; }),
                  std::invalid_argument);  // 0 has no inverse
  GroupTable g = table_from_mul(5, [](u32 a, u32 b) { return (a + b) % 5; });
  CHECK(are_isomorphic(g, cyclic_group(5)));
}

TEST_CASE("automorphism groups of supported shapes") {
  AutGroup a9 = automorphism_group(make_abelian_spec({9}));
  CHECK(a9.size() == 6);
  CHECK(*std::max_element(a9.ord.begin(), a9.ord.end()) == 6);  // cyclic

  AutGroup a55 = automorphism_group(make_abelian_spec({5, 5}));
  CHECK(a55.size() == 480);  // |GL(2,5)|

  AutGroup a15 = automorphism_group(make_abelian_spec({15}));
  CHECK(a15.size() == 8);  // Z_4 x Z_2

  for (u32 i = 0; i < a9.size(); ++i) {
    CHECK(a9.compose(i, a9.inverse(i)) == 0);
    CHECK(a9.lookup(a9.els[i]) == i);
  }
}

TEST_CASE("semidirect products") {
  GroupTable g = order21_group(1);
  CHECK(g.n == 21);
  CHECK(verify_table(g));
  CHECK_FALSE(is_abelian(g));
  CHECK(is_solvable(g));
  // the two nontrivial actions give isomorphic groups
  CHECK(are_isomorphic(order21_group(1), order21_group(2)));
  CHECK_FALSE(are_isomorphic(order21_group(1), cyclic_group(21)));
}

TEST_CASE("semidirect with trivial action is the direct product") {
  const std::vector<std::pair<u64, u64>> pairs = {{7, 3}, {9, 2}, {25, 3}, {5, 4}, {27, 2}};
  for (auto [n, q] : pairs) {
    AbelianSpec N = make_abelian_spec({n});
    AbelianSpec Q = make_abelian_spec({q});
    AutGroup autN = automorphism_group(N);
    Homomorphism trivial{Q, &autN, {0}};
    GroupTable s = semidirect_product(N, Q, trivial);
    CHECK(are_isomorphic(s, direct_product(cyclic_group(n), cyclic_group(q))));
  }
}

TEST_CASE("homomorphism validation") {
  AbelianSpec N = make_abelian_spec({7});
  AbelianSpec Q = make_abelian_spec({3});
  AutGroup autN = automorphism_group(N);
  u32 g2 = 0;
  for (u32 i = 0; i < autN.size(); ++i)
    if (autN.ord[i] == 2) g2 = i;
  Homomorphism bad{Q, &autN, {g2}};  // image order 2 does not divide 3
  CHECK_THROWS_AS(validate_homomorphism(bad), std::invalid_argument);
}

TEST_CASE("closure and solvability") {
  GroupTable z12 = cyclic_group(12);
  std::vector<u16> c = closure(z12, {4});
  CHECK(c.size() == 3);
  CHECK(subset_is_abelian(z12, c));
  CHECK(is_solvable(z12));
  CHECK(is_solvable(order21_group(1)));
}

TEST_CASE("subgroup enumeration in solvable ambients") {
  GroupTable z12 = cyclic_group(12);
  auto all = solvable_subgroups(
      z12, [](u64) { return true; }, [](u64) { return true; });
  CHECK(all.size() == 6);  // one per divisor

  GroupTable v = abelian_group(make_abelian_spec({3, 3}));
  CHECK(subgroups_of_order(v, 3).size() == 4);
  CHECK(subgroups_of_order(v, 9).size() == 1);
  CHECK_THROWS_AS(subgroups_of_order(v, 2), std::invalid_argument);

  GroupTable g21 = order21_group(1);
  CHECK(subgroups_of_order(g21, 7).size() == 1);   // normal Sylow 7
  CHECK(subgroups_of_order(g21, 3).size() == 7);   // Sylow 3s
  CHECK(subgroups_of_order(g21, 21).size() == 1);
}

TEST_CASE("iso tester reuses its analysis") {
  IsoTester t(order21_group(1));
  CHECK(t.test(order21_group(2)));
  CHECK_FALSE(t.test(cyclic_group(21)));
}
