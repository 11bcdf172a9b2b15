#include "doctest.h"

#include <stdexcept>

#include "cubefree/extensions.hpp"
#include "cubefree/smallgroup.hpp"

using namespace cubefree;
using ext::HomSet;
using ext::u32;
using ext::u64;
using sg::AbelianSpec;

namespace {

AbelianSpec spec(std::vector<u64> f) { return sg::make_abelian_spec(std::move(f)); }

}  // namespace

TEST_CASE("hom enumeration sizes") {
  CHECK(ext::enumerate_homs(spec({7}), spec({3})).homs.size() == 3);
  CHECK(ext::enumerate_homs(spec({5, 5}), spec({3})).homs.size() == 21);
  CHECK(ext::enumerate_homs(spec({7, 7}), spec({3})).homs.size() == 171);
  CHECK(ext::enumerate_homs(spec({7, 7}), spec({3, 3})).homs.size() == 2025);
  CHECK(ext::enumerate_homs(spec({11, 11}), spec({5})).homs.size() == 1325);
  CHECK(ext::enumerate_homs(spec({13, 13}), spec({3})).homs.size() == 549);
  CHECK(ext::enumerate_homs(spec({35, 5}), spec({3})).homs.size() == 63);
  // coprime orders are required
  CHECK_THROWS_AS(ext::enumerate_homs(spec({6}), spec({3})), std::invalid_argument);
}

TEST_CASE("trivial hom comes first") {
  HomSet hs = ext::enumerate_homs(spec({7}), spec({3}));
  REQUIRE(!hs.homs.empty());
  for (u32 img : hs.homs[0]) CHECK(img == 0);
}

TEST_CASE("coprime automorphism order forces the trivial action") {
  // |Aut(Z_9)| = 6 and gcd(7, 6) = 1
  HomSet hs = ext::enumerate_homs(spec({9}), spec({7}));
  CHECK(hs.homs.size() == 1);
  CHECK(ext::orbit_count(hs) == 1);
  CHECK(ext::image_conjugacy_count(hs) == 1);
  CHECK(ext::iso_class_count_direct(spec({9}), spec({7})) == 1);
}

TEST_CASE("action moves behave like a left action") {
  HomSet hs = ext::enumerate_homs(spec({7, 7}), spec({3}));
  sg::AutGroup autQ = sg::automorphism_group(hs.Q);
  const auto& autN = *hs.autN;
  // identity move fixes every hom
  for (std::size_t i = 0; i < hs.homs.size(); i += 17)
    CHECK(ext::act(hs, autQ, 0, 0, hs.homs[i]) == hs.homs[i]);
  // composition: (k2,l2) after (k1,l1) equals (k2 k1, l2 l1)
  const u32 kappas[] = {1, 5, 40};
  const u32 lambdas[] = {0, 1};
  for (u32 k1 : kappas)
    for (u32 k2 : kappas)
      for (u32 l1 : lambdas)
        for (u32 l2 : lambdas)
          for (std::size_t i = 0; i < hs.homs.size(); i += 41) {
            auto once = ext::act(hs, autQ, k1, l1, hs.homs[i]);
            auto twice = ext::act(hs, autQ, k2, l2, once);
            auto combined = ext::act(hs, autQ, autN.compose(k2, k1), autQ.compose(l2, l1),
                                     hs.homs[i]);
            CHECK(twice == combined);
          }
}

TEST_CASE("orbits, image classes and direct classification agree") {
  struct Case {
    std::vector<u64> N, Q;
    u64 expect;
  };
  const Case cases[] = {
      {{7}, {3}, 2},     {{5}, {3}, 1},      {{5, 5}, {3}, 2},
      {{7, 7}, {3}, 4},  {{9}, {2}, 2},      {{15}, {2}, 4},
  };
  for (const auto& c : cases) {
    CAPTURE(c.N[0]);
    CAPTURE(c.Q[0]);
    HomSet hs = ext::enumerate_homs(spec(c.N), spec(c.Q));
    u64 orbits = ext::orbit_count(hs);
    u64 images = ext::image_conjugacy_count(hs);
    u64 direct = ext::iso_class_count_direct(spec(c.N), spec(c.Q));
    CHECK(orbits == c.expect);
    CHECK(images == c.expect);
    CHECK(direct == c.expect);
  }
}

TEST_CASE("direct classification spot values") {
  CHECK(ext::iso_class_count_direct(spec({7, 7}), spec({3})) == 4);
  CHECK(ext::iso_class_count_direct(spec({35}), spec({3})) == 2);
  CHECK(ext::iso_class_count_direct(spec({49}), spec({3})) == 2);
}
