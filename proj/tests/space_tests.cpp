#include <doctest.h>

#include "helpers.hpp"
#include "olab/locale.hpp"

using namespace olab;
using olab::testutil::random_space;

TEST_CASE("chain3 basics") {
  FiniteSpace s = chain3();
  REQUIRE(s.n() == 3);
  CHECK(s.opens().size() == 8);
  Mask a = s.mask_of({"a"}), c = s.mask_of({"c"});
  CHECK(s.up(a) == s.mask_of({"a", "b", "c"}));
  CHECK(s.down(c) == s.mask_of({"a", "b", "c"}));
  CHECK(s.up(0) == 0);
  CHECK(s.down(0) == 0);
  CHECK(s.format_mask(s.up(a)) == "{a,b,c}");
}

TEST_CASE("star topology closure") {
  FiniteSpace s = star();
  // Opens are exactly unions of the subbase sets with the empty set.
  Mask z = s.mask_of({"z"});
  Mask sz = s.mask_of({"s", "z"});
  CHECK(!s.is_open(z));
  CHECK(!s.is_open(sz));
  CHECK(s.is_open(s.mask_of({"m", "z", "p"})));
  CHECK(s.is_open(s.mask_of({"m", "p"})));
  CHECK(s.interior(sz) == s.mask_of({"s"}));
  CHECK(s.interior(s.full()) == s.full());
  CHECK(s.interior(0) == 0);
}

TEST_CASE("lvfail topology pins b0") {
  FiniteSpace s = lvfail();
  Mask b0 = s.mask_of({"b0"});
  for (Mask m : s.opens())
    if (subset(b0, m)) {
      CHECK(subset(s.mask_of({"b-1"}), m));
      CHECK(subset(s.mask_of({"b1"}), m));
    }
}

TEST_CASE("open cones verdicts") {
  CHECK(has_open_cones(chain3()).holds);
  CHECK(has_open_cones(vee()).holds);
  auto st = has_open_cones(star());
  CHECK(!st.holds);
  CHECK(st.witness == star().mask_of({"s"}));
  CHECK(st.up_fails);
  auto lv = has_open_cones(lvfail());
  CHECK(!lv.holds);
  CHECK(lv.witness == lvfail().mask_of({"a0", "a1"}));
}

TEST_CASE("egli-milner basics") {
  FiniteSpace s = chain3();
  CHECK(egli_milner(s, s.mask_of({"a"}), s.mask_of({"b"})));
  CHECK(!egli_milner(s, s.mask_of({"b"}), s.mask_of({"a"})));
  CHECK(egli_milner(s, 0, 0));
  CHECK(!egli_milner(s, 0, s.mask_of({"a"})));
  CHECK(!egli_milner(s, s.mask_of({"a"}), 0));
  for (Mask u : s.opens()) CHECK(egli_milner(s, u, u));
}

TEST_CASE("build_space errors") {
  CHECK_THROWS_AS(build_space("x", {"a", "a"}, {}, TopologySpec::discrete()),
                  InputError);
  CHECK_THROWS_AS(build_space("x", {"a"}, {{0, 3}}, TopologySpec::discrete()),
                  InputError);
  std::vector<std::string> many;
  for (int i = 0; i < 70; ++i) many.push_back("q" + std::to_string(i));
  CHECK_THROWS_AS(build_space("x", many, {}, TopologySpec::discrete()),
                  CapacityError);
  // Discrete enumeration above the cap fails loudly.
  std::vector<std::string> big;
  for (int i = 0; i < 20; ++i) big.push_back("r" + std::to_string(i));
  FiniteSpace s = build_space("big", big, {}, TopologySpec::discrete());
  CHECK(!s.opens_enumerable());
  CHECK_THROWS_AS(s.opens(), CapacityError);
}

TEST_CASE("up/down monad laws on random spaces") {
  std::mt19937_64 rng(20260823);
  for (int trial = 0; trial < 100; ++trial) {
    FiniteSpace s = random_space(rng);
    Mask fullm = s.full();
    for (Mask a = 0; a <= fullm; ++a) {
      CHECK(subset(a, s.up(a)));
      CHECK(s.up(s.up(a)) == s.up(a));
      CHECK(subset(a, s.down(a)));
      CHECK(s.down(s.down(a)) == s.down(a));
      Mask b = (a * 2654435761u) & fullm;  // deterministic partner
      CHECK(s.up(a | b) == (s.up(a) | s.up(b)));
      CHECK(s.down(a | b) == (s.down(a) | s.down(b)));
      if (subset(a, b)) {
        CHECK(subset(s.up(a), s.up(b)));
        CHECK(subset(s.down(a), s.down(b)));
      }
      if (s.n() > 5) break;  // keep the loop affordable on 6-point spaces
    }
    CHECK(s.up(0) == 0);
    CHECK(s.down(0) == 0);
  }
}

TEST_CASE("interior is a co-monad") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteSpace s = random_space(rng);
    for (Mask a = 0; a <= s.full(); ++a) {
      Mask i = s.interior(a);
      CHECK(subset(i, a));
      CHECK(s.interior(i) == i);
      CHECK(s.is_open(i));
    }
  }
}

TEST_CASE("egli-milner is a preorder on small frames") {
  std::vector<FiniteSpace> frames = {chain3(), vee(), star(), lvfail()};
  for (const auto& s : frames) {
    const auto& O = s.opens();
    REQUIRE(O.size() <= 32);
    for (Mask u : O)
      for (Mask v : O)
        for (Mask w : O)
          if (egli_milner(s, u, v) && egli_milner(s, v, w))
            CHECK(egli_milner(s, u, w));
  }
}

TEST_CASE("canonical open order is cardinality then lexicographic") {
  FiniteSpace s = star();
  const auto& O = s.opens();
  for (std::size_t i = 1; i < O.size(); ++i)
    CHECK(canonical_less(O[i - 1], O[i]));
  CHECK(O.front() == 0);
  CHECK(O.back() == s.full());
}
