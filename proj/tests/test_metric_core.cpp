#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bowen/metric_core.hpp"
#include "test_util.hpp"

using namespace bowenlab;

TEST_CASE("one-point space passes every axiom") {
  FiniteDynSystem sys;
  sys.map = {0};
  sys.labels = {"p"};
  sys.dist = RatMatrix(1);
  const AxiomReport rep = verify_metric_axioms(sys);
  CHECK(rep.all_pass());
}

TEST_CASE("triangle violation is reported with its first counterexample") {
  FiniteDynSystem sys;
  sys.map = {0, 1, 2};
  sys.labels = {"a", "b", "c"};
  sys.dist = RatMatrix(3);
  sys.dist.set(0, 1, Rat(1));
  sys.dist.set(0, 2, Rat(1));
  sys.dist.set(1, 2, Rat(3));
  const AxiomReport rep = verify_metric_axioms(sys);
  CHECK_FALSE(rep.triangle);
  CHECK(rep.reflexivity);
  CHECK(rep.symmetry);
  REQUIRE_EQ(rep.failures.size(), 1);
  CHECK_EQ(rep.failures[0].axiom, "triangle");
  // 1 + 1 < 3 seen from the apex a = 0.
  CHECK_EQ(rep.failures[0].i, 0);
}

TEST_CASE("iterated metric basics") {
  SUBCASE("horizon 1 reproduces the base distance") {
    const FiniteDynSystem sys = testutil::random_system(7, 6);
    const BowenMatrix bm = bowen(sys, 1);
    for (int i = 0; i < sys.size(); ++i)
      for (int j = i + 1; j < sys.size(); ++j) CHECK_EQ(bm.dist_T.at(i, j), sys.dist.at(i, j));
  }
  SUBCASE("identity map is horizon-invariant") {
    FiniteDynSystem sys = testutil::random_system(8, 5);
    for (int i = 0; i < sys.size(); ++i) sys.map[i] = i;
    const BowenMatrix bm = bowen(sys, 7);
    for (int i = 0; i < sys.size(); ++i)
      for (int j = i + 1; j < sys.size(); ++j) CHECK_EQ(bm.dist_T.at(i, j), sys.dist.at(i, j));
  }
  SUBCASE("two-cycle with fixed point, hand-evaluated") {
    FiniteDynSystem sys;
    sys.map = {1, 0, 2};  // a <-> b, c fixed
    sys.labels = {"a", "b", "c"};
    sys.dist = RatMatrix(3);
    sys.dist.set(0, 2, Rat(1, 2));
    sys.dist.set(1, 2, Rat(1));
    sys.dist.set(0, 1, Rat(1));
    const BowenMatrix bm = bowen(sys, 2);
    CHECK_EQ(bm.dist_T.at(0, 2), Rat(1));  // max(1/2, 1)
  }
  SUBCASE("horizon zero rejected") { CHECK_THROWS(bowen(testutil::random_system(1, 3), 0)); }
}

TEST_CASE("iterated distances are monotone in the horizon") {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    const FiniteDynSystem sys = testutil::random_system(seed, 7, false);
    const BowenMatrix b2 = bowen(sys, 2);
    const BowenMatrix b5 = bowen(sys, 5);
    for (int i = 0; i < sys.size(); ++i)
      for (int j = i + 1; j < sys.size(); ++j) {
        CHECK(sys.dist.at(i, j) <= b2.dist_T.at(i, j));
        CHECK(b2.dist_T.at(i, j) <= b5.dist_T.at(i, j));
      }
  }
}

TEST_CASE("forward orbits match the inverse-relabeled computation") {
  for (uint64_t seed = 20; seed < 26; ++seed) {
    const FiniteDynSystem sys = testutil::random_system(seed, 8);
    REQUIRE(sys.map_is_bijective());
    FiniteDynSystem inv = sys;
    for (int i = 0; i < sys.size(); ++i) inv.map[sys.map[i]] = i;
    const long long T = 4;
    const BowenMatrix fwd = bowen(sys, T);
    const BowenMatrix bwd = bowen(inv, T);
    for (int i = 0; i < sys.size(); ++i)
      for (int j = i + 1; j < sys.size(); ++j) {
        const int fi = sys.iterate(i, T - 1);
        const int fj = sys.iterate(j, T - 1);
        CHECK_EQ(fwd.dist_T.at(i, j), bwd.dist_T.at(std::min(fi, fj), std::max(fi, fj)));
      }
  }
}

TEST_CASE("serialization round-trips bit-exactly") {
  for (uint64_t seed = 40; seed < 46; ++seed) {
    const FiniteDynSystem sys = testutil::random_system(seed, 6);
    const std::string text = to_text(sys);
    const FiniteDynSystem back = system_from_text(text);
    CHECK_EQ(to_text(back), text);
    REQUIRE_EQ(back.size(), sys.size());
    CHECK(back.map == sys.map);
    for (int i = 0; i < sys.size(); ++i)
      for (int j = i + 1; j < sys.size(); ++j) CHECK_EQ(back.dist.at(i, j), sys.dist.at(i, j));
  }
}

TEST_CASE("malformed system files are rejected") {
  CHECK_THROWS(system_from_text("dist 0 1 1/2"));
  CHECK_THROWS(system_from_text("points 2\nmap 0 5\n"));
  CHECK_THROWS(system_from_text("points 2\ndist 0 1 nonsense\n"));
}
