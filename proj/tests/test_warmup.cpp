#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bowen/warmup.hpp"

#include <set>

using namespace bowenlab;

namespace {

WarmupSystem build(long long T, ColoringVariant variant, uint64_t seed) {
  WarmupConfig cfg;
  cfg.T = T;
  cfg.variant = variant;
  cfg.seed = seed;
  return build_warmup(cfg);
}

}  // namespace

TEST_CASE("point count and map structure") {
  const WarmupSystem w2 = build(2, ColoringVariant::Unconstrained, 1);
  CHECK_EQ(w2.sys.size(), 24);  // 3T * 2^T at T = 2
  CHECK(w2.sys.map_is_bijective());
  const WarmupSystem w3 = build(3, ColoringVariant::Unconstrained, 1);
  CHECK_EQ(w3.sys.size(), 72);
}

TEST_CASE("every point has minimal period exactly 3T") {
  for (long long T : {2LL, 3LL}) {
    const WarmupSystem w = build(T, ColoringVariant::CC1Family, 3);
    for (int p = 0; p < w.sys.size(); ++p) {
      int cur = p;
      for (long long step = 1; step <= 3 * T; ++step) {
        cur = w.sys.map[cur];
        if (step < 3 * T) CHECK(cur != p);
      }
      CHECK_EQ(cur, p);
    }
  }
}

TEST_CASE("distances take only the three designated values") {
  const WarmupSystem w = build(2, ColoringVariant::CCiFamily, 5);
  std::set<Rat> values;
  for (int i = 0; i < w.sys.size(); ++i)
    for (int j = i + 1; j < w.sys.size(); ++j) values.insert(w.sys.dist.at(i, j));
  for (const Rat& v : values) CHECK((v == w.cfg.delta0 || v == w.cfg.eps0));
}

TEST_CASE("metric axioms pass exhaustively") {
  // Triangle needs 2*delta0 > eps0.
  CHECK(verify_metric_axioms(build(2, ColoringVariant::Unconstrained, 7).sys).all_pass());
  CHECK(verify_metric_axioms(build(3, ColoringVariant::CC1Family, 8).sys).all_pass());
}

TEST_CASE("window word is invariant along every orbit") {
  const WarmupSystem w = build(3, ColoringVariant::Unconstrained, 9);
  for (int p = 0; p < w.sys.size(); ++p) CHECK(w.phi_value(p) == w.phi_value(w.sys.map[p]));
}

TEST_CASE("degenerate configurations rejected") {
  WarmupConfig cfg;
  cfg.delta0 = Rat(1, 3);  // 2*delta0 = 2/3 < 1 = eps0
  CHECK_THROWS(build_warmup(cfg));
}

TEST_CASE("full-horizon counts equal the point count for any clause-respecting coloring") {
  for (auto variant : {ColoringVariant::CC1Family, ColoringVariant::CCiFamily,
                       ColoringVariant::Unconstrained}) {
    for (uint64_t seed : {1ULL, 22ULL}) {
      const WarmupSystem w = build(2, variant, seed);
      const auto exp = warmup_experiment(w, Rat(9, 10), {6});
      CHECK(exp.full_horizon_equality);
      CHECK_EQ(exp.rows[0].sep, 24);
      CHECK_EQ(exp.rows[0].span, 24);
    }
  }
  const WarmupSystem w3 = build(3, ColoringVariant::CC1Family, 4);
  const auto exp3 = warmup_experiment(w3, Rat(9, 10), {9});
  CHECK_EQ(exp3.rows[0].sep, 72);
  CHECK_EQ(exp3.rows[0].span, 72);
}

TEST_CASE("full horizon table with the superadditivity scan") {
  const WarmupSystem w = build(2, ColoringVariant::CCiFamily, 11);
  std::vector<long long> horizons;
  for (long long h = 1; h <= 6; ++h) horizons.push_back(h);
  const auto exp = warmup_experiment(w, Rat(9, 10), horizons);
  REQUIRE_EQ(exp.rows.size(), 6);
  // Monotone in the horizon, equal to the full count at 3T.
  for (size_t i = 1; i < exp.rows.size(); ++i) {
    CHECK(exp.rows[i].sep >= exp.rows[i - 1].sep);
  }
  CHECK_EQ(exp.rows.back().sep, 24);
  CHECK_EQ(exp.rows.back().span, 24);
  // Phase classes alone already separate at horizon one.
  CHECK(exp.rows[0].sep >= 6);
  CHECK(exp.quadratic_bound_holds);
}

TEST_CASE("resolution outside the designated interval is rejected") {
  const WarmupSystem w = build(2, ColoringVariant::Unconstrained, 2);
  CHECK_THROWS(warmup_experiment(w, Rat(2, 3), {6}));   // eps = delta0
  CHECK_THROWS(warmup_experiment(w, Rat(3, 2), {6}));   // eps > eps0
  CHECK_NOTHROW(warmup_experiment(w, Rat(1), {6}));     // eps = eps0 allowed
}

TEST_CASE("fixed-phase slices map to two-color word sets") {
  for (uint64_t seed : {1ULL, 5ULL, 9ULL}) {
    const WarmupSystem w = build(2, ColoringVariant::Unconstrained, seed);
    for (long long k : {0LL, 3LL, 5LL}) {
      const SliceReduction red = warmup_slice_reduction(w, Rat(9, 10), k);
      CHECK(red.phi_injective);
      CHECK(red.le2_chromatic);
      CHECK(red.slice_sep >= 1);
    }
  }
}

TEST_CASE("failure-regime arithmetic is certified at the stated scale") {
  CHECK(warmup_failure_arithmetic(60) == BoundVerdict::Proved);
  // And genuinely fails well below it.
  CHECK(warmup_failure_arithmetic(10) == BoundVerdict::Refuted);
}
