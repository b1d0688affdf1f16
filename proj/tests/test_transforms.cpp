#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bowen/transforms.hpp"
#include "test_util.hpp"

using namespace bowenlab;

TEST_CASE("scaling identities") {
  SUBCASE("unit factor is the identity") {
    const FiniteDynSystem sys = testutil::random_system(5, 6);
    const FiniteDynSystem s1 = scale(sys, Rat(1));
    for (int i = 0; i < sys.size(); ++i)
      for (int j = i + 1; j < sys.size(); ++j) CHECK_EQ(s1.dist.at(i, j), sys.dist.at(i, j));
  }
  SUBCASE("halving distances halves the resolution") {
    for (uint64_t seed = 10; seed < 18; ++seed) {
      const FiniteDynSystem sys = testutil::random_system(seed, 7);
      const ScaleCheck chk = verify_scale_identities(sys, Rat(1, 2), Rat(1, 2), 2);
      CHECK(chk.sep_match);
      CHECK(chk.span_match);
    }
  }
  SUBCASE("chain is invariant under joint scaling") {
    const FiniteDynSystem sys = testutil::random_system(77, 8);
    const Rat eps(4, 3);
    const ChainReport base = chain_check(sys, 2, eps);
    const ChainReport scaled = chain_check(scale(sys, Rat(2, 5)), 2, eps * Rat(2, 5));
    CHECK_EQ(base.cov_eps, scaled.cov_eps);
    CHECK_EQ(base.sep_eps, scaled.sep_eps);
    CHECK_EQ(base.span_eps, scaled.span_eps);
    CHECK_EQ(base.cov_2eps, scaled.cov_2eps);
  }
  SUBCASE("nonpositive factors rejected") {
    CHECK_THROWS(scale(testutil::random_system(1, 3), Rat(0)));
  }
}

TEST_CASE("window constant of the amplifier") {
  CHECK_EQ(amplify_window_constant(Rat(1), Rat(1, 4)), 2);
  CHECK_EQ(amplify_window_constant(Rat(1), Rat(1)), 0);
  CHECK_EQ(amplify_window_constant(Rat(1), Rat(1, 2)), 1);
  CHECK_EQ(amplify_window_constant(Rat(1, 2), Rat(1, 4)), 1);
  CHECK_THROWS(amplify_window_constant(Rat(1, 4), Rat(1, 2)));  // delta above gamma
}

TEST_CASE("amplification multiplies both counts by the window total") {
  SUBCASE("worked two-point instance") {
    FiniteDynSystem base;
    base.map = {1, 0};
    base.labels = {"a", "b"};
    base.dist = RatMatrix(2);
    base.dist.set(0, 1, Rat(1, 4));
    // delta = 1/2, gamma = 1: L = 1, window T + 1; base span is 1.
    const AmplifyResult rep = amplify(base, 2, Rat(1), Rat(1, 2), 1);
    CHECK_EQ(rep.window_len, 2);
    CHECK_EQ(rep.span_base, 1);
    CHECK_EQ(rep.span_product, 4);  // 2^2 * 1
    CHECK(rep.span_formula_ok);
    CHECK(rep.sep_formula_ok);
  }
  SUBCASE("random bases, both alphabets, both horizons, L in {1,2}") {
    for (uint64_t seed = 30; seed < 35; ++seed) {
      const int n = 3 + static_cast<int>(seed % 3);
      const FiniteDynSystem base = testutil::random_system(seed, n);
      for (long long A : {2LL, 3LL}) {
        for (long long T : {1LL, 2LL}) {
          const Rat delta = seed % 2 ? Rat(1, 2) : Rat(1, 4);
          if (A == 3 && T == 2 && delta == Rat(1, 4)) continue;  // window 4: kept small
          const AmplifyResult rep = amplify(base, A, Rat(1), delta, T);
          CHECK(rep.sep_formula_ok);
          CHECK(rep.span_formula_ok);
        }
      }
    }
  }
}

namespace {

// Blocks shrunk so that block m has diameter at most gamma_m.
std::vector<FiniteDynSystem> shrunk_blocks(const std::vector<FiniteDynSystem>& raw,
                                           const std::vector<Rat>& gammas) {
  std::vector<FiniteDynSystem> out;
  for (size_t m = 0; m < raw.size(); ++m) {
    Rat diam = 0;
    for (int i = 0; i < raw[m].size(); ++i)
      for (int j = i + 1; j < raw[m].size(); ++j)
        diam = std::max(diam, raw[m].dist.at(i, j));
    out.push_back(scale(raw[m], gammas[m] / (diam + 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("combined space identities") {
  const std::vector<Rat> gammas{Rat(1), Rat(1, 3), Rat(1, 8)};
  std::vector<FiniteDynSystem> raw{testutil::random_system(41, 4), testutil::random_system(42, 3),
                                   testutil::random_system(43, 3)};
  const CombinedSpace cs = combine(shrunk_blocks(raw, gammas), gammas);

  SUBCASE("metric axioms hold exhaustively") {
    CHECK(verify_metric_axioms(cs.space).all_pass());
  }
  SUBCASE("coarse resolutions see at most two points") {
    const CombineCheck chk = verify_combine(cs, Rat(3, 2), 2);
    CHECK(chk.axioms_ok);
    CHECK(chk.coarse_counts_ok);
  }
  SUBCASE("fine resolutions split into the block sum plus the tail") {
    for (const Rat& delta : {Rat(1, 3), Rat(1, 5), Rat(1, 8), Rat(1, 20)}) {
      for (long long T : {1LL, 2LL}) {
        const CombineCheck chk = verify_combine(cs, delta, T);
        CHECK(chk.axioms_ok);
        CHECK(chk.xi_in_range);
        CHECK(chk.tail_sep_le2);
        CHECK(chk.span_sum_ok);
        CHECK(chk.sep_sum_ok);
      }
    }
  }
  SUBCASE("one-block instance") {
    const std::vector<Rat> g1{Rat(1)};
    const CombinedSpace one = combine(shrunk_blocks({testutil::random_system(44, 5)}, g1), g1);
    const CombineCheck chk = verify_combine(one, Rat(3, 2), 1);
    CHECK(chk.coarse_counts_ok);
  }
  SUBCASE("decay condition enforced") {
    CHECK_THROWS(combine(shrunk_blocks(raw, gammas), {Rat(1), Rat(2, 3), Rat(1, 8)}));
  }
}

namespace {

// A conjugate pair: the second system is a relabeled copy with doubled
// distances, so the domination direction holds strictly.
std::pair<FiniteDynSystem, FiniteDynSystem> conjugate_pair(uint64_t seed, int n) {
  const FiniteDynSystem x = testutil::random_system(seed, n);
  FiniteDynSystem y = x;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) y.dist.set(i, j, x.dist.at(i, j) * 2);
  return {x, y};
}

std::vector<int> identity_map(int n) {
  std::vector<int> f(n);
  for (int i = 0; i < n; ++i) f[i] = i;
  return f;
}

}  // namespace

TEST_CASE("duplication metric") {
  SUBCASE("singleton sides separate at the threshold") {
    FiniteDynSystem x, y;
    x.map = {0};
    x.labels = {"x"};
    x.dist = RatMatrix(1);
    y = x;
    // diam(Y) = 0 fails alpha's range, so adapt: use two-point sides.
    auto [x2, y2] = conjugate_pair(7, 2);
    const Rat diam_y = y2.dist.at(0, 1);
    const Rat alpha = diam_y * Rat(3, 4);
    const DuplicationSpace ds = duplicate(x2, y2, identity_map(2), alpha);
    const DuplicateCheck chk = verify_duplicate(ds, alpha, 1);  // delta = alpha <= alpha
    CHECK(chk.axioms_ok);
    CHECK(chk.diam_ok);
    CHECK(chk.sep_sandwich_ok);
    CHECK(chk.sep_union >= 2);  // an X point and its twin sit alpha apart
  }
  SUBCASE("five random instances, both regimes") {
    for (uint64_t seed = 60; seed < 65; ++seed) {
      auto [x, y] = conjugate_pair(seed, 4 + static_cast<int>(seed % 4));
      Rat diam_y = 0;
      for (int i = 0; i < y.size(); ++i)
        for (int j = i + 1; j < y.size(); ++j) diam_y = std::max(diam_y, y.dist.at(i, j));
      const Rat alpha = diam_y * Rat(2, 3);
      const DuplicationSpace ds = duplicate(x, y, identity_map(x.size()), alpha);
      for (long long T : {1LL, 2LL, 3LL}) {
        const DuplicateCheck above = verify_duplicate(ds, alpha * Rat(5, 4), T);
        CHECK(above.axioms_ok);
        CHECK(above.diam_ok);
        CHECK(above.sep_sandwich_ok);
        CHECK(above.span_equality_checked);
        CHECK(above.span_equality_ok);
        const DuplicateCheck below = verify_duplicate(ds, alpha / 2, T);
        CHECK(below.sep_sandwich_ok);
      }
    }
  }
  SUBCASE("iterated union metric matches the direct construction") {
    auto [x, y] = conjugate_pair(91, 5);
    Rat diam_y = 0;
    for (int i = 0; i < y.size(); ++i)
      for (int j = i + 1; j < y.size(); ++j) diam_y = std::max(diam_y, y.dist.at(i, j));
    const Rat alpha = diam_y * Rat(3, 5);
    const auto f = identity_map(5);
    const DuplicationSpace ds = duplicate(x, y, f, alpha);
    for (long long T : {1LL, 3LL}) {
      const RatMatrix direct = duplication_rho_T(bowen(x, T).dist_T, bowen(y, T).dist_T, f, alpha);
      const BowenMatrix via_union = bowen(ds.space, T);
      for (int i = 0; i < ds.space.size(); ++i)
        for (int j = i + 1; j < ds.space.size(); ++j)
          CHECK_EQ(direct.at(i, j), via_union.dist_T.at(i, j));
    }
  }
  SUBCASE("violations are rejected with a witness") {
    auto [x, y] = conjugate_pair(70, 4);
    // Break the domination: shrink one Y-side distance below the X side.
    FiniteDynSystem ybad = y;
    ybad.dist.set(0, 1, x.dist.at(0, 1) / 2);
    Rat diam_y = 0;
    for (int i = 0; i < y.size(); ++i)
      for (int j = i + 1; j < y.size(); ++j) diam_y = std::max(diam_y, y.dist.at(i, j));
    CHECK_THROWS_WITH_AS(duplicate(x, ybad, identity_map(4), diam_y * Rat(2, 3)),
                         doctest::Contains("domination"), std::invalid_argument);
    // Break the equivariance.
    FiniteDynSystem ybad2 = y;
    if (y.size() >= 2) {
      std::swap(ybad2.map[0], ybad2.map[1]);
      if (!(ybad2.map == y.map))
        CHECK_THROWS(duplicate(x, ybad2, identity_map(4), diam_y * Rat(2, 3)));
    }
  }
}

TEST_CASE("offset conjugate of a truncated product sample") {
  const ParamSchedule sched = surrogate_schedule({{3, 2}, {3, 2}});
  const ECMetricSpec x_spec =
      make_metric_spec(sched, PhaseClause::Dn1e, ColoringVariant::CCiFamily, 11);
  const RYFamily ry = build_ry(sched, 2);
  std::vector<ECProductPoint> xs;
  for (int n = 0; n < 2; ++n)
    for (const auto& x : generate_Wn(ry, n, x_spec))
      for (long long tau : {0LL, 1LL, 3LL}) xs.push_back(ec_apply(x, x_spec, tau));
  const ConjugateCheck chk = conjugate_to_23(xs, x_spec, 6);
  CHECK(chk.equivariant);
  CHECK(chk.dominated);
  CHECK(chk.tie_pairs_eps);
  CHECK(chk.other_pairs_equal);
}

TEST_CASE("subshift standard-metric counts coincide") {
  SUBCASE("full shift at unit resolution") {
    const SubshiftReport rep = subshift_equality({}, 2, 1, Rat(1));
    CHECK_EQ(rep.cov, 2);
    CHECK_EQ(rep.sep, 2);
    CHECK_EQ(rep.span, 2);
    CHECK(rep.equal);
  }
  SUBCASE("golden-mean shift") {
    const std::vector<Word> no11{*word_from_string("11")};
    const SubshiftReport rep = subshift_equality(no11, 2, 2, Rat(1, 2));
    CHECK(rep.equal);
    CHECK_EQ(rep.sep, 5);  // admissible words of length 3
  }
  SUBCASE("single fixed point") {
    const std::vector<Word> only0{*word_from_string("1")};
    const SubshiftReport rep = subshift_equality(only0, 2, 3, Rat(1, 4));
    CHECK(rep.equal);
    CHECK_EQ(rep.sep, 1);
  }
  SUBCASE("all stated horizons and resolutions stay equal") {
    const std::vector<Word> no11{*word_from_string("11")};
    for (long long T = 1; T <= 4; ++T)
      for (const Rat& eps : {Rat(1), Rat(1, 2), Rat(1, 4)}) {
        CHECK(subshift_equality({}, 2, T, eps).equal);
        CHECK(subshift_equality(no11, 2, T, eps).equal);
      }
  }
}

TEST_CASE("conjugate-side separation sandwich") {
  const ParamSchedule sched = surrogate_schedule({{3, 2}, {3, 2}});
  const ECMetricSpec x_spec =
      make_metric_spec(sched, PhaseClause::Dn1e, ColoringVariant::CCiFamily, 19);
  const ECMetricSpec y_spec = conjugate_metric_spec(x_spec);
  const RYFamily ry = build_ry(sched, 2);
  std::vector<ECProductPoint> ys;
  for (int n = 0; n < 2; ++n)
    for (const auto& x : generate_Wn(ry, n, x_spec))
      for (long long tau : {0LL, 1LL, 2LL, 7LL}) {
        ECProductPoint y;
        for (const auto& c : ec_apply(x, x_spec, tau).coords)
          y.coords.push_back(ECnPoint{c.y.with_offset(2), c.level, c.k});
        ys.push_back(std::move(y));
      }

  SUBCASE("boundary choice: delta exactly a third of the diameter") {
    const SandwichReport rep = sandwich_sep23(ys, y_spec, y_spec.eps_truncated() / 3, 4);
    CHECK_EQ(rep.M, 1);
    CHECK(rep.lower_ok);
    CHECK(rep.upper_ok);
    CHECK(rep.lower_witness_ok);
  }
  SUBCASE("several resolutions hold the sandwich") {
    for (const Rat& delta : {y_spec.eps_truncated(), y_spec.eps_truncated() / 9,
                            y_spec.eps_truncated() * Rat(2, 7)}) {
      const SandwichReport rep = sandwich_sep23(ys, y_spec, delta, 3);
      CHECK(rep.lower_ok);
      CHECK(rep.upper_ok);
      CHECK(rep.lower_witness_ok);
    }
  }
}
