#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bowen/exact_solvers.hpp"
#include "test_util.hpp"

using namespace bowenlab;

namespace {

// The three-point system used across the per-operation examples:
// dist(a,b) = 2/5, dist(a,c) = dist(b,c) = 1, identity map.
FiniteDynSystem three_point_system() {
  FiniteDynSystem sys;
  sys.map = {0, 1, 2};
  sys.labels = {"a", "b", "c"};
  sys.dist = RatMatrix(3);
  sys.dist.set(0, 1, Rat(2, 5));
  sys.dist.set(0, 2, Rat(1));
  sys.dist.set(1, 2, Rat(1));
  return sys;
}

ThresholdGraph graph_of(const FiniteDynSystem& sys, long long T, const Rat& eps) {
  return ThresholdGraph::from_bowen(bowen(sys, T), eps);
}

}  // namespace

TEST_CASE("degenerate and two-point instances") {
  FiniteDynSystem one;
  one.map = {0};
  one.labels = {"p"};
  one.dist = RatMatrix(1);
  const ThresholdGraph g1 = graph_of(one, 1, Rat(1, 2));
  CHECK_EQ(sep_number(g1).size, 1);
  CHECK_EQ(sep_number(g1).witness, std::vector<int>{0});
  CHECK_EQ(span_number(g1).size, 1);
  CHECK_EQ(cov_number(g1).size, 1);

  FiniteDynSystem two;
  two.map = {0, 1};
  two.labels = {"a", "b"};
  two.dist = RatMatrix(2);
  two.dist.set(0, 1, Rat(1));
  // Separation uses >= eps, so equality counts; coverage needs < eps and fails.
  const ThresholdGraph g2 = graph_of(two, 1, Rat(1));
  CHECK_EQ(sep_number(g2).size, 2);
  CHECK_EQ(span_number(g2).size, 2);
  CHECK_EQ(cov_number(g2).size, 2);
}

TEST_CASE("three-point example matches the enumerated values") {
  const FiniteDynSystem sys = three_point_system();
  const ThresholdGraph g = graph_of(sys, 1, Rat(1));
  const SolveResult sep = sep_number(g);
  CHECK_EQ(sep.size, 2);
  CHECK_EQ(sep.witness, std::vector<int>({0, 2}));  // lexicographically smallest optimum
  const SolveResult span = span_number(g);
  CHECK_EQ(span.size, 2);  // a covers {a,b}; c covers {c}
  const CovResult cov = cov_number(g);
  CHECK_EQ(cov.size, 2);
  REQUIRE_EQ(cov.cells.size(), 2);
  CHECK_EQ(cov.cells[0], std::vector<int>({0, 1}));
  CHECK_EQ(cov.cells[1], std::vector<int>({2}));
}

TEST_CASE("complete and edgeless threshold graphs") {
  FiniteDynSystem sys = testutil::random_system(3, 6);
  Rat big(1000), tiny(1, 1000);
  const ThresholdGraph complete = graph_of(sys, 1, big);
  CHECK_EQ(cov_number(complete).size, 1);
  CHECK_EQ(sep_number(complete).size, 1);
  const ThresholdGraph edgeless = graph_of(sys, 1, tiny);
  CHECK_EQ(cov_number(edgeless).size, 6);
  CHECK_EQ(span_number(edgeless).size, 6);
  CHECK_EQ(oracle_brute(edgeless, CountKind::Span), 6);
  CHECK_EQ(oracle_brute(complete, CountKind::Sep), 1);
}

TEST_CASE("solvers agree with the exhaustive oracle on random systems") {
  int instances = 0;
  for (uint64_t seed = 100; seed < 140; ++seed) {
    const int n = 4 + static_cast<int>(seed % 11);  // up to 14
    const FiniteDynSystem sys = testutil::random_system(seed, n);
    const long long T = 1 + static_cast<long long>(seed % 3);
    const Rat eps = testutil::random_eps(seed, sys);
    const ThresholdGraph g = graph_of(sys, T, eps);
    CHECK_EQ(sep_number(g).size, oracle_brute(g, CountKind::Sep));
    CHECK_EQ(span_number(g).size, oracle_brute(g, CountKind::Span));
    CHECK_EQ(cov_number(g).size, oracle_brute(g, CountKind::Cov));
    ++instances;
  }
  CHECK_EQ(instances, 40);
}

TEST_CASE("witnesses certify their own optimality conditions") {
  for (uint64_t seed = 200; seed < 212; ++seed) {
    const FiniteDynSystem sys = testutil::random_system(seed, 9);
    const Rat eps = testutil::random_eps(seed, sys);
    const BowenMatrix bm = bowen(sys, 2);
    const ThresholdGraph g = ThresholdGraph::from_bowen(bm, eps);
    const SolveResult sep = sep_number(g);
    for (size_t a = 0; a < sep.witness.size(); ++a)
      for (size_t b = a + 1; b < sep.witness.size(); ++b)
        CHECK(bm.dist_T.at(sep.witness[a], sep.witness[b]) >= eps);
    const SolveResult span = span_number(g);
    for (int v = 0; v < g.size(); ++v) {
      bool covered = false;
      for (int s : span.witness)
        covered = covered || s == v || bm.dist_T.at(std::min(s, v), std::max(s, v)) < eps;
      CHECK(covered);
    }
    const CovResult cov = cov_number(g);
    std::vector<char> hit(g.size(), 0);
    for (const auto& cell : cov.cells) {
      for (size_t a = 0; a < cell.size(); ++a) {
        hit[cell[a]] = 1;
        for (size_t b = a + 1; b < cell.size(); ++b)
          CHECK(bm.dist_T.at(cell[a], cell[b]) < eps);
      }
    }
    for (char h : hit) CHECK(h == 1);
  }
}

TEST_CASE("count chain holds on every random instance") {
  for (uint64_t seed = 300; seed < 330; ++seed) {
    const FiniteDynSystem sys = testutil::random_system(seed, 10);
    const Rat eps = testutil::random_eps(seed, sys);
    const ChainReport rep = chain_check(sys, 1 + static_cast<long long>(seed % 4), eps);
    CHECK(rep.holds);
  }
}

TEST_CASE("coverage count is subadditive across horizon splits") {
  for (uint64_t seed = 400; seed < 412; ++seed) {
    const FiniteDynSystem sys = testutil::random_system(seed, 8);
    const Rat eps = testutil::random_eps(seed, sys);
    const long long T1 = 1 + static_cast<long long>(seed % 3);
    const long long T2 = 1 + static_cast<long long>((seed / 3) % 3);
    const long long c12 = cov_number(graph_of(sys, T1 + T2, eps)).size;
    const long long c1 = cov_number(graph_of(sys, T1, eps)).size;
    const long long c2 = cov_number(graph_of(sys, T2, eps)).size;
    CHECK(c12 <= c1 * c2);
  }
}

TEST_CASE("separation and spanning counts are monotone") {
  for (uint64_t seed = 500; seed < 510; ++seed) {
    const FiniteDynSystem sys = testutil::random_system(seed, 9);
    const Rat eps = testutil::random_eps(seed, sys);
    // Nonincreasing in eps.
    CHECK(sep_number(graph_of(sys, 2, eps)).size >= sep_number(graph_of(sys, 2, eps * 2)).size);
    CHECK(span_number(graph_of(sys, 2, eps)).size >= span_number(graph_of(sys, 2, eps * 2)).size);
    // Nondecreasing in T.
    CHECK(sep_number(graph_of(sys, 1, eps)).size <= sep_number(graph_of(sys, 3, eps)).size);
    CHECK(span_number(graph_of(sys, 1, eps)).size <= span_number(graph_of(sys, 3, eps)).size);
  }
}

TEST_CASE("oracle rejects out-of-range instances") {
  const FiniteDynSystem sys = testutil::random_system(1, 21);
  const ThresholdGraph g = graph_of(sys, 1, Rat(1));
  CHECK_THROWS(oracle_brute(g, CountKind::Sep));
}
