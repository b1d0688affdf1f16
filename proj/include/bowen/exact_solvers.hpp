// Exact computation of cov / sep / span at resolution eps under an iterated
// max metric, as combinatorial optimization on the threshold graph:
//
//   edge {i,j}  <=>  dist_T(i,j) < eps
//
//   sep  = maximum independent set
//   span = minimum dominating set under closed (< eps)-neighborhoods
//   cov  = minimum clique cover = chromatic number of the complement
//
// All solvers are certified-exact branch and bound over bitset adjacency,
// with brute-force enumeration oracles for cross-validation.
#pragma once

#include "bowen/metric_core.hpp"
#include "bowen/rational.hpp"

#include <string>
#include <vector>

namespace bowenlab {

class ThresholdGraph {
 public:
  // The strictness conventions live here and only here: an edge means the
  // pair is closer than eps (so independent sets are exactly the eps-separated
  // sets, and a vertex spans exactly its closed neighborhood).
  static ThresholdGraph from_matrix(const RatMatrix& dist_T, const Rat& eps,
                                    long long horizon);
  static ThresholdGraph from_bowen(const BowenMatrix& bm, const Rat& eps);

  int size() const { return n_; }
  bool adjacent(int i, int j) const;
  const Rat& eps() const { return eps_; }
  long long horizon() const { return horizon_; }

  // 64-bit blocks of row i's adjacency (no self loop).
  const std::vector<uint64_t>& row(int i) const { return adj_[i]; }
  int blocks() const { return blocks_; }

  std::vector<std::vector<int>> connected_components() const;
  ThresholdGraph induced(const std::vector<int>& verts) const;

 private:
  int n_ = 0;
  int blocks_ = 0;
  Rat eps_;
  long long horizon_ = 1;
  std::vector<std::vector<uint64_t>> adj_;
};

struct SolveResult {
  long long size = 0;
  std::vector<int> witness;  // lexicographically smallest optimal witness
};

struct CovResult {
  long long size = 0;
  std::vector<std::vector<int>> cells;  // each a clique; jointly cover
};

// Maximum independent set (= maximum eps-separated set).
SolveResult sep_number(const ThresholdGraph& g);

// Minimum dominating set under closed neighborhoods (= minimum eps-spanning set).
SolveResult span_number(const ThresholdGraph& g);

// Minimum clique cover (= minimum eps-cover).
CovResult cov_number(const ThresholdGraph& g);

// Reusable maximum clique over raw bitset adjacency (families elsewhere
// build their own graphs, e.g. two-color subgraphs of a coloring).
SolveResult max_clique(const std::vector<std::vector<uint64_t>>& adj, int n);

enum class CountKind { Cov, Sep, Span };

// Exhaustive enumeration oracle; requires n <= 20.
long long oracle_brute(const ThresholdGraph& g, CountKind which);

struct ChainReport {
  long long cov_eps = 0;
  long long sep_eps = 0;
  long long span_eps = 0;
  long long cov_2eps = 0;
  bool holds = false;  // cov(eps) >= sep(eps) >= span(eps) >= cov(2*eps)
};

// Evaluates the chain cov(eps) >= sep(eps) >= span(eps) >= cov(2 eps)
// exactly at horizon T.
ChainReport chain_check(const FiniteDynSystem& sys, long long T, const Rat& eps);

}  // namespace bowenlab
