// Finite metric dynamical systems with exact rational distances, metric-axiom
// verification, and the iterated max metrics
//
//   dist_T(i,j) = max{ dist(F^t i, F^t j) : 0 <= t < T }.
#pragma once

#include "bowen/rational.hpp"

#include <functional>
#include <string>
#include <vector>

namespace bowenlab {

// Symmetric N x N matrix of exact rationals.  Stored dense; all callers
// query every pair anyway.
class RatMatrix {
 public:
  RatMatrix() = default;
  explicit RatMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

  int size() const { return n_; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, const Rat& v) {
    a_[static_cast<size_t>(i) * n_ + j] = v;
    a_[static_cast<size_t>(j) * n_ + i] = v;
  }

 private:
  int n_ = 0;
  std::vector<Rat> a_;
};

struct FiniteDynSystem {
  // Point identity is index identity; labels are opaque and optional.
  std::vector<std::string> labels;
  std::vector<int> map;  // total function index -> index
  RatMatrix dist;

  int size() const { return dist.size(); }
  bool map_is_bijective() const;

  // t-fold iterate of a point index.
  int iterate(int i, long long t) const;
};

struct AxiomFailure {
  std::string axiom;  // "reflexivity" | "symmetry" | "positive-definiteness" | "triangle"
  int i = -1, j = -1, k = -1;  // first counterexample (unused slots -1)
};

struct AxiomReport {
  bool reflexivity = true;
  bool positive_definiteness = true;
  bool symmetry = true;
  bool triangle = true;
  std::vector<AxiomFailure> failures;  // first counterexample per failed axiom

  bool all_pass() const {
    return reflexivity && positive_definiteness && symmetry && triangle;
  }
};

// Exhaustive check of all four metric axioms; triangle over all ordered
// triples.  Never throws: violations land in the report.
AxiomReport verify_metric_axioms(const FiniteDynSystem& sys);

struct BowenMatrix {
  long long horizon = 1;
  RatMatrix dist_T;
};

// Materialized O(N^2 T) construction, parallel over rows.  Rejects T == 0.
BowenMatrix bowen(const FiniteDynSystem& sys, long long T);

// Plain-text serialization:
//   points N
//   map i j          (one line per i)
//   dist i j p/q     (upper triangle, i < j)
// Round-trips bit-exactly.
std::string to_text(const FiniteDynSystem& sys);
FiniteDynSystem system_from_text(const std::string& text);
FiniteDynSystem load_system(const std::string& path);
void save_system(const FiniteDynSystem& sys, const std::string& path);

// Run fn(i) for i in [0,n) across threads; results must be independent.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace bowenlab
