// Shared helpers for the test suites: deterministic random finite metric
// systems (shortest-path-repaired rational distances, permutation maps).
#pragma once

#include "bowen/colorings.hpp"
#include "bowen/metric_core.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace bowenlab::testutil {

inline FiniteDynSystem random_system(uint64_t seed, int n, bool permutation_map = true) {
  uint64_t state = mix64(seed ^ 0x726e64ULL);
  FiniteDynSystem sys;
  sys.map.resize(n);
  sys.labels.resize(n);
  sys.dist = RatMatrix(n);
  for (int i = 0; i < n; ++i) sys.labels[i] = std::to_string(i);
  if (permutation_map) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(state, i)]);
    sys.map = perm;
  } else {
    for (int i = 0; i < n; ++i) sys.map[i] = static_cast<int>(uniform_below(state, n));
  }
  // Random positive entries, then shortest-path repair to restore the
  // triangle inequality exactly.
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const long long num = 1 + static_cast<long long>(uniform_below(state, 9));
      const long long den = 1 + static_cast<long long>(uniform_below(state, 4));
      d[i][j] = d[j][i] = Rat(num, den);
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && i != k && j != k && d[i][k] + d[k][j] < d[i][j])
          d[i][j] = d[i][k] + d[k][j];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sys.dist.set(i, j, d[i][j]);
  return sys;
}

// A resolution that lands between realized distance values now and then.
inline Rat random_eps(uint64_t seed, const FiniteDynSystem& sys) {
  uint64_t state = mix64(seed ^ 0x657073ULL);
  const int n = sys.size();
  const int i = static_cast<int>(uniform_below(state, n));
  int j = static_cast<int>(uniform_below(state, n));
  if (j == i) j = (j + 1) % n;
  const Rat base = n > 1 ? sys.dist.at(std::min(i, j), std::max(i, j)) : Rat(1);
  switch (uniform_below(state, 3)) {
    case 0: return base;             // exactly at a realized value
    case 1: return base * Rat(2, 3);
    default: return base * Rat(3, 2);
  }
}

}  // namespace bowenlab::testutil
