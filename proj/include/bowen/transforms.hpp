// The scaling / amplifying / combining pipeline, the duplication metric on a
// disjoint union of conjugate systems, the {0,1}->{2,3} conjugate with its
// constant-value tie rule, subshift standard-metric count equalities, and the
// two-sided separation sandwich for the conjugate side.
#pragma once

#include "bowen/ec.hpp"
#include "bowen/exact_solvers.hpp"
#include "bowen/metric_core.hpp"

#include <string>
#include <vector>

namespace bowenlab {

// All distances multiplied by gamma; the map is untouched.
FiniteDynSystem scale(const FiniteDynSystem& sys, const Rat& gamma);

struct ScaleCheck {
  long long sep_scaled = 0, sep_base = 0;
  long long span_scaled = 0, span_base = 0;
  bool sep_match = false;   // sep(scaled, delta) == sep(base, delta/gamma)
  bool span_match = false;
};
ScaleCheck verify_scale_identities(const FiniteDynSystem& sys, const Rat& gamma,
                                   const Rat& delta, long long T);

// Product of a scaled base with the window representatives of a full shift
// on `alphabet` symbols; window length T + L(delta) with
//   Delta <= L-1  <=>  gamma 2^{-Delta} >= delta.
struct AmplifyResult {
  long long window_len = 0;   // T + L(delta)
  long long product_size = 0;
  long long sep_product = 0, span_product = 0;
  long long sep_base = 0, span_base = 0;
  bool sep_formula_ok = false;   // sep_product == alphabet^{T+L} * sep_base
  bool span_formula_ok = false;
};
AmplifyResult amplify(const FiniteDynSystem& base, long long alphabet, const Rat& gamma,
                      const Rat& delta, long long T);

// L(delta) alone (exposed for the window-arithmetic checks).
long long amplify_window_constant(const Rat& gamma, const Rat& delta);

// Disjoint union of blocks plus one fixed point; distances within blocks kept,
// distance to the fixed point 2*gamma_n, cross-block 2*gamma_{min(n,m)}.
struct CombinedSpace {
  FiniteDynSystem space;
  std::vector<Rat> gammas;
  std::vector<std::pair<int, int>> block_ranges;  // [begin, end) per block
  int star_index = -1;
};
CombinedSpace combine(const std::vector<FiniteDynSystem>& blocks,
                      const std::vector<Rat>& gammas);

struct CombineCheck {
  bool axioms_ok = false;
  bool coarse_counts_ok = true;  // delta > gamma_0: sep/span of U in {1,2}
  long long span_total = 0, sep_total = 0;
  long long xi_span = 0, xi_sep = 0;
  bool xi_in_range = false;       // both in {1,2}
  bool tail_sep_le2 = false;      // sep of the tail part <= 2
  bool span_sum_ok = false;       // span(U) == xi + sum of block spans
  bool sep_sum_ok = false;
};
CombineCheck verify_combine(const CombinedSpace& cs, const Rat& delta, long long T);

// Duplication: union of two conjugate systems with cross distances
// max(alpha, D(x, f^{-1}(y))).  Throws (with a witness pair in the message)
// if f is not a conjugacy or the domination D <= d o f fails.
struct DuplicationSpace {
  FiniteDynSystem space;  // X-side points first, then Y-side
  int nx = 0, ny = 0;
  std::vector<int> f;  // X-side index -> Y-side index (0-based within Y)
  Rat alpha;
};
DuplicationSpace duplicate(const FiniteDynSystem& x_sys, const FiniteDynSystem& y_sys,
                           const std::vector<int>& f, const Rat& alpha);

// The iterated union metric built directly from iterated side matrices
// (cross pairs keep the max(alpha, .) shape under the conjugacy).
RatMatrix duplication_rho_T(const RatMatrix& DT_x, const RatMatrix& dT_y,
                            const std::vector<int>& f, const Rat& alpha);

struct DuplicateCheck {
  bool axioms_ok = false;
  bool diam_ok = false;  // diam(union) == diam(Y side)
  long long sep_union = 0, sep_y = 0;
  long long span_union = 0, span_x = 0;
  bool sep_sandwich_ok = false;          // sep_y <= sep_union <= 2 sep_y
  bool span_equality_checked = false;    // only for delta > alpha
  bool span_equality_ok = true;
};
DuplicateCheck verify_duplicate(const DuplicationSpace& ds, const Rat& delta, long long T);

// Offset conjugate of a truncated product sample: maps every coordinate
// sequence into the {2,3} alphabet and compares the coloring-based side
// against the constant-value side.
struct ConjugateCheck {
  bool equivariant = true;        // f o F = G o f on the sample
  bool dominated = true;          // D_T(x,x') <= d_T(f x, f x')
  bool tie_pairs_eps = true;      // first-difference-at-0 pairs map to eps_n
  bool other_pairs_equal = true;  // all other pairs keep their value
};
ConjugateCheck conjugate_to_23(const std::vector<ECProductPoint>& xs,
                               const ECMetricSpec& x_spec, long long T);

// The constant-value metric spec on the {2,3} side of the same schedule.
ECMetricSpec conjugate_metric_spec(const ECMetricSpec& x_spec);

// Binary subshift by forbidden words, standard metric k^{-Delta}; computes
// cov/sep/span exactly on depth-(T-1+L) cylinder representatives.
struct SubshiftReport {
  long long cov = 0, sep = 0, span = 0;
  bool equal = false;
  long long cylinders = 0;
};
SubshiftReport subshift_equality(const std::vector<Word>& forbidden_words, long long k,
                                 long long T, const Rat& eps);

// Separation sandwich on the conjugate side: the sample's exact separation
// number at (T, delta) sits between the subshift-side count and its
// prod T+(n) multiple, with (M, N) from
//   eps/3^{M+1} + eps_N/2 < delta <= eps/3^M.
struct SandwichReport {
  long long M = 0;
  int N = 0;
  long long sep_sample = 0;
  long long sep_star = 0;
  Int factor;             // prod_{n<=N} T+(n)
  bool lower_ok = false;  // sep_star <= sep_sample
  bool upper_ok = false;  // sep_sample <= factor * sep_star
  bool lower_witness_ok = false;  // lifted witness is still (T,delta)-separated
};
SandwichReport sandwich_sep23(const std::vector<ECProductPoint>& ys,
                              const ECMetricSpec& y_spec, const Rat& delta, long long T);

}  // namespace bowenlab
