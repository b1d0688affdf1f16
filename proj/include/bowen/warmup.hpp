// The finite warm-up system: period-T two-sided binary sequences crossed
// with a phase counter of length 3T, a shift-and-advance map, and a
// three-valued coloring-driven metric.  Separation and spanning numbers at
// horizon 3T recover the full point count; single-k slices of separated
// witnesses map to <=2-chromatic word sets.
#pragma once

#include "bowen/colorings.hpp"
#include "bowen/exact_solvers.hpp"
#include "bowen/logbounds.hpp"
#include "bowen/metric_core.hpp"

#include <cstdint>
#include <vector>

namespace bowenlab {

struct WarmupConfig {
  long long T = 2;
  Rat delta0 = Rat(2, 3);
  Rat eps0 = Rat(1);
  ColoringVariant variant = ColoringVariant::Unconstrained;
  uint64_t seed = 1;
};

struct WarmupSystem {
  WarmupConfig cfg;
  long long Tplus = 0;  // 3T
  FiniteDynSystem sys;  // 3T * 2^T points
  Coloring coloring;    // explicit table over the realized window words

  // Point index encoding: k * 2^T + w, with w the period word read as bits.
  int point_index(long long k, uint64_t w) const;
  long long phase_of(int idx) const;
  uint64_t word_of(int idx) const;

  // The window word of a point: its period word rotated by the phase,
  // repeated three times.
  Word phi_value(int idx) const;
};

// Requires delta0 < eps0 < 2*delta0; the coloring is built on the 2^T
// realized window words only.
WarmupSystem build_warmup(const WarmupConfig& cfg);

struct WarmupRow {
  long long horizon = 0;
  long long sep = 0;
  long long span = 0;
  bool superadditivity_break = false;  // some split T1+T2 = horizon beats the product
};

struct WarmupExperiment {
  std::vector<WarmupRow> rows;
  bool full_horizon_equality = false;  // sep = span = |X0| at horizon 3T
  long long point_count = 0;
  // sep(eps, d_T) against the ceiling of the symbolic quadratic bound;
  // meaningful only under a coloring certificate.
  bool quadratic_bound_holds = true;
};

// Exact sep/span per horizon at resolution eps, delta0 < eps <= eps0.
WarmupExperiment warmup_experiment(const WarmupSystem& ws, const Rat& eps,
                                   const std::vector<long long>& horizons);

// For a fixed-phase slice: solve for a maximum (T, eps)-separated subset,
// then check that its (injective) window-word image is <=2-chromatic.
struct SliceReduction {
  long long slice_sep = 0;
  bool phi_injective = true;
  bool le2_chromatic = true;
};
SliceReduction warmup_slice_reduction(const WarmupSystem& ws, const Rat& eps, long long k);

// Certified arithmetic of the guaranteed-failure regime: at horizon split
// scale T, decides  3(ln R* + 2 ln T) < T ln 2  with R* = 6 ln2 / ln(3/2),
// entirely in rational brackets.
BoundVerdict warmup_failure_arithmetic(long long T);

}  // namespace bowenlab
