// Level systems (full binary shift crossed with a cyclic phase counter),
// their clause-defined metrics, the truncated product with summed metric,
// recursively built word families whose members pairwise differ on three or
// more blocks, the induced large separated sets, and the explicit spanning
// constructions.
#pragma once

#include "bowen/colorings.hpp"
#include "bowen/metric_core.hpp"
#include "bowen/param_schedule.hpp"
#include "bowen/symbolic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bowenlab {

struct ECnPoint {
  BinarySeq y;
  int level = 0;
  long long k = 0;

  bool operator==(const ECnPoint& o) const {
    return level == o.level && k == o.k && y == o.y;
  }
};

enum class PhaseClause { Dn1d, Dn1e };        // distinct phases: delta_n vs eps_n
enum class TieRule { ColoringBased, ConstantEps };  // first-difference-at-0 rule

struct ECLevelMetric {
  PhaseClause phase_clause = PhaseClause::Dn1e;
  TieRule tie_rule = TieRule::ColoringBased;
  std::optional<Coloring> coloring;  // required for ColoringBased
};

struct ECMetricSpec {
  ParamSchedule schedule;  // must carry eps/delta
  std::vector<ECLevelMetric> metrics;  // one per schedule level

  int depth() const { return static_cast<int>(schedule.levels.size()); }
  long long tplus(int n) const { return schedule.levels[n].Tplus; }
  const Rat& eps(int n) const { return schedule.levels[n].eps; }
  const Rat& delta(int n) const { return schedule.levels[n].delta; }
  Rat eps_truncated() const { return schedule.eps_total(); }

  IntervalPartition partition(int n) const {
    return IntervalPartition{n, schedule.levels[n].C, schedule.levels[n].T};
  }
  ColoringDomain coloring_domain(int n) const {
    return ColoringDomain{partition(n), schedule.tplus_before(n)};
  }
};

// Default metric assignments: the eps-phase clause with tail-zero-forced
// colorings for the spanning-side runs, the delta-phase clause with
// head-forced colorings for the separation-side runs.
ECMetricSpec make_metric_spec(const ParamSchedule& schedule, PhaseClause phase,
                              ColoringVariant variant, uint64_t seed);

// Exact clause-selected distance between two same-level points.
Rat ecn_distance(const ECnPoint& a, const ECnPoint& b, const ECMetricSpec& spec);

// Fast predicate: does the level-n distance attain eps_n?
bool ecn_attains_eps(const ECnPoint& a, const ECnPoint& b, const ECMetricSpec& spec);

ECnPoint ecn_apply(const ECnPoint& p, const ECMetricSpec& spec, long long t);

struct ECProductPoint {
  std::vector<ECnPoint> coords;  // level i stored at index i

  bool operator==(const ECProductPoint& o) const { return coords == o.coords; }
};

// Truncated sum metric; `max_attained` reports whether every level attains
// its diameter (so the truncated diameter is attained).
Rat ec_distance(const ECProductPoint& a, const ECProductPoint& b, const ECMetricSpec& spec,
                bool* max_attained = nullptr);

// Iterated product metric: max over 0 <= t < T of the summed distance.
Rat ec_bowen_distance(const ECProductPoint& a, const ECProductPoint& b,
                      const ECMetricSpec& spec, long long T);

// True iff some single t < T makes every level attain eps_n simultaneously
// (equivalently: the iterated distance attains the truncated diameter).
bool ec_bowen_attains(const ECProductPoint& a, const ECProductPoint& b,
                      const ECMetricSpec& spec, long long T);

ECProductPoint ec_apply(const ECProductPoint& p, const ECMetricSpec& spec, long long t);

// Membership in the consistent-phase subspace: one shared y across levels
// and k_n = k_{n+1} mod T+(n).
bool is_W_member(const ECProductPoint& x, const ECMetricSpec& spec);

// ---------------------------------------------------------------------------
// Recursively built word families.

struct RYFamily {
  std::vector<std::vector<Word>> levels;  // words of length T+(n) per level
};

struct RyVerifyReport {
  bool py1 = true;      // level-0 pairs differ on >= 3 blocks
  bool py2 = true;      // level-0 words have a 1 in (0, T(0)-1]
  bool pr1 = true;      // level-n words concatenate level-(n-1) members
  bool pr2 = true;      // level-n pairs differ on >= 3 blocks
  bool py2plus = true;  // every aligned window has a 1 in its (0, T(0)-1] part
  bool size_bound_checked = false;  // one-step greedy bound, when in range
  bool size_bound_ok = true;

  bool all_ok() const { return py1 && py2 && pr1 && pr2 && py2plus && size_bound_ok; }
};

// Greedy list-removal construction per level; `order_seed` 0 keeps the
// natural enumeration order, otherwise the candidate list is shuffled
// deterministically first.
RYFamily build_ry(const ParamSchedule& schedule, int depth, uint64_t order_seed = 0);

RyVerifyReport verify_ry(const RYFamily& ry, const ParamSchedule& schedule);

// Log-space implication: the schedule constraints force the faithful
// family-size lower bound 2^{0.9 T+(n)} (not enumerable at desk scale).
BoundVerdict ry_faithful_bound_implication(const ParamSchedule& schedule, int n);

// y with the word on [0, len) and 0 elsewhere.
BinarySeq seq_from_word(const Word& phi);

// The product point with every coordinate (y_phi, m, 0).
ECProductPoint make_w_point(const Word& phi, const ECMetricSpec& spec);

// One product point per member of the level-n family.
std::vector<ECProductPoint> generate_Wn(const RYFamily& ry, int n, const ECMetricSpec& spec);

// ---------------------------------------------------------------------------
// Separation witnesses and verification.

// Direct scan over t in [0, T+(n)) for a time making levels 0..n attain
// eps simultaneously (tau must be a multiple of T+(n)).
std::optional<long long> separation_witness_direct(const BinarySeq& y, const BinarySeq& z,
                                                   long long tau, int n,
                                                   const ECMetricSpec& spec);

// The recursive block-descent from the existence proof; requires the shifted
// words to be distinct members of the level-n family.
std::optional<long long> separation_witness_descent(const BinarySeq& y, const BinarySeq& z,
                                                    long long tau, int n,
                                                    const ECMetricSpec& spec);

struct WnSeparationReport {
  bool separated = true;  // all pairs attain the truncated diameter at T+(n)
  long long pairs = 0;
  long long family_size = 0;
};

WnSeparationReport verify_Wn_separated(const RYFamily& ry, int n, const ECMetricSpec& spec);

struct SpanLowerReport {
  bool max_property = true;  // every ambient x: at most one family point closer than eps
  long long ambient_size = 0;
  long long wn_size = 0;
  // Implied by the max property and the pigeonhole principle:
  // span(ambient, eps, D_{T+(n)}) >= |W^n|.
  bool pigeonhole_bound = true;
};

// Ambient set: F^tau images of every generated level family for |tau| <= tau_max.
SpanLowerReport verify_span_lower(const RYFamily& ry, int n, const ECMetricSpec& spec,
                                  long long tau_max);

// ---------------------------------------------------------------------------
// Explicit spanning-set constructions.

struct SpanConstructionReport {
  std::string target;
  long long set_size = 0;
  long long stated_bound = 0;
  bool size_ok = true;
  bool spans = true;
  long long sample_size = 0;
};

// delta > truncated diameter: a singleton spans.
SpanConstructionReport span_singleton(const ECMetricSpec& spec,
                                      const std::vector<ECProductPoint>& sample, const Rat& delta,
                                      long long T);

// delta = truncated diameter under the delta-phase clause: {x, F(x)} spans.
SpanConstructionReport span_point_and_image(const ECMetricSpec& spec,
                                            const std::vector<ECProductPoint>& sample,
                                            long long T);

// sum delta_n < delta < diameter: one representative per 0/1 phase vector.
SpanConstructionReport span_phase_lattice(const ECMetricSpec& spec,
                                          const std::vector<ECProductPoint>& sample,
                                          const Rat& delta, long long T);

// Small delta on the consistent-phase subspace: representatives keyed by
// (top phase, y-window); size bound T+(i) 2^{T+m-1}.
SpanConstructionReport span_window_lattice(const ECMetricSpec& spec,
                                           const std::vector<ECProductPoint>& sample,
                                           const Rat& delta, long long T);

// Exact spanning number of the k=0 fiber with y supported in [0, window),
// at resolution delta_i.  At i = 0 this equals 2^{min(T,window)} exactly;
// at deeper i the 2^{(i+1)T} lower bound is verified.
struct FiberSpanReport {
  long long exact_span = 0;
  long long stated_value = 0;
  bool match = false;
};
FiberSpanReport span_fiber_exact(const ECMetricSpec& spec, int window, long long T, int i = 0);

// ---------------------------------------------------------------------------
// Slice reduction for the separation upper bound: solver witnesses of
// separated sets inside a fixed-phase slice map to <=2-chromatic word sets.

struct SliceLe2Report {
  long long slice_size = 0;
  long long sep_size = 0;
  bool le2_ok = true;  // every common-window class maps to <= 2 colors
};

SliceLe2Report verify_sep_upper_slice(const ECMetricSpec& spec, int n, long long k,
                                      long long support_lo, long long support_hi,
                                      const Rat& delta);

// ---------------------------------------------------------------------------
// Transitive-point prefix construction.

struct OrbitTarget {
  long long m = 0;   // window radius; requires m > T+(N)
  Word window;       // length 2m+1, positions -m..m
  long long k = 0;   // required phase at level N
  int N = 0;         // level of the phase requirement
};

struct TransitivePrefix {
  BinarySeq y;
  std::vector<long long> visit_times;  // t(l) per target
  bool verified = false;               // each target window+phase realized
};

TransitivePrefix transitive_prefix(const ECMetricSpec& spec,
                                   const std::vector<OrbitTarget>& targets);

}  // namespace bowenlab
