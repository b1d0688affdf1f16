// Certified rational brackets for log2 and ln.
//
// Inequalities between astronomically large schedule quantities are decided
// in log space against exact lower/upper bounds, never against a float.
// log2 brackets come from integer power comparisons (2^p vs m^q); ln brackets
// come from the atanh series with an explicit geometric remainder bound.
#pragma once

#include "bowen/rational.hpp"

namespace bowenlab {

struct RatInterval {
  Rat lo;
  Rat hi;

  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  Rat width() const { return hi - lo; }

  RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  RatInterval scaled(const Rat& c) const {  // c may be negative
    if (c >= 0) return {lo * c, hi * c};
    return {hi * c, lo * c};
  }
};

inline RatInterval exact_interval(const Rat& x) { return {x, x}; }

// Product/quotient for intervals known to be positive.
inline RatInterval mul_pos(const RatInterval& a, const RatInterval& b) {
  return {a.lo * b.lo, a.hi * b.hi};
}
inline RatInterval div_pos(const RatInterval& a, const RatInterval& b) {
  return {a.lo / b.hi, a.hi / b.lo};
}

// Bracket log2 of a positive rational: returns [p/q, (p+1)/q] with
// 2^p <= x^q < 2^(p+1), certified by exact big-integer comparison.
RatInterval log2_bracket(const Rat& x, unsigned q = 32);

// Bracket ln(x) for positive rational x via 2*atanh((x-1)/(x+1)).
// `terms` series terms plus an exact tail bound.
RatInterval ln_bracket(const Rat& x, int terms = 24);

// ln 2 and ln 3 at the default precision (used by rate arithmetic).
RatInterval ln2_bracket();
RatInterval ln3_bracket();

// Verdict of a bound-certified inequality test.
enum class BoundVerdict { Proved, Refuted, Undecided };

const char* to_string(BoundVerdict v);

// Decide "a < b" (strict) given brackets: proved if a.hi < b.lo,
// refuted if a.lo >= b.hi, otherwise undecided.
inline BoundVerdict decide_less(const RatInterval& a, const RatInterval& b) {
  if (a.hi < b.lo) return BoundVerdict::Proved;
  if (a.lo >= b.hi) return BoundVerdict::Refuted;
  return BoundVerdict::Undecided;
}

// Decide "a <= b".
inline BoundVerdict decide_leq(const RatInterval& a, const RatInterval& b) {
  if (a.hi <= b.lo) return BoundVerdict::Proved;
  if (a.lo > b.hi) return BoundVerdict::Refuted;
  return BoundVerdict::Undecided;
}

// Upper bound on log2(e), certified from a partial sum of e = sum 1/k!.
// Needed for the Stirling lower bound  log2(x!) >= x*(log2 x - log2 e).
Rat log2_e_upper();

}  // namespace bowenlab
