// Exact arithmetic used everywhere: arbitrary-precision integers and
// rationals, plus parsing/printing of the canonical "p/q" form.
//
// No distance, threshold, or constraint comparison in this codebase goes
// through floating point.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace bowenlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(Int(num), Int(den));
}

// 3^e and 2^e for nonnegative integer e.
inline Int pow_int(const Int& base, unsigned long long e) {
  Int r = 1, b = base;
  while (e > 0) {
    if (e & 1ULL) r *= b;
    b *= b;
    e >>= 1ULL;
  }
  return r;
}

inline Rat pow3_neg(unsigned long long e) { return Rat(Int(1), pow_int(3, e)); }

// Canonical form: "p" or "p/q" with q > 0 and gcd(p,q)=1 (boost normalizes).
inline std::string rat_to_string(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::optional<Rat> parse_rat(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    const Int num(s.substr(0, slash));
    const Int den(s.substr(slash + 1));
    if (den == 0) return std::nullopt;
    return Rat(num, den);
  } catch (...) {
    return std::nullopt;
  }
}

inline Rat parse_rat_or_throw(const std::string& s) {
  auto r = parse_rat(s);
  if (!r) throw std::invalid_argument("bad rational literal: " + s);
  return *r;
}

}  // namespace bowenlab
