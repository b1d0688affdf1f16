#include "bowen/logbounds.hpp"

#include <stdexcept>

namespace bowenlab {

const char* to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::Proved: return "PROVED";
    case BoundVerdict::Refuted: return "REFUTED";
    default: return "UNDECIDED-BY-BOUNDS";
  }
}

RatInterval log2_bracket(const Rat& x, unsigned q) {
  if (x <= 0) throw std::invalid_argument("log2_bracket: positive argument required");
  const Int a = boost::multiprecision::numerator(x);
  const Int b = boost::multiprecision::denominator(x);
  // log2(a/b) = log2(a) - log2(b); each integer log2 bracketed with
  // denominator q via the exact comparison 2^p <= m^q < 2^{p+1}.
  auto int_log2 = [&](const Int& m) -> RatInterval {
    if (m == 1) return {Rat(0), Rat(0)};
    const Int mq = pow_int(m, q);
    const unsigned long long p = boost::multiprecision::msb(mq);  // floor(log2(m^q))
    return {Rat(Int(p), Int(q)), Rat(Int(p + 1), Int(q))};
  };
  const RatInterval la = int_log2(a);
  const RatInterval lb = int_log2(b);
  return la - lb;
}

RatInterval ln_bracket(const Rat& x, int terms) {
  if (x <= 0) throw std::invalid_argument("ln_bracket: positive argument required");
  if (x == 1) return {Rat(0), Rat(0)};
  if (x < 1) {
    const RatInterval inv = ln_bracket(Rat(1) / x, terms);
    return {-inv.hi, -inv.lo};
  }
  // ln x = 2 atanh(t) with t = (x-1)/(x+1) in (0,1).
  const Rat t = (x - 1) / (x + 1);
  const Rat t2 = t * t;
  Rat sum = 0;
  Rat power = t;
  for (int k = 0; k < terms; ++k) {
    sum += power / (2 * k + 1);
    power *= t2;
  }
  // Tail of the series is bounded by the geometric majorant
  // 2 t^{2K+1} / ((2K+1)(1-t^2)).
  const Rat tail = 2 * power / ((2 * terms + 1) * (1 - t2));
  return {2 * sum, 2 * sum + tail};
}

RatInterval ln2_bracket() { return ln_bracket(Rat(2)); }
RatInterval ln3_bracket() { return ln_bracket(Rat(3)); }

Rat log2_e_upper() {
  // e < S + 1/(15 * 15!) with S = sum_{k<=15} 1/k!; the certificate
  // e_hi^9 < 2^13 then gives log2 e < 13/9.
  Rat e_hi = 0;
  Int fact = 1;
  for (int k = 0; k <= 15; ++k) {
    if (k > 0) fact *= k;
    e_hi += Rat(Int(1), fact);
  }
  e_hi += Rat(Int(1), Int(15) * fact);
  const Int num = boost::multiprecision::numerator(e_hi);
  const Int den = boost::multiprecision::denominator(e_hi);
  if (!(pow_int(num, 9) < pow_int(2, 13) * pow_int(den, 9)))
    throw std::logic_error("log2_e_upper: certificate 13/9 failed");
  return Rat(13, 9);
}

}  // namespace bowenlab
