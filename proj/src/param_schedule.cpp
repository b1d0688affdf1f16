#include "bowen/param_schedule.hpp"

#include "bowen/logbounds.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bowenlab {

// --------------------------------------------------------------------------
// Schedule structure.

long long ParamSchedule::tplus_before(int n) const {
  return n == 0 ? 1 : levels[n - 1].Tplus;
}

Rat ParamSchedule::eps_total() const {
  Rat s = 0;
  for (const auto& l : levels) s += l.eps;
  return s;
}

bool ParamSchedule::structure_ok(std::string* why) const {
  for (size_t n = 0; n < levels.size(); ++n) {
    const auto& l = levels[n];
    if (l.C < 1 || l.K < 1 || l.T < 1 || l.Tplus < 1) {
      if (why) *why = "level " + std::to_string(n) + ": nonpositive parameter";
      return false;
    }
    if (l.Tplus != l.C * l.T) {
      if (why) *why = "level " + std::to_string(n) + ": T+(n) != C(n)T(n)";
      return false;
    }
    if (l.T != l.K * tplus_before(static_cast<int>(n))) {
      if (why) *why = "level " + std::to_string(n) + ": T(n) != K(n)T+(n-1)";
      return false;
    }
  }
  return true;
}

// --------------------------------------------------------------------------
// Constraint checker.

namespace {

// Largest exponent for which 3^e is materialized as an exact integer
// (~3 Mbit); larger gaps stay symbolic.
constexpr long long kMaxPow3Exponent = 2'000'000;

ConstraintResult make_result(const std::string& name, BoundVerdict v, const std::string& detail) {
  return ConstraintResult{name, v, detail};
}

// log2 of the printed right-hand side of the level-n product constraint,
// as an exact integer-coefficient combination of log2(C(m)^2/2) terms:
// coeff[m] = prod_{i=m+1..n} (C(i)-2)K(i), coeff[n] = 1.
std::vector<Int> rhs_coefficients_direct(const ParamSchedule& s, int n) {
  std::vector<Int> coeff(n + 1, 0);
  coeff[n] = 1;
  for (int m = 0; m < n; ++m) {
    Int c = 1;
    for (int i = m + 1; i <= n; ++i) c *= Int(s.levels[i].C - 2) * s.levels[i].K;
    coeff[m] = c;
  }
  return coeff;
}

// Same combination derived from the recursion RHS(n) = (C(n)^2/2) * RHS(n-1)^{(C(n)-2)K(n)}.
std::vector<Int> rhs_coefficients_recursive(const ParamSchedule& s, int n) {
  std::vector<Int> coeff{Int(1)};
  for (int lev = 1; lev <= n; ++lev) {
    const Int e = Int(s.levels[lev].C - 2) * s.levels[lev].K;
    for (auto& c : coeff) c *= e;
    coeff.push_back(1);
  }
  return coeff;
}

RatInterval log2_of_combination(const ParamSchedule& s, const std::vector<Int>& coeff,
                                unsigned prec) {
  RatInterval acc{Rat(0), Rat(0)};
  for (size_t m = 0; m < coeff.size(); ++m) {
    if (coeff[m] == 0) continue;
    const Rat base = Rat(Int(s.levels[m].C) * s.levels[m].C, 2);
    RatInterval l = log2_bracket(base, prec);
    acc = acc + l.scaled(Rat(coeff[m]));
  }
  return acc;
}

}  // namespace

std::vector<ConstraintResult> check_constraints(const ParamSchedule& s) {
  std::vector<ConstraintResult> out;
  std::string why;
  if (!s.structure_ok(&why)) {
    out.push_back(make_result("structure", BoundVerdict::Refuted, why));
    return out;
  }
  const int L = static_cast<int>(s.levels.size());
  const Rat log2e_hi = log2_e_upper();

  for (int n = 0; n < L; ++n) {
    const auto& lev = s.levels[n];
    const std::string sn = std::to_string(n);

    // (PCn): prod (C(i)-2) > 0.95 prod C(i), exact big-int form 20*prod(C-2) > 19*prod C.
    {
      Int lhs = 20, rhs = 19;
      for (int i = 0; i <= n; ++i) {
        lhs *= Int(s.levels[i].C - 2);
        rhs *= Int(s.levels[i].C);
      }
      out.push_back(make_result("PC" + sn,
                                lhs > rhs ? BoundVerdict::Proved : BoundVerdict::Refuted,
                                "20*prod(C-2) vs 19*prod(C)"));
    }

    // (PKn1): K(n) multiple of 100.
    out.push_back(make_result("PK" + sn + "1",
                              lev.K % 100 == 0 ? BoundVerdict::Proved : BoundVerdict::Refuted,
                              "K=" + std::to_string(lev.K)));

    // (PKn2): 2^{0.05 T+(n)} > (C(n)^2/2) * prod_m (C(m)^2/2)^{prod (C(i)-2)K(i)}.
    {
      const Rat lhs_log = Rat(Int(lev.Tplus), 20);
      const auto direct = rhs_coefficients_direct(s, n);
      const auto recur = rhs_coefficients_recursive(s, n);
      if (direct != recur) {
        out.push_back(make_result("PK" + sn + "2", BoundVerdict::Undecided,
                                  "direct and recursive RHS readings disagree"));
      } else {
        BoundVerdict v = BoundVerdict::Undecided;
        for (unsigned prec = 16; prec <= 256; prec *= 4) {
          const RatInterval rhs_log = log2_of_combination(s, direct, prec);
          v = decide_less(rhs_log, exact_interval(lhs_log));
          if (v != BoundVerdict::Undecided) break;
        }
        out.push_back(make_result("PK" + sn + "2", v, "log2 comparison"));
      }
    }

    // (PKn3): (2^{0.7 T(n)})! > C(n)^2/2.  One-sided Stirling certificate:
    // log2(x!) >= x (log2 x - log2 e); refutation side uses x! <= x^x.
    // For exponents past the materialization cap, x is replaced by the lower
    // bound 2^cap (sound for the PROVED side only).
    {
      BoundVerdict v = BoundVerdict::Undecided;
      std::string detail = "Stirling lower bound";
      if (lev.T * 7 % 10 != 0) detail = "0.7T(n) not an integer; floor exponent used";
      const long long e7 = lev.T * 7 / 10;
      constexpr long long kPowCap = 4096;
      const bool capped = e7 > kPowCap;
      const Int x_lo = pow_int(2, static_cast<unsigned long long>(capped ? kPowCap : e7));
      const Rat rhs = Rat(Int(lev.C) * lev.C, 2);
      const RatInterval rhs_log = log2_bracket(rhs, 32);
      const Rat stirling_lo = Rat(x_lo) * (Rat(e7) - log2e_hi);
      if (e7 >= 2 && stirling_lo > rhs_log.hi) {
        v = BoundVerdict::Proved;
      } else if (!capped) {
        const Rat naive_hi = Rat(x_lo) * Rat(e7);  // log2(x!) <= x log2 x
        if (naive_hi < rhs_log.lo) v = BoundVerdict::Refuted;
      }
      out.push_back(make_result("PK" + sn + "3", v, detail));
    }

    // (PKn4): (log2 sqrt(3/2)) (2^{0.7T(n)} - 1) > C(n)T(n), i.e.
    // (log2 3 - 1)(2^{0.7T(n)} - 1) > 2 C(n) T(n).
    {
      const long long e7 = lev.T * 7 / 10;
      constexpr long long kPowCap = 4096;
      const bool capped = e7 > kPowCap;
      const Int x_lo = pow_int(2, static_cast<unsigned long long>(capped ? kPowCap : e7)) - 1;
      const Rat rhs = Rat(Int(2) * lev.C * lev.T);
      // 19/12 < log2 3 < 27/17, certified by 2^19 < 3^12 and 3^17 < 2^27.
      if (!(pow_int(2, 19) < pow_int(3, 12)) || !(pow_int(3, 17) < pow_int(2, 27)))
        throw std::logic_error("log2(3) certificates failed");
      const Rat lo = Rat(x_lo) * (Rat(19, 12) - 1);
      BoundVerdict v = BoundVerdict::Undecided;
      if (lo > rhs) v = BoundVerdict::Proved;
      else if (!capped && Rat(x_lo) * (Rat(27, 17) - 1) <= rhs) v = BoundVerdict::Refuted;
      out.push_back(make_result("PK" + sn + "4", v, "via 19/12 < log2 3 < 27/17"));
    }

    // (PKn5): 2^{0.01 T(n)} >= C(n).
    {
      BoundVerdict v;
      if (lev.T % 100 == 0) {
        const Int lhs = pow_int(2, static_cast<unsigned long long>(lev.T / 100));
        v = lhs >= Int(lev.C) ? BoundVerdict::Proved : BoundVerdict::Refuted;
      } else {
        // Compare in log space: T(n)/100 >= log2 C(n).
        const RatInterval lc = log2_bracket(Rat(Int(lev.C)), 64);
        v = decide_leq(lc, exact_interval(Rat(Int(lev.T), 100)));
      }
      out.push_back(make_result("PK" + sn + "5", v, "2^{0.01T} vs C"));
    }
  }

  // Epsilon/delta block, only when populated.
  if (s.has_eps_delta) {
    bool dec = true, pos = true;
    for (int n = 0; n < L; ++n) {
      if (s.levels[n].eps <= 0) pos = false;
      if (n + 1 < L && !(s.levels[n + 1].eps < s.levels[n].eps)) dec = false;
    }
    out.push_back(make_result("Peps",
                              (dec && pos) ? BoundVerdict::Proved : BoundVerdict::Refuted,
                              "strictly decreasing positive eps_n, finite sum"));
    for (int n = 0; n < L; ++n) {
      const auto& lev = s.levels[n];
      const std::string sn = std::to_string(n);
      const bool d1 = 0 < lev.delta && lev.delta < lev.eps && lev.eps < 2 * lev.delta;
      out.push_back(make_result("Pdelta1." + sn,
                                d1 ? BoundVerdict::Proved : BoundVerdict::Refuted,
                                "0 < delta < eps < 2 delta"));
      Rat tail = 0;
      for (int m = n + 1; m < L; ++m) tail += s.levels[m].eps;
      const bool d2 = tail < Rat(1, 2) * (lev.eps - lev.delta);
      out.push_back(make_result("Pdelta2." + sn,
                                d2 ? BoundVerdict::Proved : BoundVerdict::Refuted,
                                "tail sum vs 0.5(eps-delta)"));
      const Rat gap = lev.eps - lev.delta;
      const long long e3 = 2 * s.lambda * lev.Tplus;
      if (e3 > kMaxPow3Exponent) {
        out.push_back(make_result("Pdelta3." + sn, BoundVerdict::Undecided,
                                  "3^{2 lambda T+} beyond materialization cap"));
      } else {
        const Rat bound = lev.eps * pow3_neg(static_cast<unsigned long long>(e3));
        out.push_back(make_result("Pdelta3." + sn,
                                  gap < bound ? BoundVerdict::Proved : BoundVerdict::Refuted,
                                  "eps-delta vs eps*3^{-2 lambda T+}"));
      }
    }
    for (int n = 1; n < L; ++n) {
      bool ok = true;
      for (int m = 0; m < n && ok; ++m) {
        Rat sum = 0;
        for (int i = m + 1; i <= n; ++i) sum += s.levels[i].eps;
        if (!(sum < Rat(2, 5) * (s.levels[m].eps - s.levels[m].delta))) ok = false;
      }
      out.push_back(make_result("ED" + std::to_string(n),
                                ok ? BoundVerdict::Proved : BoundVerdict::Refuted,
                                "partial eps sums vs 0.4(eps_m - delta_m)"));
    }
  }
  return out;
}

bool all_proved(const std::vector<ConstraintResult>& results) {
  for (const auto& r : results)
    if (r.verdict != BoundVerdict::Proved) return false;
  return true;
}

// --------------------------------------------------------------------------
// Generators.

namespace {

bool level_params_pass(const ParamSchedule& s) {
  for (const auto& r : check_constraints(s))
    if (r.verdict != BoundVerdict::Proved) return false;
  return true;
}

void recompute_times(ParamSchedule& s) {
  constexpr long long kMax = 4'000'000'000'000'000'000LL;
  for (size_t n = 0; n < s.levels.size(); ++n) {
    auto& l = s.levels[n];
    const __int128 t = static_cast<__int128>(l.K) * s.tplus_before(static_cast<int>(n));
    const __int128 tp = t * l.C;
    if (t > kMax || tp > kMax)
      throw std::overflow_error("schedule times exceed representable range at level " +
                                std::to_string(n));
    l.T = static_cast<long long>(t);
    l.Tplus = static_cast<long long>(tp);
  }
}

}  // namespace

ParamSchedule generate_faithful(int n_levels) {
  if (n_levels < 1) throw std::invalid_argument("generate_faithful: need >= 1 level");
  ParamSchedule s;
  s.profile = ScheduleProfile::Faithful;
  s.lambda = 1;
  s.has_eps_delta = false;
  Rat partial(1);
  for (int n = 0; n < n_levels; ++n) {
    // Smallest C(n) >= 3 keeping prod (1 - 2/C(i)) > 0.95, by doubling then
    // binary refinement.
    long long lo = 3, hi = 3;
    auto ok_c = [&](long long c) { return partial * Rat(Int(c - 2), Int(c)) > Rat(19, 20); };
    while (!ok_c(hi)) {
      hi *= 2;
      if (hi > (1LL << 50)) throw std::runtime_error("generate_faithful: C search overflow");
    }
    lo = hi / 2 < 3 ? 3 : hi / 2;
    while (lo < hi) {
      const long long mid = lo + (hi - lo) / 2;
      if (ok_c(mid)) hi = mid;
      else lo = mid + 1;
    }
    const long long C = hi;
    partial *= Rat(Int(C - 2), Int(C));

    s.levels.push_back(Level{C, 100, 0, 0, Rat(0), Rat(0)});
    recompute_times(s);
    // Doubling search on K(n) in multiples of 100 (safety cap well beyond
    // anything the recursion needs), then refine to the smallest passing value.
    long long K = 100;
    const long long cap = 1LL << 40;
    auto pass_with = [&](long long k) {
      s.levels[n].K = k;
      recompute_times(s);
      return level_params_pass(s);
    };
    while (!pass_with(K)) {
      K *= 2;
      if (K > cap) throw std::runtime_error("generate_faithful: K search exceeded cap");
    }
    long long klo = K / 2 < 100 ? 100 : K / 2, khi = K;
    while (klo < khi) {
      long long mid = klo + (khi - klo) / 2;
      mid -= mid % 100;
      if (mid < klo) mid = klo;
      if (pass_with(mid)) khi = mid;
      else klo = mid + 100;
    }
    pass_with(khi);
  }
  return s;
}

ParamSchedule generate_eps_delta(ParamSchedule s) {
  std::string why;
  if (!s.structure_ok(&why)) throw std::invalid_argument("generate_eps_delta: " + why);
  const int L = static_cast<int>(s.levels.size());
  for (const auto& lev : s.levels)
    if (2 * s.lambda * lev.Tplus + 1 > kMaxPow3Exponent)
      throw std::invalid_argument(
          "generate_eps_delta: 3^{2 lambda T+} beyond materialization cap; "
          "eps/delta for such levels stay symbolic");
  for (int n = 0; n < L; ++n) {
    auto& lev = s.levels[n];
    if (n == 0) {
      lev.eps = Rat(1, 2);
    } else {
      // Small enough for every (EDm) prefix: stay below a third of the
      // previous level's eps-delta gap (itself a power of 3).
      const auto& prev = s.levels[n - 1];
      lev.eps = (prev.eps - prev.delta) / 9;
    }
    const unsigned long long e = static_cast<unsigned long long>(2 * s.lambda * lev.Tplus) + 1;
    lev.delta = lev.eps * (1 - pow3_neg(e));
  }
  s.has_eps_delta = true;
  return s;
}

// --------------------------------------------------------------------------
// Serialization: plain-text key=value.

std::string to_text(const ParamSchedule& s) {
  std::ostringstream os;
  os << "levels=" << s.levels.size() << "\n";
  os << "profile=" << (s.profile == ScheduleProfile::Faithful ? "faithful" : "surrogate") << "\n";
  os << "lambda=" << s.lambda << "\n";
  for (size_t n = 0; n < s.levels.size(); ++n) {
    const auto& l = s.levels[n];
    os << "level." << n << ".C=" << l.C << "\n";
    os << "level." << n << ".K=" << l.K << "\n";
    os << "level." << n << ".T=" << l.T << "\n";
    os << "level." << n << ".Tplus=" << l.Tplus << "\n";
    if (s.has_eps_delta) {
      os << "eps." << n << "=" << rat_to_string(l.eps) << "\n";
      os << "delta." << n << "=" << rat_to_string(l.delta) << "\n";
    }
  }
  return os.str();
}

ParamSchedule schedule_from_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad schedule line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  ParamSchedule s;
  const int L = std::stoi(kv.at("levels"));
  s.profile = kv.at("profile") == "faithful" ? ScheduleProfile::Faithful
                                             : ScheduleProfile::Surrogate;
  s.lambda = kv.count("lambda") ? std::stoll(kv.at("lambda")) : 1;
  s.has_eps_delta = kv.count("eps.0") > 0;
  for (int n = 0; n < L; ++n) {
    Level l;
    const std::string p = "level." + std::to_string(n) + ".";
    l.C = std::stoll(kv.at(p + "C"));
    l.K = std::stoll(kv.at(p + "K"));
    l.T = std::stoll(kv.at(p + "T"));
    l.Tplus = std::stoll(kv.at(p + "Tplus"));
    if (s.has_eps_delta) {
      l.eps = parse_rat_or_throw(kv.at("eps." + std::to_string(n)));
      l.delta = parse_rat_or_throw(kv.at("delta." + std::to_string(n)));
    }
    s.levels.push_back(l);
  }
  return s;
}

ParamSchedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schedule file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return schedule_from_text(buf.str());
}

void save_schedule(const ParamSchedule& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write schedule file: " + path);
  out << to_text(s);
}

ParamSchedule surrogate_schedule(const std::vector<std::pair<long long, long long>>& ck) {
  ParamSchedule s;
  s.profile = ScheduleProfile::Surrogate;
  s.lambda = 1;
  for (auto [C, K] : ck) s.levels.push_back(Level{C, K, 0, 0, Rat(0), Rat(0)});
  recompute_times(s);
  return generate_eps_delta(s);
}

}  // namespace bowenlab
