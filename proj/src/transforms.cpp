#include "bowen/transforms.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bowenlab {

FiniteDynSystem scale(const FiniteDynSystem& sys, const Rat& gamma) {
  if (gamma <= 0) throw std::invalid_argument("scale: gamma must be positive");
  FiniteDynSystem out = sys;
  const int n = sys.size();
  out.dist = RatMatrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.dist.set(i, j, sys.dist.at(i, j) * gamma);
  return out;
}

ScaleCheck verify_scale_identities(const FiniteDynSystem& sys, const Rat& gamma,
                                   const Rat& delta, long long T) {
  const FiniteDynSystem scaled = scale(sys, gamma);
  const BowenMatrix bs = bowen(scaled, T);
  const BowenMatrix bb = bowen(sys, T);
  const ThresholdGraph gs = ThresholdGraph::from_bowen(bs, delta);
  const ThresholdGraph gb = ThresholdGraph::from_bowen(bb, delta / gamma);
  ScaleCheck c;
  c.sep_scaled = sep_number(gs).size;
  c.sep_base = sep_number(gb).size;
  c.span_scaled = span_number(gs).size;
  c.span_base = span_number(gb).size;
  c.sep_match = c.sep_scaled == c.sep_base;
  c.span_match = c.span_scaled == c.span_base;
  return c;
}

// ---------------------------------------------------------------------------
// Amplifying.

long long amplify_window_constant(const Rat& gamma, const Rat& delta) {
  if (!(0 < delta && delta <= gamma))
    throw std::invalid_argument("amplify_window_constant: need 0 < delta <= gamma");
  // L = max{ D in N : gamma 2^{-D} >= delta }, so that a first difference of
  // rank D separates at delta exactly when D <= L.
  long long d = 0;
  Rat v = gamma;
  while (v / 2 >= delta) {
    v /= 2;
    ++d;
  }
  return d;
}

AmplifyResult amplify(const FiniteDynSystem& base, long long alphabet, const Rat& gamma,
                      const Rat& delta, long long T) {
  if (alphabet < 2) throw std::invalid_argument("amplify: alphabet size must be >= 2");
  const long long L = amplify_window_constant(gamma, delta);
  const long long W = T + L;  // window length
  // Union over t < T of the rank-(<= L) spiral windows around t.
  const long long lo = -(L / 2);
  const long long hi = T - 1 + (L + 1) / 2;
  if (hi - lo + 1 != W) throw std::logic_error("amplify: window arithmetic off");

  long long reps = 1;
  for (long long i = 0; i < W; ++i) {
    reps *= alphabet;
    if (reps > 200000) throw std::invalid_argument("amplify: window enumeration too large");
  }
  const int nb = base.size();
  const long long N = nb * reps;
  if (N > 5000) throw std::invalid_argument("amplify: product too large for exact solving");

  // Representative sequences: the window symbols at [lo, hi], symbol 0
  // elsewhere.  Horizon-T distances between representatives are exact.
  auto symbol_at = [&](long long rep, long long pos) -> long long {
    if (pos < lo || pos > hi) return 0;
    long long v = rep;
    for (long long i = 0; i < pos - lo; ++i) v /= alphabet;
    return v % alphabet;
  };
  // Spiral first-difference of two shifted representatives.
  auto shifted_delta = [&](long long ra, long long rb, long long t) -> long long {
    long long best = -1;  // -1 = equal
    for (long long pos = lo; pos <= hi; ++pos) {
      if (symbol_at(ra, pos) != symbol_at(rb, pos)) {
        const unsigned long long r = spiral_index(pos - t);
        if (best < 0 || static_cast<long long>(r) < best) best = static_cast<long long>(r);
      }
    }
    return best;
  };

  const BowenMatrix base_bowen = bowen(base, T);
  RatMatrix dist(static_cast<int>(N));
  for (long long a = 0; a < N; ++a) {
    const int xa = static_cast<int>(a / reps);
    const long long ra = a % reps;
    for (long long b = a + 1; b < N; ++b) {
      const int xb = static_cast<int>(b / reps);
      const long long rb = b % reps;
      Rat d = base_bowen.dist_T.at(xa, xb);
      if (ra != rb) {
        long long min_delta = -1;
        for (long long t = 0; t < T; ++t) {
          const long long dd = shifted_delta(ra, rb, t);
          if (dd >= 0 && (min_delta < 0 || dd < min_delta)) min_delta = dd;
        }
        if (min_delta >= 0) {
          const Rat shift_part = gamma / Rat(pow_int(2, static_cast<unsigned long long>(min_delta)));
          if (shift_part > d) d = shift_part;
        }
      }
      dist.set(static_cast<int>(a), static_cast<int>(b), d);
    }
  }

  AmplifyResult res;
  res.window_len = W;
  res.product_size = N;
  const ThresholdGraph gp = ThresholdGraph::from_matrix(dist, delta, T);
  res.sep_product = sep_number(gp).size;
  res.span_product = span_number(gp).size;
  const ThresholdGraph gb = ThresholdGraph::from_bowen(base_bowen, delta);
  res.sep_base = sep_number(gb).size;
  res.span_base = span_number(gb).size;
  res.sep_formula_ok = res.sep_product == reps * res.sep_base;
  res.span_formula_ok = res.span_product == reps * res.span_base;
  return res;
}

// ---------------------------------------------------------------------------
// Combining.

CombinedSpace combine(const std::vector<FiniteDynSystem>& blocks,
                      const std::vector<Rat>& gammas) {
  if (blocks.empty() || blocks.size() != gammas.size())
    throw std::invalid_argument("combine: need matching nonempty blocks and gammas");
  for (size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0 && gammas[i] <= 1))
      throw std::invalid_argument("combine: gammas must lie in (0, 1]");
    if (i + 1 < gammas.size() && !(2 * gammas[i + 1] < gammas[i]))
      throw std::invalid_argument("combine: need 2*gamma_{n+1} < gamma_n");
  }
  CombinedSpace cs;
  cs.gammas = gammas;
  int total = 0;
  for (const auto& b : blocks) {
    cs.block_ranges.push_back({total, total + b.size()});
    total += b.size();
  }
  cs.star_index = total;
  const int n = total + 1;
  cs.space.map.assign(n, 0);
  cs.space.labels.resize(n);
  cs.space.dist = RatMatrix(n);
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto [begin, end] = cs.block_ranges[bi];
    for (int i = begin; i < end; ++i) {
      cs.space.map[i] = begin + blocks[bi].map[i - begin];
      cs.space.labels[i] = "b" + std::to_string(bi) + ":" + std::to_string(i - begin);
    }
  }
  cs.space.map[cs.star_index] = cs.star_index;
  cs.space.labels[cs.star_index] = "star";
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto [abegin, aend] = cs.block_ranges[bi];
    for (int i = abegin; i < aend; ++i) {
      for (int j = i + 1; j < aend; ++j)
        cs.space.dist.set(i, j, blocks[bi].dist.at(i - abegin, j - abegin));
      cs.space.dist.set(i, cs.star_index, 2 * gammas[bi]);
      for (size_t bj = bi + 1; bj < blocks.size(); ++bj) {
        const auto [bbegin, bend] = cs.block_ranges[bj];
        for (int j = bbegin; j < bend; ++j)
          cs.space.dist.set(i, j, 2 * gammas[bi]);  // min(bi, bj) = bi
      }
    }
  }
  return cs;
}

CombineCheck verify_combine(const CombinedSpace& cs, const Rat& delta, long long T) {
  CombineCheck chk;
  chk.axioms_ok = verify_metric_axioms(cs.space).all_pass();

  const BowenMatrix bm = bowen(cs.space, T);
  const ThresholdGraph g = ThresholdGraph::from_bowen(bm, delta);
  chk.span_total = span_number(g).size;
  chk.sep_total = sep_number(g).size;

  if (delta > cs.gammas[0]) {
    chk.coarse_counts_ok = (chk.span_total == 1 || chk.span_total == 2) &&
                           (chk.sep_total == 1 || chk.sep_total == 2);
    chk.xi_in_range = true;
    chk.tail_sep_le2 = true;
    chk.span_sum_ok = chk.sep_sum_ok = true;  // the sum has no block terms here
    return chk;
  }

  // n(delta) = max{ n : gamma_n >= delta }.
  int nd = -1;
  for (size_t i = 0; i < cs.gammas.size(); ++i)
    if (cs.gammas[i] >= delta) nd = static_cast<int>(i);
  if (nd < 0) throw std::logic_error("verify_combine: delta <= gamma_0 yet n(delta) empty");

  long long block_span = 0, block_sep = 0;
  for (int bi = 0; bi <= nd; ++bi) {
    const auto [begin, end] = cs.block_ranges[static_cast<size_t>(bi)];
    std::vector<int> verts;
    for (int v = begin; v < end; ++v) verts.push_back(v);
    const ThresholdGraph sub = g.induced(verts);
    block_span += span_number(sub).size;
    block_sep += sep_number(sub).size;
  }
  std::vector<int> tail;
  for (size_t bi = static_cast<size_t>(nd) + 1; bi < cs.block_ranges.size(); ++bi)
    for (int v = cs.block_ranges[bi].first; v < cs.block_ranges[bi].second; ++v)
      tail.push_back(v);
  tail.push_back(cs.star_index);
  const ThresholdGraph tails = g.induced(tail);
  chk.xi_span = span_number(tails).size;
  chk.xi_sep = sep_number(tails).size;
  chk.xi_in_range = (chk.xi_span == 1 || chk.xi_span == 2) && (chk.xi_sep == 1 || chk.xi_sep == 2);
  chk.tail_sep_le2 = chk.xi_sep <= 2;
  chk.span_sum_ok = chk.span_total == chk.xi_span + block_span;
  chk.sep_sum_ok = chk.sep_total == chk.xi_sep + block_sep;
  return chk;
}

// ---------------------------------------------------------------------------
// Duplication.

DuplicationSpace duplicate(const FiniteDynSystem& x_sys, const FiniteDynSystem& y_sys,
                           const std::vector<int>& f, const Rat& alpha) {
  const int nx = x_sys.size(), ny = y_sys.size();
  if (static_cast<int>(f.size()) != nx)
    throw std::invalid_argument("duplicate: f must map every X-side point");
  std::vector<char> hit(ny, 0);
  for (int v : f) {
    if (v < 0 || v >= ny || hit[v]) throw std::invalid_argument("duplicate: f is not a bijection");
    hit[v] = 1;
  }
  if (nx != ny) throw std::invalid_argument("duplicate: conjugate systems must match in size");
  for (int i = 0; i < nx; ++i)
    if (f[x_sys.map[i]] != y_sys.map[f[i]])
      throw std::invalid_argument("duplicate: f is not equivariant at point " + std::to_string(i));
  for (int i = 0; i < nx; ++i)
    for (int j = i + 1; j < nx; ++j)
      if (x_sys.dist.at(i, j) > y_sys.dist.at(f[i], f[j])) {
        std::ostringstream os;
        os << "duplicate: domination fails at pair (" << i << "," << j << ")";
        throw std::invalid_argument(os.str());
      }
  Rat diam_x = 0, diam_y = 0;
  for (int i = 0; i < nx; ++i)
    for (int j = i + 1; j < nx; ++j) {
      diam_x = std::max(diam_x, x_sys.dist.at(i, j));
      diam_y = std::max(diam_y, y_sys.dist.at(i, j));
    }
  if (!(diam_y > alpha && 2 * alpha > std::max(diam_x, diam_y)))
    throw std::invalid_argument("duplicate: alpha out of range");

  DuplicationSpace ds;
  ds.nx = nx;
  ds.ny = ny;
  ds.f = f;
  ds.alpha = alpha;
  const int n = nx + ny;
  ds.space.map.assign(n, 0);
  ds.space.labels.resize(n);
  ds.space.dist = RatMatrix(n);
  std::vector<int> finv(ny, 0);
  for (int i = 0; i < nx; ++i) finv[f[i]] = i;
  for (int i = 0; i < nx; ++i) {
    ds.space.map[i] = x_sys.map[i];
    ds.space.labels[i] = "x" + std::to_string(i);
  }
  for (int j = 0; j < ny; ++j) {
    ds.space.map[nx + j] = nx + y_sys.map[j];
    ds.space.labels[nx + j] = "y" + std::to_string(j);
  }
  for (int i = 0; i < nx; ++i)
    for (int j = i + 1; j < nx; ++j) ds.space.dist.set(i, j, x_sys.dist.at(i, j));
  for (int i = 0; i < ny; ++i)
    for (int j = i + 1; j < ny; ++j) ds.space.dist.set(nx + i, nx + j, y_sys.dist.at(i, j));
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      ds.space.dist.set(i, nx + j, std::max(alpha, x_sys.dist.at(i, finv[j])));
  return ds;
}

RatMatrix duplication_rho_T(const RatMatrix& DT_x, const RatMatrix& dT_y,
                            const std::vector<int>& f, const Rat& alpha) {
  const int nx = DT_x.size(), ny = dT_y.size();
  std::vector<int> finv(ny, 0);
  for (int i = 0; i < nx; ++i) finv[f[i]] = i;
  RatMatrix rho(nx + ny);
  for (int i = 0; i < nx; ++i)
    for (int j = i + 1; j < nx; ++j) rho.set(i, j, DT_x.at(i, j));
  for (int i = 0; i < ny; ++i)
    for (int j = i + 1; j < ny; ++j) rho.set(nx + i, nx + j, dT_y.at(i, j));
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) rho.set(i, nx + j, std::max(alpha, DT_x.at(i, finv[j])));
  return rho;
}

DuplicateCheck verify_duplicate(const DuplicationSpace& ds, const Rat& delta, long long T) {
  DuplicateCheck chk;
  chk.axioms_ok = verify_metric_axioms(ds.space).all_pass();
  Rat diam_union = 0, diam_y = 0;
  const int n = ds.space.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) diam_union = std::max(diam_union, ds.space.dist.at(i, j));
  for (int i = ds.nx; i < n; ++i)
    for (int j = i + 1; j < n; ++j) diam_y = std::max(diam_y, ds.space.dist.at(i, j));
  chk.diam_ok = diam_union == diam_y;

  const BowenMatrix bm = bowen(ds.space, T);
  const ThresholdGraph gu = ThresholdGraph::from_bowen(bm, delta);
  chk.sep_union = sep_number(gu).size;
  chk.span_union = span_number(gu).size;

  std::vector<int> xs, ys;
  for (int i = 0; i < ds.nx; ++i) xs.push_back(i);
  for (int i = ds.nx; i < n; ++i) ys.push_back(i);
  chk.sep_y = sep_number(gu.induced(ys)).size;
  chk.span_x = span_number(gu.induced(xs)).size;
  chk.sep_sandwich_ok = chk.sep_y <= chk.sep_union && chk.sep_union <= 2 * chk.sep_y;
  if (delta > ds.alpha) {
    chk.span_equality_checked = true;
    chk.span_equality_ok = chk.span_union == chk.span_x;
  }
  return chk;
}

// ---------------------------------------------------------------------------
// The {2,3} conjugate.

ECMetricSpec conjugate_metric_spec(const ECMetricSpec& x_spec) {
  ECMetricSpec y_spec;
  y_spec.schedule = x_spec.schedule;
  for (int n = 0; n < x_spec.depth(); ++n) {
    ECLevelMetric m;
    m.phase_clause = PhaseClause::Dn1e;
    m.tie_rule = TieRule::ConstantEps;
    y_spec.metrics.push_back(m);
  }
  return y_spec;
}

namespace {

ECProductPoint offset_point(const ECProductPoint& p) {
  ECProductPoint q;
  for (const auto& c : p.coords) q.coords.push_back(ECnPoint{c.y.with_offset(2), c.level, c.k});
  return q;
}

}  // namespace

ConjugateCheck conjugate_to_23(const std::vector<ECProductPoint>& xs,
                               const ECMetricSpec& x_spec, long long T) {
  ConjugateCheck chk;
  const ECMetricSpec y_spec = conjugate_metric_spec(x_spec);
  std::vector<ECProductPoint> ys;
  for (const auto& x : xs) ys.push_back(offset_point(x));

  for (size_t i = 0; i < xs.size(); ++i) {
    // f(F(x)) == G(f(x)) coordinatewise.
    const ECProductPoint a = offset_point(ec_apply(xs[i], x_spec, 1));
    const ECProductPoint b = ec_apply(ys[i], y_spec, 1);
    if (!(a == b)) chk.equivariant = false;
  }
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j) {
      if (ec_bowen_distance(xs[i], xs[j], x_spec, T) >
          ec_bowen_distance(ys[i], ys[j], y_spec, T))
        chk.dominated = false;
      for (int lev = 0; lev < x_spec.depth(); ++lev) {
        const auto& xa = xs[i].coords[static_cast<size_t>(lev)];
        const auto& xb = xs[j].coords[static_cast<size_t>(lev)];
        if (xa.k != xb.k || xa.y == xb.y) continue;
        const Rat dx = ecn_distance(xa, xb, x_spec);
        const Rat dy = ecn_distance(ys[i].coords[static_cast<size_t>(lev)],
                                    ys[j].coords[static_cast<size_t>(lev)], y_spec);
        if (delta(xa.y, xb.y) == 0) {
          if (dy != x_spec.eps(lev)) chk.tie_pairs_eps = false;
        } else if (dx != dy) {
          chk.other_pairs_equal = false;
        }
      }
    }
  return chk;
}

// ---------------------------------------------------------------------------
// Subshifts.

namespace {

bool contains_forbidden(const Word& w, const std::vector<Word>& forbidden) {
  for (const auto& f : forbidden) {
    if (f.empty() || f.size() > w.size()) continue;
    for (size_t s = 0; s + f.size() <= w.size(); ++s) {
      bool match = true;
      for (size_t i = 0; i < f.size() && match; ++i) match = w[s + i] == f[i];
      if (match) return true;
    }
  }
  return false;
}

// Can `w` be extended indefinitely?  Walk the suffix graph of order
// max forbidden length.
bool extendable(const Word& w, const std::vector<Word>& forbidden, int lookahead) {
  if (lookahead == 0) return true;
  for (uint8_t s = 0; s <= 1; ++s) {
    Word next = w;
    next.push_back(s);
    if (!contains_forbidden(next, forbidden) && extendable(next, forbidden, lookahead - 1))
      return true;
  }
  return false;
}

}  // namespace

SubshiftReport subshift_equality(const std::vector<Word>& forbidden_words, long long k,
                                 long long T, const Rat& eps) {
  if (k < 2) throw std::invalid_argument("subshift_equality: metric base k must be >= 2");
  if (!(eps > 0 && eps <= 1)) throw std::invalid_argument("subshift_equality: eps in (0,1]");
  // L = least j with k^{-j} < eps.
  long long L = 0;
  Rat v = 1;
  while (!(v < eps)) {
    v /= k;
    ++L;
  }
  const long long R = T - 1 + L;
  const long long ext_len = R + T + 4;

  // All admissible depth-R cylinders, each extended greedily to a genuine
  // admissible point of length ext_len.
  std::vector<Word> points;
  Word cur;
  int maxf = 1;
  for (const auto& f : forbidden_words) maxf = std::max<int>(maxf, static_cast<int>(f.size()));
  std::function<void(Word&)> rec = [&](Word& w) {
    if (static_cast<long long>(w.size()) == R) {
      Word ext = w;
      while (static_cast<long long>(ext.size()) < ext_len) {
        bool placed = false;
        for (uint8_t s = 0; s <= 1 && !placed; ++s) {
          ext.push_back(s);
          if (!contains_forbidden(ext, forbidden_words) &&
              extendable(ext, forbidden_words, maxf + 1)) {
            placed = true;
          } else {
            ext.pop_back();
          }
        }
        if (!placed)
          throw std::runtime_error("subshift_equality: cylinder has no admissible extension");
      }
      points.push_back(ext);
      return;
    }
    for (uint8_t s = 0; s <= 1; ++s) {
      w.push_back(s);
      if (!contains_forbidden(w, forbidden_words)) rec(w);
      w.pop_back();
    }
  };
  rec(cur);

  const int n = static_cast<int>(points.size());
  RatMatrix dist(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      // D_T = k^{-min_t Delta(sigma^t x, sigma^t y)} over one-sided first
      // differences; the extensions are long enough to resolve every t < T.
      long long best = -1;
      for (long long t = 0; t < T; ++t) {
        long long d = -1;
        for (long long p = t; p < ext_len; ++p)
          if (points[a][static_cast<size_t>(p)] != points[b][static_cast<size_t>(p)]) {
            d = p - t;
            break;
          }
        if (d >= 0 && (best < 0 || d < best)) best = d;
      }
      Rat value = 0;
      if (best >= 0) value = Rat(Int(1), pow_int(k, static_cast<unsigned long long>(best)));
      dist.set(a, b, value);
    }

  SubshiftReport rep;
  rep.cylinders = n;
  const ThresholdGraph g = ThresholdGraph::from_matrix(dist, eps, T);
  rep.cov = cov_number(g).size;
  rep.sep = sep_number(g).size;
  rep.span = span_number(g).size;
  rep.equal = rep.cov == rep.sep && rep.sep == rep.span;
  return rep;
}

// ---------------------------------------------------------------------------
// Separation sandwich on the conjugate side.

SandwichReport sandwich_sep23(const std::vector<ECProductPoint>& ys,
                              const ECMetricSpec& y_spec, const Rat& delta, long long T) {
  const Rat eps = y_spec.eps_truncated();
  if (!(0 < delta && delta <= eps))
    throw std::invalid_argument("sandwich_sep23: delta must lie in (0, eps]");
  // Choose M, then N, with eps/3^{M+1} + eps_N/2 < delta <= eps/3^M.
  long long M = 0;
  Rat pw = eps;
  while (delta <= pw / 3) {
    pw /= 3;
    ++M;
    if (M > 200) throw std::invalid_argument("sandwich_sep23: no M for this delta");
  }
  int N = -1;
  for (int n = 0; n < y_spec.depth(); ++n)
    if (pw / 3 + y_spec.eps(n) / 2 < delta) {
      N = n;
      break;
    }
  if (N < 0) throw std::invalid_argument("sandwich_sep23: no (M, N) pair for this delta");

  SandwichReport rep;
  rep.M = M;
  rep.N = N;

  // Sample separation number under the summed conjugate metric.
  const int n = static_cast<int>(ys.size());
  RatMatrix dist(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      dist.set(a, b, ec_bowen_distance(ys[static_cast<size_t>(a)], ys[static_cast<size_t>(b)],
                                       y_spec, T));
  const ThresholdGraph gy = ThresholdGraph::from_matrix(dist, delta, T);
  rep.sep_sample = sep_number(gy).size;

  // Subshift-side: distinct u-sequences with d^{N*} = eps_N 3^{-Delta}.
  std::vector<BinarySeq> us;
  std::vector<int> u_rep;  // index of one sample point per u
  for (int i = 0; i < n; ++i) {
    const BinarySeq& u = ys[static_cast<size_t>(i)].coords[0].y;
    bool seen = false;
    for (const auto& v : us)
      if (v == u) {
        seen = true;
        break;
      }
    if (!seen) {
      us.push_back(u);
      u_rep.push_back(i);
    }
  }
  const int m = static_cast<int>(us.size());
  RatMatrix star(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      unsigned long long best = kDeltaInfinity;
      for (long long t = 0; t < T; ++t) {
        const unsigned long long d = bowenlab::delta(us[static_cast<size_t>(a)].shifted(t),
                                                  us[static_cast<size_t>(b)].shifted(t));
        best = std::min(best, d);
      }
      Rat value = 0;
      if (best != kDeltaInfinity) value = y_spec.eps(N) * pow3_neg(best);
      star.set(a, b, value);
    }
  const Rat star_eps = y_spec.eps(N) / Rat(pow_int(3, static_cast<unsigned long long>(M)));
  const ThresholdGraph gs = ThresholdGraph::from_matrix(star, star_eps, T);
  const SolveResult star_sep = sep_number(gs);
  rep.sep_star = star_sep.size;

  rep.factor = 1;
  for (int i = 0; i <= N; ++i) rep.factor *= y_spec.tplus(i);
  rep.lower_ok = rep.sep_star <= rep.sep_sample;
  rep.upper_ok = Int(rep.sep_sample) <= rep.factor * rep.sep_star;

  // Lift the subshift-side witness back to sample points and re-verify.
  rep.lower_witness_ok = true;
  for (size_t a = 0; a < star_sep.witness.size(); ++a)
    for (size_t b = a + 1; b < star_sep.witness.size(); ++b) {
      const int ia = u_rep[static_cast<size_t>(star_sep.witness[a])];
      const int ib = u_rep[static_cast<size_t>(star_sep.witness[b])];
      if (!(dist.at(ia, ib) >= delta)) rep.lower_witness_ok = false;
    }
  return rep;
}

}  // namespace bowenlab
