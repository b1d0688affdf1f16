#include "bowen/warmup.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace bowenlab {

namespace {

// Rotated period word: rot(w, k)(i) = w((i - k) mod T).
uint64_t rotate_word(uint64_t w, long long k, long long T) {
  uint64_t r = 0;
  for (long long i = 0; i < T; ++i) {
    const long long src = ((i - k) % T + T) % T;
    if ((w >> src) & 1ULL) r |= 1ULL << i;
  }
  return r;
}

Word triple_word(uint64_t u, long long T) {
  Word w(static_cast<size_t>(3 * T), 0);
  for (long long i = 0; i < 3 * T; ++i) w[static_cast<size_t>(i)] = (u >> (i % T)) & 1ULL;
  return w;
}

}  // namespace

int WarmupSystem::point_index(long long k, uint64_t w) const {
  return static_cast<int>(k * (1LL << cfg.T) + static_cast<long long>(w));
}

long long WarmupSystem::phase_of(int idx) const { return idx >> cfg.T; }

uint64_t WarmupSystem::word_of(int idx) const {
  return static_cast<uint64_t>(idx) & ((1ULL << cfg.T) - 1);
}

Word WarmupSystem::phi_value(int idx) const {
  return triple_word(rotate_word(word_of(idx), phase_of(idx), cfg.T), cfg.T);
}

WarmupSystem build_warmup(const WarmupConfig& cfg) {
  if (!(0 < cfg.delta0 && cfg.delta0 < cfg.eps0 && cfg.eps0 < 2 * cfg.delta0))
    throw std::invalid_argument("build_warmup: need delta0 < eps0 < 2*delta0");
  if (cfg.T < 1 || cfg.T > 4) throw std::invalid_argument("build_warmup: T in [1,4]");

  const long long T = cfg.T;
  const long long Tplus = 3 * T;
  const long long words = 1LL << T;
  const int n = static_cast<int>(Tplus * words);

  // Coloring over the realized window words only: every rotation of a
  // period word repeats that rotation three times.
  std::set<Word> realized;
  for (uint64_t u = 0; u < static_cast<uint64_t>(words); ++u)
    realized.insert(triple_word(u, T));
  std::vector<Word> family(realized.begin(), realized.end());
  const ColoringDomain dom{IntervalPartition{0, 3, T}, 1};
  Coloring coloring = Coloring::random_table(family, 3, cfg.variant, dom, cfg.seed);

  WarmupSystem ws{cfg, Tplus, FiniteDynSystem{}, std::move(coloring)};
  ws.sys.map.assign(n, 0);
  ws.sys.labels.resize(n);
  ws.sys.dist = RatMatrix(n);

  for (int idx = 0; idx < n; ++idx) {
    const long long k = ws.phase_of(idx);
    const uint64_t w = ws.word_of(idx);
    // Advance: shift the periodic sequence (rotate the period word one step
    // left) and step the phase.
    const uint64_t wshift = rotate_word(w, -1, T);
    ws.sys.map[idx] = ws.point_index((k + 1) % Tplus, wshift);
    ws.sys.labels[idx] = "k" + std::to_string(k) + "w" + std::to_string(w);
  }

  const IntervalPartition part{0, 3, T};
  for (int a = 0; a < n; ++a) {
    const long long ka = ws.phase_of(a);
    const uint64_t wa = ws.word_of(a);
    for (int b = a + 1; b < n; ++b) {
      const long long kb = ws.phase_of(b);
      const uint64_t wb = ws.word_of(b);
      Rat d;
      if (ka != kb) {
        d = cfg.eps0;
      } else if (wa == wb) {
        d = Rat(0);
      } else if (((wa ^ wb) & 1ULL) == 0) {
        d = cfg.delta0;  // values agree at position 0
      } else {
        const long long j = part.block_of(ka);
        d = ws.coloring.color(ws.phi_value(a), ws.phi_value(b)) == j ? cfg.eps0 : cfg.delta0;
      }
      ws.sys.dist.set(a, b, d);
    }
  }
  return ws;
}

WarmupExperiment warmup_experiment(const WarmupSystem& ws, const Rat& eps,
                                   const std::vector<long long>& horizons) {
  if (!(ws.cfg.delta0 < eps && eps <= ws.cfg.eps0))
    throw std::invalid_argument("warmup_experiment: eps must lie in (delta0, eps0]");
  WarmupExperiment out;
  out.point_count = ws.sys.size();

  std::vector<long long> hs = horizons;
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

  std::map<long long, std::pair<long long, long long>> table;  // horizon -> (sep, span)
  for (long long h : hs) {
    if (h < 1) throw std::invalid_argument("warmup_experiment: horizons must be positive");
    const BowenMatrix bm = bowen(ws.sys, h);
    const ThresholdGraph g = ThresholdGraph::from_bowen(bm, eps);
    table[h] = {sep_number(g).size, span_number(g).size};
  }
  for (long long h : hs) {
    WarmupRow row;
    row.horizon = h;
    row.sep = table[h].first;
    row.span = table[h].second;
    for (long long t1 : hs) {
      const long long t2 = h - t1;
      if (t2 < t1) break;
      if (!table.count(t2)) continue;
      if (row.sep > table[t1].first * table[t2].first ||
          row.span > table[t1].second * table[t2].second)
        row.superadditivity_break = true;
    }
    out.rows.push_back(row);
    if (h == ws.Tplus)
      out.full_horizon_equality = row.sep == out.point_count && row.span == out.point_count;
    if (h == ws.cfg.T) {
      // sep(eps, d_T) <= ceil of R* T^2 with R* = 6 ln2 / ln(3/2); use the
      // bracket's upper endpoint (only meaningful with a coloring certificate).
      const RatInterval rstar = div_pos(ln2_bracket().scaled(Rat(6)),
                                        ln_bracket(Rat(3, 2)));
      out.quadratic_bound_holds = Rat(row.sep) <= rstar.hi * ws.cfg.T * ws.cfg.T;
    }
  }
  return out;
}

SliceReduction warmup_slice_reduction(const WarmupSystem& ws, const Rat& eps, long long k) {
  SliceReduction out;
  const long long words = 1LL << ws.cfg.T;
  std::vector<int> slice;
  for (uint64_t w = 0; w < static_cast<uint64_t>(words); ++w)
    slice.push_back(ws.point_index(k, w));

  const BowenMatrix bm = bowen(ws.sys, ws.cfg.T);
  RatMatrix sub(static_cast<int>(slice.size()));
  for (size_t a = 0; a < slice.size(); ++a)
    for (size_t b = a + 1; b < slice.size(); ++b)
      sub.set(static_cast<int>(a), static_cast<int>(b), bm.dist_T.at(slice[a], slice[b]));
  const ThresholdGraph g = ThresholdGraph::from_matrix(sub, eps, ws.cfg.T);
  const SolveResult sep = sep_number(g);
  out.slice_sep = sep.size;

  std::vector<Word> image;
  for (int v : sep.witness) image.push_back(ws.phi_value(slice[static_cast<size_t>(v)]));
  std::set<Word> distinct(image.begin(), image.end());
  out.phi_injective = distinct.size() == image.size();

  std::set<long long> colors;
  for (size_t a = 0; a < image.size(); ++a)
    for (size_t b = a + 1; b < image.size(); ++b)
      if (image[a] != image[b]) colors.insert(ws.coloring.color(image[a], image[b]));
  out.le2_chromatic = colors.size() <= 2;
  return out;
}

BoundVerdict warmup_failure_arithmetic(long long T) {
  // 3 (ln R* + 2 ln T) < T ln 2, R* = 6 ln 2 / ln(3/2).
  const RatInterval ln2 = ln2_bracket();
  const RatInterval rstar = div_pos(ln2.scaled(Rat(6)), ln_bracket(Rat(3, 2)));
  const RatInterval ln_rstar{ln_bracket(rstar.lo).lo, ln_bracket(rstar.hi).hi};
  const RatInterval lnT = ln_bracket(Rat(T));
  const RatInterval lhs = (ln_rstar + lnT.scaled(Rat(2))).scaled(Rat(3));
  const RatInterval rhs = ln2.scaled(Rat(T));
  return decide_less(lhs, rhs);
}

}  // namespace bowenlab
