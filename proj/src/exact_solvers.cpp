#include "bowen/exact_solvers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bowenlab {

namespace {

using Bits = std::vector<uint64_t>;

inline bool get_bit(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1ULL; }
inline void set_bit(Bits& b, int i) { b[i >> 6] |= 1ULL << (i & 63); }
inline void clear_bit(Bits& b, int i) { b[i >> 6] &= ~(1ULL << (i & 63)); }

inline int popcount(const Bits& b) {
  int c = 0;
  for (uint64_t w : b) c += __builtin_popcountll(w);
  return c;
}

inline bool empty_and(const Bits& a, const Bits& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return false;
  return true;
}

inline int first_bit(const Bits& b) {
  for (size_t i = 0; i < b.size(); ++i)
    if (b[i]) return static_cast<int>(i * 64 + __builtin_ctzll(b[i]));
  return -1;
}

}  // namespace

ThresholdGraph ThresholdGraph::from_matrix(const RatMatrix& dist_T, const Rat& eps,
                                           long long horizon) {
  ThresholdGraph g;
  g.n_ = dist_T.size();
  g.blocks_ = (g.n_ + 63) / 64;
  g.eps_ = eps;
  g.horizon_ = horizon;
  g.adj_.assign(g.n_, Bits(g.blocks_, 0));
  for (int i = 0; i < g.n_; ++i)
    for (int j = i + 1; j < g.n_; ++j)
      if (dist_T.at(i, j) < eps) {
        set_bit(g.adj_[i], j);
        set_bit(g.adj_[j], i);
      }
  return g;
}

ThresholdGraph ThresholdGraph::from_bowen(const BowenMatrix& bm, const Rat& eps) {
  return from_matrix(bm.dist_T, eps, bm.horizon);
}

bool ThresholdGraph::adjacent(int i, int j) const { return get_bit(adj_[i], j); }

std::vector<std::vector<int>> ThresholdGraph::connected_components() const {
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n_; ++s) {
    if (comp[s] != -1) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int u = 0; u < n_; ++u)
        if (comp[u] == -1 && get_bit(adj_[v], u)) {
          comp[u] = id;
          stack.push_back(u);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

ThresholdGraph ThresholdGraph::induced(const std::vector<int>& verts) const {
  ThresholdGraph g;
  g.n_ = static_cast<int>(verts.size());
  g.blocks_ = (g.n_ + 63) / 64;
  g.eps_ = eps_;
  g.horizon_ = horizon_;
  g.adj_.assign(g.n_, Bits(g.blocks_, 0));
  for (int a = 0; a < g.n_; ++a)
    for (int b = a + 1; b < g.n_; ++b)
      if (adjacent(verts[a], verts[b])) {
        set_bit(g.adj_[a], b);
        set_bit(g.adj_[b], a);
      }
  return g;
}

// ---------------------------------------------------------------------------
// Maximum clique (Tomita-style with greedy coloring bound).

namespace {

struct CliqueSolver {
  int n;
  int blocks;
  const std::vector<Bits>& adj;
  std::vector<int> best;
  std::vector<int> cur;

  CliqueSolver(int n_, const std::vector<Bits>& adj_)
      : n(n_), blocks((n_ + 63) / 64), adj(adj_) {}

  // Greedy coloring of candidate set P; emits vertices with color upper bounds
  // in nondecreasing color order.
  void color_order(const Bits& P, std::vector<int>& order, std::vector<int>& bound) {
    order.clear();
    bound.clear();
    Bits uncolored = P;
    int color = 0;
    while (true) {
      int v0 = first_bit(uncolored);
      if (v0 < 0) break;
      ++color;
      Bits cls = uncolored;
      while (true) {
        int v = first_bit(cls);
        if (v < 0) break;
        clear_bit(cls, v);
        clear_bit(uncolored, v);
        order.push_back(v);
        bound.push_back(color);
        for (int b = 0; b < blocks; ++b) cls[b] &= ~adj[v][b];
      }
    }
  }

  void expand(Bits P) {
    std::vector<int> order, bound;
    color_order(P, order, bound);
    for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
      if (static_cast<int>(cur.size()) + bound[idx] <= static_cast<int>(best.size()))
        return;
      const int v = order[idx];
      cur.push_back(v);
      Bits P2(blocks, 0);
      for (int b = 0; b < blocks; ++b) P2[b] = P[b] & adj[v][b];
      if (first_bit(P2) < 0) {
        if (cur.size() > best.size()) best = cur;
      } else {
        expand(P2);
      }
      cur.pop_back();
      clear_bit(P, v);
    }
  }

  std::vector<int> solve() {
    Bits all(blocks, 0);
    for (int i = 0; i < n; ++i) set_bit(all, i);
    best.clear();
    if (n > 0) expand(all);
    return best;
  }

  bool exists_of_size(Bits P, int need) {
    if (need == 0) return true;
    std::vector<int> order, bound;
    color_order(P, order, bound);
    for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
      if (bound[idx] < need) return false;
      const int v = order[idx];
      Bits P2(blocks, 0);
      for (int b = 0; b < blocks; ++b) P2[b] = P[b] & adj[v][b];
      if (exists_of_size(P2, need - 1)) return true;
      clear_bit(P, v);
    }
    return false;
  }

  // Is there a clique of size >= k containing the (already-clique) set `forced`?
  bool decision(const std::vector<int>& forced, int k) {
    Bits P(blocks, 0);
    for (int i = 0; i < n; ++i) set_bit(P, i);
    for (int v : forced) {
      Bits next(blocks, 0);
      for (int b = 0; b < blocks; ++b) next[b] = P[b] & adj[v][b];
      P = next;
    }
    const int need = k - static_cast<int>(forced.size());
    if (need <= 0) return true;
    return exists_of_size(P, need);
  }
};

std::vector<Bits> complement_adj(const ThresholdGraph& g) {
  const int n = g.size();
  const int blocks = (n + 63) / 64;
  std::vector<Bits> c(n, Bits(blocks, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !g.adjacent(i, j)) set_bit(c[i], j);
  return c;
}

// Lexicographically smallest optimal witness, rebuilt with a decision solver:
// fix a growing prefix and ask whether an optimum extending it still exists.
std::vector<int> lexmin_clique_witness(const std::vector<Bits>& adj, int n, int opt) {
  std::vector<int> chosen;
  CliqueSolver s(n, adj);
  for (int v = 0; v < n && static_cast<int>(chosen.size()) < opt; ++v) {
    bool compatible = true;
    for (int u : chosen)
      if (!get_bit(adj[u], v)) {
        compatible = false;
        break;
      }
    if (!compatible) continue;
    chosen.push_back(v);
    if (!s.decision(chosen, opt)) chosen.pop_back();
  }
  return chosen;
}

}  // namespace

SolveResult max_clique(const std::vector<std::vector<uint64_t>>& adj, int n) {
  CliqueSolver s(n, adj);
  auto w = s.solve();
  SolveResult r;
  r.size = static_cast<long long>(w.size());
  r.witness = lexmin_clique_witness(adj, n, static_cast<int>(w.size()));
  std::sort(r.witness.begin(), r.witness.end());
  return r;
}

SolveResult sep_number(const ThresholdGraph& g) {
  // Independent sets of g are cliques of the complement; solve per component.
  SolveResult total;
  for (const auto& comp : g.connected_components()) {
    ThresholdGraph sub = g.induced(comp);
    auto cadj = complement_adj(sub);
    SolveResult r = max_clique(cadj, sub.size());
    total.size += r.size;
    for (int v : r.witness) total.witness.push_back(comp[v]);
  }
  std::sort(total.witness.begin(), total.witness.end());
  if (g.size() == 0) total.size = 0;
  return total;
}

// ---------------------------------------------------------------------------
// Minimum dominating set (exact set cover over closed neighborhoods).

namespace {

struct DomSolver {
  const ThresholdGraph& g;
  int n;
  int blocks;
  std::vector<Bits> closed;  // closed[v] = N(v) | {v}
  int best_size;
  std::vector<int> best;
  std::vector<int> cur;

  explicit DomSolver(const ThresholdGraph& g_) : g(g_), n(g_.size()), blocks(g_.blocks()) {
    closed.assign(n, Bits(blocks, 0));
    for (int v = 0; v < n; ++v) {
      closed[v] = g.row(v);
      set_bit(closed[v], v);
    }
    best_size = n + 1;
  }

  int greedy_from(Bits uncovered, int already) {
    int used = already;
    while (first_bit(uncovered) >= 0) {
      int bestv = -1, bestc = -1;
      for (int v = 0; v < n; ++v) {
        int c = 0;
        for (int b = 0; b < blocks; ++b) c += __builtin_popcountll(closed[v][b] & uncovered[b]);
        if (c > bestc) {
          bestc = c;
          bestv = v;
        }
      }
      for (int b = 0; b < blocks; ++b) uncovered[b] &= ~closed[bestv][b];
      ++used;
    }
    return used;
  }

  int max_cover_size(const Bits& uncovered) const {
    int m = 1;
    for (int v = 0; v < n; ++v) {
      int c = 0;
      for (int b = 0; b < blocks; ++b) c += __builtin_popcountll(closed[v][b] & uncovered[b]);
      m = std::max(m, c);
    }
    return m;
  }

  void search(const Bits& uncovered) {
    const int ucnt = popcount(uncovered);
    if (ucnt == 0) {
      if (static_cast<int>(cur.size()) < best_size) {
        best_size = static_cast<int>(cur.size());
        best = cur;
      }
      return;
    }
    const int lower =
        static_cast<int>(cur.size()) + (ucnt + max_cover_size(uncovered) - 1) / max_cover_size(uncovered);
    if (lower >= best_size) return;
    // Branch on the uncovered vertex with the fewest dominators.
    int pick = -1, pickdeg = n + 1;
    for (int v = 0; v < n; ++v) {
      if (!get_bit(uncovered, v)) continue;
      const int deg = popcount(closed[v]);
      if (deg < pickdeg) {
        pickdeg = deg;
        pick = v;
      }
    }
    for (int d = 0; d < n; ++d) {
      if (!get_bit(closed[d], pick)) continue;
      cur.push_back(d);
      Bits next = uncovered;
      for (int b = 0; b < blocks; ++b) next[b] &= ~closed[d][b];
      search(next);
      cur.pop_back();
      if (best_size == static_cast<int>(cur.size()) + 1) return;  // cannot improve
    }
  }

  // Minimum dominating set size given forced picks; -1-free decision helper.
  int solve_min(const std::vector<int>& forced) {
    Bits uncovered(blocks, 0);
    for (int i = 0; i < n; ++i) set_bit(uncovered, i);
    cur = forced;
    for (int v : forced)
      for (int b = 0; b < blocks; ++b) uncovered[b] &= ~closed[v][b];
    best_size = greedy_from(uncovered, static_cast<int>(forced.size()));
    best.clear();
    search(uncovered);
    return best_size;
  }
};

}  // namespace

SolveResult span_number(const ThresholdGraph& g) {
  SolveResult total;
  for (const auto& comp : g.connected_components()) {
    ThresholdGraph sub = g.induced(comp);
    DomSolver solver(sub);
    const int opt = solver.solve_min({});
    // Lexicographic reconstruction against the optimum.
    std::vector<int> chosen;
    for (int v = 0; v < sub.size() && static_cast<int>(chosen.size()) < opt; ++v) {
      auto trial = chosen;
      trial.push_back(v);
      DomSolver s2(sub);
      if (s2.solve_min(trial) == opt) chosen = trial;
    }
    total.size += opt;
    for (int v : chosen) total.witness.push_back(comp[v]);
  }
  std::sort(total.witness.begin(), total.witness.end());
  return total;
}

// ---------------------------------------------------------------------------
// Minimum clique cover = chromatic number of the complement.

namespace {

// Exact graph coloring by branch and bound over vertices in DSATUR order.
struct ChromSolver {
  int n;
  const std::vector<Bits>& adj;  // graph to color (the complement of g)
  std::vector<int> color;       // 0 = uncolored
  std::vector<int> best_assign;
  int best_count;

  ChromSolver(int n_, const std::vector<Bits>& adj_) : n(n_), adj(adj_) {
    color.assign(n, 0);
    best_count = n + 1;
  }

  int saturation(int v) const {
    std::vector<char> seen(n + 2, 0);
    int s = 0;
    for (int u = 0; u < n; ++u)
      if (color[u] && get_bit(adj[v], u) && !seen[color[u]]) {
        seen[color[u]] = 1;
        ++s;
      }
    return s;
  }

  void search(int colored, int used) {
    if (used >= best_count) return;
    if (colored == n) {
      best_count = used;
      best_assign = color;
      return;
    }
    // DSATUR pick: max saturation, ties by degree then index.
    int pick = -1, psat = -1, pdeg = -1;
    for (int v = 0; v < n; ++v) {
      if (color[v]) continue;
      const int s = saturation(v);
      const int d = popcount(adj[v]);
      if (s > psat || (s == psat && d > pdeg)) {
        psat = s;
        pdeg = d;
        pick = v;
      }
    }
    for (int c = 1; c <= std::min(used + 1, best_count - 1); ++c) {
      bool ok = true;
      for (int u = 0; u < n && ok; ++u)
        if (color[u] == c && get_bit(adj[pick], u)) ok = false;
      if (!ok) continue;
      color[pick] = c;
      search(colored + 1, std::max(used, c));
      color[pick] = 0;
    }
  }

  int solve() {
    if (n == 0) return 0;
    search(0, 0);
    return best_count;
  }
};

}  // namespace

CovResult cov_number(const ThresholdGraph& g) {
  CovResult total;
  for (const auto& comp : g.connected_components()) {
    ThresholdGraph sub = g.induced(comp);
    auto cadj = complement_adj(sub);
    ChromSolver solver(sub.size(), cadj);
    const int k = solver.solve();
    total.size += k;
    std::vector<std::vector<int>> cells(k);
    for (int v = 0; v < sub.size(); ++v) cells[solver.best_assign[v] - 1].push_back(comp[v]);
    for (auto& cell : cells) {
      std::sort(cell.begin(), cell.end());
      total.cells.push_back(std::move(cell));
    }
  }
  std::sort(total.cells.begin(), total.cells.end());
  return total;
}

// ---------------------------------------------------------------------------
// Brute-force oracles.

long long oracle_brute(const ThresholdGraph& g, CountKind which) {
  const int n = g.size();
  if (n > 20) throw std::invalid_argument("oracle_brute: n > 20 is out of exhaustive range");
  std::vector<uint32_t> nbr(n, 0);  // closed neighborhood masks
  std::vector<uint32_t> open(n, 0);
  for (int i = 0; i < n; ++i) {
    nbr[i] = 1u << i;
    for (int j = 0; j < n; ++j)
      if (j != i && g.adjacent(i, j)) {
        nbr[i] |= 1u << j;
        open[i] |= 1u << j;
      }
  }
  const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);

  if (which == CountKind::Sep) {
    // independent(mask) via DP on lowest bit
    std::vector<char> ind(1u << n, 0);
    ind[0] = 1;
    long long best = 0;
    for (uint32_t m = 1; m <= full; ++m) {
      const int v = __builtin_ctz(m);
      const uint32_t rest = m & (m - 1);
      ind[m] = ind[rest] && ((open[v] & rest) == 0);
      if (ind[m]) best = std::max<long long>(best, __builtin_popcount(m));
    }
    return best;
  }
  if (which == CountKind::Span) {
    long long best = n;
    for (uint32_t m = 0; m <= full; ++m) {
      uint32_t covered = 0;
      uint32_t mm = m;
      while (mm) {
        covered |= nbr[__builtin_ctz(mm)];
        mm &= mm - 1;
      }
      if (covered == full) best = std::min<long long>(best, __builtin_popcount(m));
    }
    return best;
  }
  // Cov: enumerate partitions into cliques by assigning vertices in order to
  // an existing compatible cell or one fresh cell.
  struct Part {
    int n;
    const ThresholdGraph& g;
    std::vector<uint32_t> cellmask;
    int best;
    Part(int n_, const ThresholdGraph& g_) : n(n_), g(g_), best(n_) {}
    bool clique_compatible(uint32_t mask, int v) const {
      uint32_t mm = mask;
      while (mm) {
        if (!g.adjacent(v, __builtin_ctz(mm))) return false;
        mm &= mm - 1;
      }
      return true;
    }
    void rec(int v) {
      if (static_cast<int>(cellmask.size()) >= best) return;
      if (v == n) {
        best = static_cast<int>(cellmask.size());
        return;
      }
      const size_t existing = cellmask.size();  // recursion grows the list
      for (size_t ci = 0; ci < existing; ++ci) {
        if (clique_compatible(cellmask[ci], v)) {
          cellmask[ci] |= 1u << v;
          rec(v + 1);
          cellmask[ci] &= ~(1u << v);
        }
      }
      cellmask.push_back(1u << v);
      rec(v + 1);
      cellmask.pop_back();
    }
  } part(n, g);
  if (n == 0) return 0;
  part.rec(0);
  return part.best;
}

ChainReport chain_check(const FiniteDynSystem& sys, long long T, const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("chain_check: eps must be positive");
  const BowenMatrix bm = bowen(sys, T);
  const ThresholdGraph at_eps = ThresholdGraph::from_bowen(bm, eps);
  const ThresholdGraph at_2eps = ThresholdGraph::from_bowen(bm, eps * 2);
  ChainReport r;
  r.cov_eps = cov_number(at_eps).size;
  r.sep_eps = sep_number(at_eps).size;
  r.span_eps = span_number(at_eps).size;
  r.cov_2eps = cov_number(at_2eps).size;
  r.holds = r.cov_eps >= r.sep_eps && r.sep_eps >= r.span_eps && r.span_eps >= r.cov_2eps;
  return r;
}

}  // namespace bowenlab
