#include "bowen/colorings.hpp"

#include "bowen/exact_solvers.hpp"
#include "bowen/rational.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bowenlab {

const char* to_string(ColoringVariant v) {
  switch (v) {
    case ColoringVariant::CC1Family: return "cC1";
    case ColoringVariant::CCiFamily: return "cCi";
    default: return "unconstrained";
  }
}

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t uniform_below(uint64_t& state, uint64_t n) {
  // Rejection sampling on the mixed counter stream; unbiased and portable.
  const uint64_t limit = ~0ULL - (~0ULL % n);
  while (true) {
    state = mix64(state);
    if (state < limit) return state % n;
  }
}

namespace {

bool heads_differ(const Word& a, const Word& b, long long head) {
  for (long long i = 0; i < head; ++i)
    if (a[static_cast<size_t>(i)] != b[static_cast<size_t>(i)]) return true;
  return false;
}

bool tails_equal(const Word& a, const Word& b, long long head) {
  for (size_t i = static_cast<size_t>(head); i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool tail_zero(const Word& a, long long head) {
  for (size_t i = static_cast<size_t>(head); i < a.size(); ++i)
    if (a[i]) return false;
  return true;
}

uint64_t hash_word(uint64_t h, const Word& w) {
  for (uint8_t b : w) h = mix64(h ^ b);
  return h;
}

}  // namespace

bool pair_is_forced(const Word& a, const Word& b, ColoringVariant variant,
                    const ColoringDomain& dom) {
  if (a == b) throw std::invalid_argument("pair_is_forced: defined only for distinct words");
  switch (variant) {
    case ColoringVariant::CC1Family:
      return heads_differ(a, b, dom.head_len) && tails_equal(a, b, dom.head_len);
    case ColoringVariant::CCiFamily:
      return tail_zero(a, dom.head_len) || tail_zero(b, dom.head_len);
    default:
      return false;
  }
}

std::vector<long long> admissible_colors(const Word& a, const Word& b,
                                         long long num_colors, const ColoringDomain& dom) {
  const auto diff = differing_blocks(a, b, dom.part);
  if (static_cast<long long>(diff.size()) >= 3) return diff;
  std::vector<long long> all(static_cast<size_t>(num_colors));
  for (long long c = 1; c <= num_colors; ++c) all[static_cast<size_t>(c - 1)] = c;
  return all;
}

Coloring Coloring::random_table(const std::vector<Word>& family, long long num_colors,
                                ColoringVariant variant, const ColoringDomain& dom,
                                uint64_t seed) {
  if (num_colors < 3) throw std::invalid_argument("Coloring: need at least 3 colors");
  Coloring c;
  c.num_colors_ = num_colors;
  c.variant_ = variant;
  c.dom_ = dom;
  c.seed_ = seed;
  c.family_ = family;
  for (size_t i = 0; i < family.size(); ++i) {
    if (static_cast<long long>(family[i].size()) != dom.part.word_len())
      throw std::invalid_argument("Coloring: family word length mismatch");
    if (!c.index_.emplace(family[i], static_cast<int>(i)).second)
      throw std::invalid_argument("Coloring: family has duplicate words");
  }
  const size_t n = family.size();
  c.table_.assign(n * (n + 1) / 2, 0);
  uint64_t state = mix64(seed ^ 0x636f6c6f72ULL);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      long long col;
      if (pair_is_forced(family[i], family[j], variant, dom)) {
        col = 1;
      } else {
        const auto adm = admissible_colors(family[i], family[j], num_colors, dom);
        col = adm[uniform_below(state, adm.size())];
      }
      c.table_[j * (j + 1) / 2 + i] = col;
    }
  return c;
}

Coloring Coloring::random_abstract(int n_elems, long long num_colors, uint64_t seed) {
  if (num_colors < 3) throw std::invalid_argument("Coloring: need at least 3 colors");
  Coloring c;
  c.num_colors_ = num_colors;
  c.variant_ = ColoringVariant::Unconstrained;
  c.abstract_ = true;
  c.seed_ = seed;
  c.family_.resize(static_cast<size_t>(n_elems));
  // Abstract elements carry synthetic one-hot words only so indexing works.
  for (int i = 0; i < n_elems; ++i) {
    Word w(static_cast<size_t>(n_elems), 0);
    w[static_cast<size_t>(i)] = 1;
    c.family_[static_cast<size_t>(i)] = w;
    c.index_.emplace(std::move(w), i);
  }
  const size_t n = static_cast<size_t>(n_elems);
  c.table_.assign(n * (n + 1) / 2, 0);
  uint64_t state = mix64(seed ^ 0x616273ULL);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      c.table_[j * (j + 1) / 2 + i] =
          static_cast<long long>(uniform_below(state, static_cast<uint64_t>(num_colors))) + 1;
  return c;
}

Coloring Coloring::procedural(long long num_colors, ColoringVariant variant,
                              const ColoringDomain& dom, uint64_t seed) {
  if (num_colors < 3) throw std::invalid_argument("Coloring: need at least 3 colors");
  Coloring c;
  c.num_colors_ = num_colors;
  c.variant_ = variant;
  c.dom_ = dom;
  c.procedural_ = true;
  c.seed_ = seed;
  return c;
}

long long Coloring::table_at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return table_[static_cast<size_t>(j) * (j + 1) / 2 + i];
}

long long Coloring::color_index(int i, int j) const {
  if (i == j) throw std::invalid_argument("Coloring: color of a pair needs distinct elements");
  if (procedural_) return color(family_.at(i), family_.at(j));
  return table_at(i, j);
}

long long Coloring::procedural_color(const Word& a, const Word& b) const {
  const Word& lo = std::min(a, b);
  const Word& hi = std::max(a, b);
  if (pair_is_forced(lo, hi, variant_, dom_)) return 1;
  const auto adm = admissible_colors(lo, hi, num_colors_, dom_);
  uint64_t h = mix64(seed_ ^ (0x70726f63ULL + static_cast<uint64_t>(dom_.part.level)));
  h = hash_word(h, lo);
  h = mix64(h ^ 0x2fULL);
  h = hash_word(h, hi);
  return adm[h % adm.size()];
}

long long Coloring::color(const Word& a, const Word& b) const {
  if (a == b) throw std::invalid_argument("Coloring: color of a pair needs distinct words");
  if (procedural_) {
    if (static_cast<long long>(a.size()) != dom_.part.word_len() || a.size() != b.size())
      throw std::invalid_argument("Coloring: word length mismatch");
    return procedural_color(a, b);
  }
  const auto ia = index_.find(a), ib = index_.find(b);
  if (ia == index_.end() || ib == index_.end())
    throw std::invalid_argument("Coloring: word not in the enumerated family");
  return table_at(ia->second, ib->second);
}

void Coloring::set_pair_color(int i, int j, long long c) {
  if (procedural_) throw std::logic_error("cannot mutate a procedural coloring");
  if (i > j) std::swap(i, j);
  table_[static_cast<size_t>(j) * (j + 1) / 2 + i] = c;
}

std::string Coloring::to_text() const {
  std::ostringstream os;
  if (procedural_) {
    os << "seed=" << seed_ << " variant=" << bowenlab::to_string(variant_)
       << " level=" << dom_.part.level << " colors=" << num_colors_ << "\n";
    return os.str();
  }
  for (size_t i = 0; i < family_.size(); ++i)
    for (size_t j = i + 1; j < family_.size(); ++j)
      os << "pair " << word_to_string(family_[i]) << " " << word_to_string(family_[j]) << " "
         << table_at(static_cast<int>(i), static_cast<int>(j)) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

Le2Result max_le2_chromatic(const Coloring& c) {
  if (c.is_procedural())
    throw std::invalid_argument("max_le2_chromatic: explicit-table backing required");
  const int n = static_cast<int>(c.family().size());
  Le2Result best;
  if (n == 0) return best;
  if (n == 1) {
    best.size = 1;
    best.witness = {0};
    best.colors = {1, 2};
    return best;
  }
  const int blocks = (n + 63) / 64;
  for (long long c1 = 1; c1 <= c.num_colors(); ++c1)
    for (long long c2 = c1 + 1; c2 <= c.num_colors(); ++c2) {
      std::vector<std::vector<uint64_t>> adj(n, std::vector<uint64_t>(blocks, 0));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const long long col = c.color_index(i, j);
          if (col == c1 || col == c2) {
            adj[i][j >> 6] |= 1ULL << (j & 63);
            adj[j][i >> 6] |= 1ULL << (i & 63);
          }
        }
      SolveResult r = max_clique(adj, n);
      if (r.size > best.size) {
        best.size = r.size;
        best.witness = r.witness;
        best.colors = {c1, c2};
      }
    }
  return best;
}

long long le2_chromatic_oracle(const Coloring& c) {
  const int n = static_cast<int>(c.family().size());
  if (n > 20) throw std::invalid_argument("le2_chromatic_oracle: family too large");
  long long best = 0;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> verts;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) verts.push_back(i);
    std::vector<long long> used;
    bool ok = true;
    for (size_t a = 0; a < verts.size() && ok; ++a)
      for (size_t b = a + 1; b < verts.size() && ok; ++b) {
        const long long col = c.color_index(verts[a], verts[b]);
        if (std::find(used.begin(), used.end(), col) == used.end()) {
          used.push_back(col);
          if (used.size() > 2) ok = false;
        }
      }
    if (ok) best = std::max<long long>(best, static_cast<long long>(verts.size()));
  }
  return best;
}

CcReport verify_cc_conditions(const Coloring& c, long long le2_threshold) {
  if (c.is_procedural())
    throw std::invalid_argument("verify_cc_conditions: explicit-table backing required");
  CcReport rep;
  const auto& fam = c.family();
  const int n = static_cast<int>(fam.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const long long col = c.color_index(i, j);
      if (c.is_abstract()) continue;
      const bool forced = pair_is_forced(fam[i], fam[j], c.variant(), c.domain());
      if (forced) {
        if (col != 1) {
          rep.forced_ok = false;
          rep.violations.push_back(
              {c.variant() == ColoringVariant::CC1Family ? "cC1" : "cCi", i, j});
        }
        continue;
      }
      const auto diff = differing_blocks(fam[i], fam[j], c.domain().part);
      if (static_cast<long long>(diff.size()) >= 3 &&
          std::find(diff.begin(), diff.end(), col) == diff.end()) {
        rep.membership_ok = false;
        rep.violations.push_back({"cC2", i, j});
      }
    }
  if (le2_threshold > 0) {
    rep.le2_max = max_le2_chromatic(c).size;
    rep.le2_below_threshold = rep.le2_max < le2_threshold;
  }
  return rep;
}

std::vector<Word> free_subset(const std::vector<Word>& family, ColoringVariant variant,
                              const ColoringDomain& dom) {
  if (variant == ColoringVariant::CCiFamily) {
    std::vector<Word> out;
    for (const auto& w : family)
      if (!tail_zero(w, dom.head_len)) out.push_back(w);
    return out;
  }
  if (variant == ColoringVariant::CC1Family) {
    std::vector<char> alive(family.size(), 1);
    for (size_t i = 0; i < family.size(); ++i) {
      if (!alive[i]) continue;
      for (size_t j = i + 1; j < family.size(); ++j)
        if (alive[j] && family[i] != family[j] &&
            tails_equal(family[i], family[j], dom.head_len))
          alive[j] = 0;
    }
    std::vector<Word> out;
    for (size_t i = 0; i < family.size(); ++i)
      if (alive[i]) out.push_back(family[i]);
    return out;
  }
  return family;
}

ColoringSearchResult search_good_coloring(int n_elems, long long num_colors, long long target_m,
                                          uint64_t seed, int max_tries) {
  ColoringSearchResult res;
  // Guaranteed regime: n <= (sqrt3/sqrt2)^{m-1}, i.e. n^2 2^{m-1} <= 3^{m-1}.
  const Int lhs = Int(n_elems) * n_elems *
                  pow_int(2, static_cast<unsigned long long>(target_m - 1));
  const Int rhs = pow_int(3, static_cast<unsigned long long>(target_m - 1));
  res.guaranteed_regime = lhs <= rhs;
  for (int t = 0; t < max_tries; ++t) {
    Coloring c = Coloring::random_abstract(n_elems, num_colors, mix64(seed + static_cast<uint64_t>(t)));
    res.tries = t + 1;
    if (max_le2_chromatic(c).size < target_m) {
      res.found = true;
      res.coloring = std::move(c);
      return res;
    }
  }
  return res;
}

}  // namespace bowenlab
