// Two-sided binary sequences with finite support, the shift, the spiral
// enumeration of Z, the first-difference functional, the window map, and the
// interval partition of [0, T+(n)).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bowenlab {

// Sequence ZZ -> {0,1} (or {2,3} when alphabet_offset == 2) with value
// base+1 exactly on a finite support set and base elsewhere.
class BinarySeq {
 public:
  BinarySeq() = default;
  BinarySeq(std::vector<long long> support, int alphabet_offset = 0);

  static BinarySeq zero(int alphabet_offset = 0) { return BinarySeq({}, alphabet_offset); }

  int offset() const { return offset_; }
  const std::vector<long long>& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }

  // Value at position i: offset + (i in support).
  int value(long long i) const;
  bool one_at(long long i) const;  // support membership, offset ignored

  // k-fold shift: result(i) = this(i + k); k may be negative.
  BinarySeq shifted(long long k) const;

  BinarySeq with_offset(int alphabet_offset) const;

  bool operator==(const BinarySeq& o) const {
    return offset_ == o.offset_ && support_ == o.support_;
  }
  bool operator!=(const BinarySeq& o) const { return !(*this == o); }

  // "supp: i1,i2,... offset: b"
  std::string to_string() const;
  static std::optional<BinarySeq> parse(const std::string& s);

 private:
  std::vector<long long> support_;  // sorted, duplicate-free
  int offset_ = 0;
};

// A finite word over {0,1}, the value type of the window map.
using Word = std::vector<uint8_t>;

std::string word_to_string(const Word& w);
std::optional<Word> word_from_string(const std::string& s);

// Blocks I_1..I_C of length T tiling [0, C*T); 1-indexed block ids.
struct IntervalPartition {
  int level = 0;       // n
  long long blocks = 0;  // C(n)
  long long block_len = 0;  // T(n)

  long long word_len() const { return blocks * block_len; }
  // 1-indexed block containing position k in [0, word_len()).
  long long block_of(long long k) const { return k / block_len + 1; }
  long long block_start(long long j) const { return (j - 1) * block_len; }
};

// The bijection ZZ -> NN with 0,1,-1,2,-2,... |-> 0,1,2,3,4,...
unsigned long long spiral_index(long long i);

// Inverse of spiral_index.
long long spiral_position(unsigned long long rank);

constexpr unsigned long long kDeltaInfinity = ~0ULL;

// First-difference functional: infinity iff equal, else the minimum spiral
// rank over positions where the sequences differ.  Mixed alphabets rejected.
unsigned long long delta(const BinarySeq& y, const BinarySeq& z);

// The length-L window (y(-k), y(-k+1), ..., y(-k+L-1)) as a 0/1 word
// (alphabet offset stripped).  Requires 0 <= k < L.
Word phi(const BinarySeq& y, long long window_len, long long k);

// Indices j (1-based) of blocks where the restrictions differ.
std::vector<long long> differing_blocks(const Word& a, const Word& b,
                                        const IntervalPartition& part);

}  // namespace bowenlab
