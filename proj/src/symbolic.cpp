#include "bowen/symbolic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bowenlab {

BinarySeq::BinarySeq(std::vector<long long> support, int alphabet_offset)
    : support_(std::move(support)), offset_(alphabet_offset) {
  if (offset_ != 0 && offset_ != 2)
    throw std::invalid_argument("BinarySeq: alphabet offset must be 0 or 2");
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
}

int BinarySeq::value(long long i) const { return offset_ + (one_at(i) ? 1 : 0); }

bool BinarySeq::one_at(long long i) const {
  return std::binary_search(support_.begin(), support_.end(), i);
}

BinarySeq BinarySeq::shifted(long long k) const {
  std::vector<long long> s;
  s.reserve(support_.size());
  for (long long p : support_) s.push_back(p - k);
  BinarySeq out;
  out.support_ = std::move(s);
  out.offset_ = offset_;
  return out;
}

BinarySeq BinarySeq::with_offset(int alphabet_offset) const {
  return BinarySeq(support_, alphabet_offset);
}

std::string BinarySeq::to_string() const {
  std::ostringstream os;
  os << "supp:";
  for (size_t i = 0; i < support_.size(); ++i) os << (i ? "," : " ") << support_[i];
  os << " offset: " << offset_;
  return os.str();
}

std::optional<BinarySeq> BinarySeq::parse(const std::string& s) {
  std::istringstream is(s);
  std::string tag;
  if (!(is >> tag) || tag != "supp:") return std::nullopt;
  std::string rest;
  is >> rest;
  std::vector<long long> supp;
  int offset = 0;
  if (rest == "offset:") {
    if (!(is >> offset)) return std::nullopt;
  } else if (!rest.empty()) {
    std::istringstream list(rest);
    std::string item;
    while (std::getline(list, item, ','))
      try {
        supp.push_back(std::stoll(item));
      } catch (...) {
        return std::nullopt;
      }
    if (is >> tag) {
      if (tag != "offset:" || !(is >> offset)) return std::nullopt;
    }
  }
  if (offset != 0 && offset != 2) return std::nullopt;
  return BinarySeq(std::move(supp), offset);
}

std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (uint8_t b : w) s.push_back(b ? '1' : '0');
  return s;
}

std::optional<Word> word_from_string(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') return std::nullopt;
    w.push_back(c == '1');
  }
  return w;
}

unsigned long long spiral_index(long long i) {
  if (i > 0) return 2ULL * static_cast<unsigned long long>(i) - 1;
  return 2ULL * static_cast<unsigned long long>(-i);
}

long long spiral_position(unsigned long long rank) {
  if (rank % 2 == 1) return static_cast<long long>((rank + 1) / 2);
  return -static_cast<long long>(rank / 2);
}

unsigned long long delta(const BinarySeq& y, const BinarySeq& z) {
  if (y.offset() != z.offset())
    throw std::invalid_argument("delta: mixed alphabet offsets");
  // Differences live exactly on the symmetric difference of the supports.
  unsigned long long best = kDeltaInfinity;
  auto scan = [&](const BinarySeq& a, const BinarySeq& b) {
    for (long long p : a.support())
      if (!b.one_at(p)) best = std::min(best, spiral_index(p));
  };
  scan(y, z);
  scan(z, y);
  return best;
}

Word phi(const BinarySeq& y, long long window_len, long long k) {
  if (k < 0 || k >= window_len)
    throw std::out_of_range("phi: phase must lie in [0, window length)");
  Word w(static_cast<size_t>(window_len), 0);
  for (long long i = 0; i < window_len; ++i)
    if (y.one_at(-k + i)) w[static_cast<size_t>(i)] = 1;
  return w;
}

std::vector<long long> differing_blocks(const Word& a, const Word& b,
                                        const IntervalPartition& part) {
  if (a.size() != b.size() || static_cast<long long>(a.size()) != part.word_len())
    throw std::invalid_argument("differing_blocks: length mismatch with partition");
  std::vector<long long> out;
  for (long long j = 1; j <= part.blocks; ++j) {
    const long long s = part.block_start(j);
    for (long long i = s; i < s + part.block_len; ++i)
      if (a[static_cast<size_t>(i)] != b[static_cast<size_t>(i)]) {
        out.push_back(j);
        break;
      }
  }
  return out;
}

}  // namespace bowenlab
