#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace latfac {

using Word = std::uint64_t;

inline constexpr Word bit(std::size_t i) { return Word{1} << i; }

/// Fixed-length bitset over a small word vector. Relations use one word per
/// row (bit index = 64 * row + column), element sets use a single word.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t words) : words_(words, 0) {}

  std::size_t word_count() const { return words_.size(); }
  Word word(std::size_t i) const { return words_[i]; }
  Word& word(std::size_t i) { return words_[i]; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= bit(i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~bit(i & 63); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (Word w : words_)
      if (w) return false;
    return true;
  }

  bool subset_of(const BitSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// True iff both sets agree on every index strictly below `limit`.
  bool agrees_below(const BitSet& o, std::size_t limit) const {
    const std::size_t full = limit >> 6;
    for (std::size_t i = 0; i < full; ++i)
      if (words_[i] != o.words_[i]) return false;
    if (const std::size_t rem = limit & 63; rem != 0) {
      const Word mask = bit(rem) - 1;
      if ((words_[full] ^ o.words_[full]) & mask) return false;
    }
    return true;
  }

  BitSet& operator|=(const BitSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  BitSet& operator&=(const BitSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
  friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (Word w = words_[i]; w; w &= w - 1) f(64 * i + static_cast<std::size_t>(std::countr_zero(w)));
    }
  }

  friend bool operator==(const BitSet&, const BitSet&) = default;
  friend std::strong_ordering operator<=>(const BitSet& a, const BitSet& b) { return a.words_ <=> b.words_; }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Word w : words_) h = (h ^ std::hash<Word>{}(w)) * 0x100000001b3ULL;
    return h;
  }

 private:
  std::vector<Word> words_;
};

template <class F>
void for_each_bit(Word w, F&& f) {
  for (; w; w &= w - 1) f(static_cast<unsigned>(std::countr_zero(w)));
}

}  // namespace latfac
