#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ucs/element_set.hpp"

namespace ucs {

/// A family of distinct subsets of [n], stored as the characteristic vector
/// of P(n): bit X of the vector is set iff the set encoded by X is a member.
/// Members iterate in ascending encoding order, i.e. in colex order.
class Family {
 public:
  using Word = std::uint64_t;

  Family() : Family(0) {}

  explicit Family(int n) : n_(check_ground(n)), words_(word_count(n), 0) {}

  Family(int n, std::initializer_list<ElementSet> sets) : Family(n) {
    for (ElementSet s : sets) insert(s);
  }

  /// The whole power set P(n).
  static Family full(int n) {
    Family f(n);
    std::fill(f.words_.begin(), f.words_.end(), ~Word{0});
    f.trim();
    return f;
  }

  /// Builds a family directly from characteristic words (extra bits are dropped).
  static Family from_words(int n, std::span<const Word> words) {
    Family f(n);
    std::copy_n(words.begin(), std::min(words.size(), f.words_.size()), f.words_.begin());
    f.trim();
    return f;
  }

  int ground() const { return n_; }
  std::size_t cells() const { return std::size_t{1} << n_; }
  std::span<const Word> words() const { return words_; }

  bool contains(ElementSet s) const {
    const auto x = s.bits();
    if (x >= cells()) return false;
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }

  void insert(ElementSet s) {
    check_member(s);
    words_[s.bits() >> 6] |= Word{1} << (s.bits() & 63);
  }

  void erase(ElementSet s) {
    if (s.bits() >= cells()) return;
    words_[s.bits() >> 6] &= ~(Word{1} << (s.bits() & 63));
  }

  std::size_t size() const {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  /// Calls fn(ElementSet) for each member, in colex order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (Word bits = words_[w]; bits != 0; bits &= bits - 1) {
        fn(ElementSet(static_cast<ElementSet::Bits>((w << 6) | std::countr_zero(bits))));
      }
    }
  }

  std::vector<ElementSet> members() const {
    std::vector<ElementSet> out;
    out.reserve(size());
    for_each([&](ElementSet s) { out.push_back(s); });
    return out;
  }

  /// ||F||, the sum of member cardinalities.
  std::int64_t total_size() const {
    std::int64_t total = 0;
    for_each([&](ElementSet s) { total += s.size(); });
    return total;
  }

  bool subset_of(const Family& other) const {
    check_same_ground(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  Family& operator|=(const Family& o) { return combine(o, [](Word a, Word b) { return a | b; }); }
  Family& operator&=(const Family& o) { return combine(o, [](Word a, Word b) { return a & b; }); }
  Family& operator-=(const Family& o) { return combine(o, [](Word a, Word b) { return a & ~b; }); }

  friend Family operator|(Family a, const Family& b) { return a |= b; }
  friend Family operator&(Family a, const Family& b) { return a &= b; }
  friend Family operator-(Family a, const Family& b) { return a -= b; }

  friend bool operator==(const Family&, const Family&) = default;

  /// Direct word access for word-parallel algorithms in this library.
  std::vector<Word>& raw_words() { return words_; }

  /// Clears bits beyond 2^n (needed after raw word manipulation when n < 6).
  void trim() {
    if (n_ < 6) words_[0] &= (Word{1} << (std::size_t{1} << n_)) - 1;
  }

 private:
  static int check_ground(int n) {
    if (n < 0 || n > kMaxGround) {
      throw CapacityError("ground size must lie in [0, " + std::to_string(kMaxGround) +
                          "], got " + std::to_string(n));
    }
    return n;
  }

  static std::size_t word_count(int n) { return n <= 6 ? 1 : std::size_t{1} << (n - 6); }

  void check_member(ElementSet s) const {
    if (!s.within(n_)) {
      throw DomainError("set " + to_string(s) + " is not a subset of [" + std::to_string(n_) + "]");
    }
  }

  void check_same_ground(const Family& o) const {
    if (o.n_ != n_) throw DomainError("families over different ground sets");
  }

  template <class Op>
  Family& combine(const Family& o, Op op) {
    check_same_ground(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = op(words_[i], o.words_[i]);
    return *this;
  }

  int n_;
  std::vector<Word> words_;
};

/// P(n) minus F.
inline Family complement(const Family& f) {
  Family out = Family::full(f.ground());
  out -= f;
  return out;
}

/// The same sets viewed as a family over a larger ground set.
inline Family embed(const Family& f, int n) {
  if (n < f.ground()) throw DomainError("cannot embed into a smaller ground set");
  Family out(n);
  f.for_each([&](ElementSet s) { out.insert(s); });
  return out;
}

}  // namespace ucs
