#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "ucs/element_set.hpp"
#include "ucs/family.hpp"

namespace ucs {

using Rational = boost::rational<std::int64_t>;

namespace detail {

// Bit pattern of the cells (within one 64-cell word) whose index has binary
// digit (i-1) set, for i = 1..6.
inline constexpr Family::Word kDirectionMask[7] = {
    0,
    0xAAAAAAAAAAAAAAAAull,
    0xCCCCCCCCCCCCCCCCull,
    0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull,
    0xFFFF0000FFFF0000ull,
    0xFFFFFFFF00000000ull,
};

inline void check_direction(const Family& f, int i) {
  if (i < 1 || i > f.ground()) {
    throw DomainError("direction " + std::to_string(i) + " outside [1, " +
                      std::to_string(f.ground()) + "]");
  }
}

}  // namespace detail

/// Members X with i in X whose lower neighbour X - i is absent.
inline Family falls(const Family& f, int i) {
  detail::check_direction(f, i);
  Family out(f.ground());
  auto src = f.words();
  auto& dst = out.raw_words();
  if (i <= 6) {
    const unsigned s = 1u << (i - 1);
    const auto mask = detail::kDirectionMask[i];
    for (std::size_t w = 0; w < src.size(); ++w) dst[w] = src[w] & mask & ~(src[w] << s);
  } else {
    const std::size_t ws = std::size_t{1} << (i - 7);
    for (std::size_t w = 0; w < src.size(); ++w) {
      if (w & ws) dst[w] = src[w] & ~src[w - ws];
    }
  }
  out.trim();
  return out;
}

/// Members X with i not in X whose upper neighbour X + i is absent.
inline Family rises(const Family& f, int i) {
  detail::check_direction(f, i);
  Family out(f.ground());
  auto src = f.words();
  auto& dst = out.raw_words();
  if (i <= 6) {
    const unsigned s = 1u << (i - 1);
    const auto mask = detail::kDirectionMask[i];
    for (std::size_t w = 0; w < src.size(); ++w) dst[w] = src[w] & ~mask & ~(src[w] >> s);
  } else {
    const std::size_t ws = std::size_t{1} << (i - 7);
    for (std::size_t w = 0; w < src.size(); ++w) {
      if (!(w & ws)) dst[w] = src[w] & ~src[w + ws];
    }
  }
  out.trim();
  return out;
}

/// {X - i : X in f}; every member of f must contain i.
inline Family shift_down(const Family& f, int i) {
  detail::check_direction(f, i);
  Family out(f.ground());
  auto src = f.words();
  auto& dst = out.raw_words();
  if (i <= 6) {
    const unsigned s = 1u << (i - 1);
    for (std::size_t w = 0; w < src.size(); ++w) dst[w] = src[w] >> s;
  } else {
    const std::size_t ws = std::size_t{1} << (i - 7);
    for (std::size_t w = 0; w < src.size(); ++w) {
      if (w & ws) dst[w - ws] |= src[w];
    }
  }
  return out;
}

/// {X + i : X in f}; no member of f may contain i.
inline Family shift_up(const Family& f, int i) {
  detail::check_direction(f, i);
  Family out(f.ground());
  auto src = f.words();
  auto& dst = out.raw_words();
  if (i <= 6) {
    const unsigned s = 1u << (i - 1);
    for (std::size_t w = 0; w < src.size(); ++w) dst[w] = src[w] << s;
  } else {
    const std::size_t ws = std::size_t{1} << (i - 7);
    for (std::size_t w = 0; w < src.size(); ++w) {
      if (!(w & ws)) dst[w + ws] |= src[w];
    }
  }
  out.trim();
  return out;
}

/// Root sets R_F(X) for every member X of a family: the elements r in X with
/// the whole interval [{r}, X] inside F. Built bottom-up in O(n 2^n) from
/// [{r}, X] = {X} united with [{r}, X - i] over i in X, i != r.
class RootTable {
 public:
  explicit RootTable(const Family& f) : n_(f.ground()), roots_(f.cells(), 0) {
    f.for_each([&](ElementSet x) {
      auto r = x.bits();
      for (auto rest = x.bits(); rest != 0; rest &= rest - 1) {
        const auto bit = rest & (~rest + 1);
        r &= roots_[x.bits() ^ bit] | bit;
      }
      roots_[x.bits()] = r;
    });
  }

  int ground() const { return n_; }

  /// Roots of x; empty when x is not a member.
  ElementSet roots(ElementSet x) const { return ElementSet(roots_[x.bits()]); }

 private:
  int n_;
  std::vector<ElementSet::Bits> roots_;
};

inline bool is_union_closed(const Family& f) {
  const std::size_t m = f.size();
  if (m * m <= f.cells() * static_cast<std::size_t>(f.ground() + 1)) {
    const auto sets = f.members();
    for (std::size_t a = 0; a < sets.size(); ++a) {
      for (std::size_t b = a + 1; b < sets.size(); ++b) {
        if (!f.contains(sets[a] | sets[b])) return false;
      }
    }
    return true;
  }
  // below[X] = union of the members inside X, with bit 31 flagging that at
  // least one member lies inside X. F is union-closed iff every such union is
  // a member (take X = A | B for the converse).
  constexpr ElementSet::Bits kSeen = 1u << 31;
  std::vector<ElementSet::Bits> below(f.cells(), 0);
  for (std::size_t x = 0; x < below.size(); ++x) {
    ElementSet::Bits acc = f.contains(ElementSet(static_cast<ElementSet::Bits>(x)))
                               ? static_cast<ElementSet::Bits>(x) | kSeen
                               : 0;
    for (auto rest = static_cast<ElementSet::Bits>(x); rest != 0; rest &= rest - 1) {
      acc |= below[x ^ (rest & (~rest + 1))];
    }
    below[x] = acc;
    if ((acc & kSeen) && !f.contains(ElementSet(acc & ~kSeen))) return false;
  }
  return true;
}

/// Every nonempty member B has some b in B with [{b}, B] inside the family.
inline bool is_simply_rooted(const RootTable& roots, const Family& f) {
  bool ok = true;
  f.for_each([&](ElementSet x) {
    if (!x.empty() && roots.roots(x).empty()) ok = false;
  });
  return ok;
}

inline bool is_simply_rooted(const Family& f) { return is_simply_rooted(RootTable(f), f); }

inline bool is_downset(const Family& f) {
  for (int i = 1; i <= f.ground(); ++i) {
    if (!falls(f, i).empty()) return false;
  }
  return true;
}

/// Members B with the whole power set P(B) inside f: the largest down-set
/// contained in f.
inline Family largest_downset(const Family& f) {
  Family out = f;
  for (int i = 1; i <= f.ground(); ++i) out -= falls(out, i);
  return out;
}

/// delta B: the sets B - i for i in B, as a family over [n].
inline Family shadow(ElementSet b, int n) {
  Family out(n);
  for (int i : b.elements()) out.insert(b.without(i));
  return out;
}
inline Family shadow(ElementSet b) { return shadow(b, b.max_element()); }

/// Subsets of B with exactly |B| - 2 elements.
inline Family shadow2(ElementSet b, int n) {
  Family out(n);
  const auto elems = b.elements();
  for (std::size_t x = 0; x < elems.size(); ++x) {
    for (std::size_t y = x + 1; y < elems.size(); ++y) {
      out.insert(b.without(elems[x]).without(elems[y]));
    }
  }
  return out;
}
inline Family shadow2(ElementSet b) { return shadow2(b, b.max_element()); }

/// The interval [A, B] = {C : A subset C subset B}.
inline Family cube(ElementSet a, ElementSet b, int n) {
  if (!a.subset_of(b)) throw DomainError("cube bottom " + to_string(a) + " not inside top " + to_string(b));
  Family out(n);
  const auto free = (b - a).bits();
  // Enumerate submasks of the free part.
  for (auto sub = free;; sub = (sub - 1) & free) {
    out.insert(a | ElementSet(sub));
    if (sub == 0) break;
  }
  return out;
}
inline Family cube(ElementSet a, ElementSet b) { return cube(a, b, b.max_element()); }

/// R_F(B), the roots of a member B.
inline ElementSet roots(const Family& f, ElementSet b) {
  if (!f.contains(b)) throw DomainError("roots: " + to_string(b) + " is not a member");
  ElementSet out;
  for (int r : b.elements()) {
    const auto rest = (b.without(r)).bits();
    bool full = true;
    for (auto sub = rest;; sub = (sub - 1) & rest) {
      if (!f.contains(ElementSet(sub).with(r))) {
        full = false;
        break;
      }
      if (sub == 0) break;
    }
    if (full) out = out.with(r);
  }
  return out;
}

/// Members rooted at some element of S, given a prebuilt root table.
inline Family rooted_subfamily(const RootTable& table, const Family& f, ElementSet s) {
  Family out(f.ground());
  f.for_each([&](ElementSet x) {
    if (!(table.roots(x) & s).empty()) out.insert(x);
  });
  return out;
}

/// B_S: members rooted at some element of S.
inline Family rooted_subfamily(const Family& f, ElementSet s) {
  RootTable table(f);
  if (!is_simply_rooted(table, f)) throw DomainError("rooted_subfamily needs a simply rooted family");
  return rooted_subfamily(table, f, s);
}

struct FamilyStats {
  std::int64_t size = 0;
  std::int64_t total_size = 0;
  std::vector<std::int64_t> degrees;       // degrees[i-1] = deg(i)
  std::vector<std::int64_t> rooted_counts; // rooted_counts[i-1] = |B_{i}|
  std::int64_t max_rooted = 0;
  Rational max_rooted_fraction{0};         // p; 0 for the empty family

  std::int64_t max_degree() const {
    return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
  }
};

inline FamilyStats stats(const RootTable& table, const Family& f) {
  FamilyStats st;
  const int n = f.ground();
  st.degrees.assign(static_cast<std::size_t>(n), 0);
  st.rooted_counts.assign(static_cast<std::size_t>(n), 0);
  f.for_each([&](ElementSet x) {
    ++st.size;
    st.total_size += x.size();
    for (auto b = x.bits(); b != 0; b &= b - 1) ++st.degrees[std::countr_zero(b)];
    for (auto r = table.roots(x).bits(); r != 0; r &= r - 1) ++st.rooted_counts[std::countr_zero(r)];
  });
  for (auto c : st.rooted_counts) st.max_rooted = std::max(st.max_rooted, c);
  if (st.size > 0) st.max_rooted_fraction = Rational(st.max_rooted, st.size);
  return st;
}

inline FamilyStats stats(const Family& f) { return stats(RootTable(f), f); }

}  // namespace ucs
