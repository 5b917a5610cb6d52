#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "ucs/core.hpp"

namespace ucs {

/// Colex order: A < B iff the largest element of A xor B lies in B.
inline bool colex_less(ElementSet a, ElementSet b) {
  if (a == b) throw DomainError("colex_less: equal sets are not strictly ordered");
  return b.contains((a ^ b).max_element());
}

/// Smallest n with 2^n >= m.
inline int ceil_log2(std::uint64_t m) {
  return m <= 1 ? 0 : static_cast<int>(std::bit_width(m - 1));
}

/// I(m), the first m sets in colex order, over [n]. Under the integer
/// encoding these are exactly the sets 0, 1, ..., m-1.
inline Family initial_segment(std::uint64_t m, int n) {
  if (n > kMaxGround || m > (std::uint64_t{1} << kMaxGround)) {
    throw CapacityError("initial segment of length " + std::to_string(m) + " is too large to materialize");
  }
  if (m > (std::uint64_t{1} << n)) throw DomainError("I(m) does not fit in P(n)");
  Family f(n);
  auto& w = f.raw_words();
  const std::size_t full = static_cast<std::size_t>(m >> 6);
  for (std::size_t i = 0; i < full; ++i) w[i] = ~Family::Word{0};
  if (m & 63) w[full] = (Family::Word{1} << (m & 63)) - 1;
  return f;
}

inline Family initial_segment(std::uint64_t m) {
  if (m > (std::uint64_t{1} << kMaxGround)) {
    throw CapacityError("initial segment of length " + std::to_string(m) + " is too large to materialize");
  }
  return initial_segment(m, ceil_log2(m));
}

/// ||I(m)|| = sum of the binary digit sums of 0, ..., m-1, in O(log m).
/// Digit j is set in exactly (m >> (j+1)) * 2^j + max(0, m mod 2^{j+1} - 2^j)
/// of those integers.
inline std::int64_t colex_total_size(std::uint64_t m) {
  if (m >= (std::uint64_t{1} << 63)) throw DomainError("colex_total_size needs m < 2^63");
  std::uint64_t total = 0;
  for (int j = 0; j < 63 && (std::uint64_t{1} << j) < m; ++j) {
    const std::uint64_t block = std::uint64_t{1} << (j + 1);
    const std::uint64_t half = std::uint64_t{1} << j;
    const std::uint64_t rem = m % block;
    total += (m / block) * half + (rem > half ? rem - half : 0);
  }
  return static_cast<std::int64_t>(total);
}

/// The n with 2^{n-1} < m <= 2^n and m' = 2^n - m.
struct ExtremalShape {
  int n = 0;
  std::uint64_t m_prime = 0;
};

inline ExtremalShape extremal_shape(std::uint64_t m) {
  if (m == 0) throw DomainError("f(m) needs m >= 1");
  const int n = ceil_log2(m);
  return {n, (std::uint64_t{1} << n) - m};
}

/// f(m) = n 2^{n-1} - ||I(m')|| - m', the least total size of a union-closed
/// family of m sets.
inline std::int64_t f_extremal(std::uint64_t m) {
  const auto [n, mp] = extremal_shape(m);
  const std::int64_t full = n == 0 ? 0 : static_cast<std::int64_t>(n) << (n - 1);
  return full - colex_total_size(mp) - static_cast<std::int64_t>(mp);
}

/// The union-closed family attaining f(m): P(n) minus {B + n : B in I(m')}.
inline Family extremal_construction(std::uint64_t m) {
  const auto [n, mp] = extremal_shape(m);
  if (n > kMaxGround) throw CapacityError("extremal family too large to materialize");
  Family out = Family::full(n);
  if (mp > 0) out -= shift_up(initial_segment(mp, n), n);
  return out;
}

/// ||I(|D|)|| - ||D|| for a down-set D; never negative.
inline std::int64_t kk_downset_bound(const Family& d) {
  if (!is_downset(d)) throw DomainError("kk_downset_bound needs a down-set");
  return colex_total_size(d.size()) - d.total_size();
}

/// ||I(m1+m2)|| - min(m1, m2) - ||I(m1)|| - ||I(m2)||; never negative.
inline std::int64_t colex_superadditivity(std::uint64_t m1, std::uint64_t m2) {
  if (m1 == 0 || m2 == 0) throw DomainError("colex_superadditivity needs positive sizes");
  return colex_total_size(m1 + m2) - static_cast<std::int64_t>(std::min(m1, m2)) -
         colex_total_size(m1) - colex_total_size(m2);
}

/// Parameters of the upper bound ||I(m)|| <= m(r/2 - 1) + 3m'/2 with
/// 2^r/3 <= m <= 2^{r+1}/3 and m' = m - 2^r/3.
struct ColexBound {
  int r = 0;
  std::uint64_t m = 0;
  Rational m_prime{0};  // denominator 3
  Rational value{0};    // denominator divides 6
};

/// All admissible r, compared exactly as 2^r <= 3m <= 2^{r+1}; the smallest
/// bound is returned. (3m is never a power of two, so r is in fact unique.)
inline ColexBound colex_upper_bound(std::uint64_t m) {
  if (m <= 1) throw DomainError("colex_upper_bound needs m >= 2");
  if (m > (std::uint64_t{1} << 40)) throw CapacityError("colex_upper_bound: m too large");
  std::optional<ColexBound> best;
  for (int r = 1; r < 62; ++r) {
    const std::uint64_t lo = std::uint64_t{1} << r;
    if (lo > 3 * m) break;
    if (3 * m > 2 * lo) continue;
    ColexBound b;
    b.r = r;
    b.m = m;
    b.m_prime = Rational(static_cast<std::int64_t>(3 * m - lo), 3);
    const auto mm = static_cast<std::int64_t>(m);
    // 6 * bound = 3mr - 6m + 9m' = 3mr + 3m - 3 * 2^r.
    b.value = Rational(3 * mm * r + 3 * mm - 3 * static_cast<std::int64_t>(lo), 6);
    if (!best || b.value < best->value) best = b;
  }
  return *best;
}

/// Whether m = 2^a + 2^{a-2} + ... + 2^{a-2j} + 2^{a-2j-1} with a > 0, j >= 0
/// and a - 2j - 1 > 0.
inline bool colex_bound_equality_form(std::uint64_t m) {
  for (int a = 1; a < 63; ++a) {
    std::uint64_t sum = 0;
    for (int j = 0; a - 2 * j - 1 > 0; ++j) {
      sum += std::uint64_t{1} << (a - 2 * j);
      if (sum + (std::uint64_t{1} << (a - 2 * j - 1)) == m) return true;
    }
    if ((std::uint64_t{1} << a) > m) break;
  }
  return false;
}

}  // namespace ucs
