#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ucs/element_set.hpp"

namespace ucs {

using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parameters of the threshold argument.
///   split:     t, where |B_{i}| >= t p m is the large-root case
///   constant:  c in {12, 8}, from the stability bound m^2 (1 - p^2) / (c 2^n)
///   alpha:     every counterexample has fewer than alpha 2^n sets
///   feedback:  replace alpha by 2/3 - c2 and repeat until stable
struct ConstantChain {
  BigRational split{3};
  int constant = 12;
  BigRational alpha{BigRational(2, 3)};
  bool feedback = false;
  int max_rounds = 64;
  int precision_bits = 64;  // bisection width for the certified bounds
};

/// a p^2 + b p + c with a > 0 and c < 0, so exactly one positive root.
struct QuadraticRoot {
  BigRational a, b, c;

  BigRational value(const BigRational& p) const { return (a * p + b) * p + c; }
  /// -1, 0, +1 for p below, at, above the positive root (p >= 0).
  int compare(const BigRational& p) const {
    const BigRational v = value(p);
    return v < 0 ? -1 : (v > 0 ? 1 : 0);
  }

  /// [lo, hi] containing the root with hi - lo <= 2^-bits.
  std::pair<BigRational, BigRational> bracket(int bits) const {
    BigRational lo{0};
    BigRational hi{1};
    while (compare(hi) < 0) hi *= 2;
    const BigRational width = BigRational(1, BigInt(1) << bits);
    while (hi - lo > width) {
      const BigRational mid = (lo + hi) / 2;
      const int s = compare(mid);
      if (s == 0) return {mid, mid};
      (s < 0 ? lo : hi) = mid;
    }
    return {lo, hi};
  }
};

/// The threshold quadratic beta t^2 p^2 + c p - beta with beta = 1 - alpha.
/// Any p at or below its positive root leaves the counterexample inequality
/// beta t^2 p^2 + c p - beta > 0 unsatisfied.
inline QuadraticRoot threshold_quadratic(const BigRational& split, int constant, const BigRational& alpha) {
  const BigRational beta = 1 - alpha;
  return {beta * split * split, BigRational(constant), -beta};
}

/// c2 = 2 c1 / (9 - 6 c1).
inline BigRational c2_from_c1(const BigRational& c1) { return 2 * c1 / (9 - 6 * c1); }

struct ConstantRound {
  BigRational alpha;
  BigRational c1_lower, c1_upper;
  BigRational c2_lower;
};

struct DerivedConstants {
  QuadraticRoot threshold;        // for the first round's alpha
  BigRational c1_lower, c1_upper; // positive root of the last round
  BigRational c2_lower;           // 2 c1_lower / (9 - 6 c1_lower)
  std::vector<ConstantRound> rounds;
  bool split_admissible = true;   // the large-root case needs t >= 3
};

inline void validate(const ConstantChain& chain) {
  if (chain.split <= 0) throw DomainError("split factor must be positive");
  if (chain.constant != 8 && chain.constant != 12) throw DomainError("stability constant must be 8 or 12");
  if (chain.alpha < BigRational(1, 2) || chain.alpha > BigRational(2, 3)) {
    throw DomainError("alpha must lie in [1/2, 2/3]");
  }
  if (chain.precision_bits < 1 || chain.precision_bits > 4096) throw DomainError("precision out of range");
}

/// Certified lower bounds for c1 and c2. Each round is valid given the
/// previous one: a smaller alpha raises beta, which raises the root, so the
/// lower end of each bracket is a sound input for the next round.
inline DerivedConstants derive_constants(const ConstantChain& chain) {
  validate(chain);
  DerivedConstants out;
  out.split_admissible = chain.split >= 3;
  out.threshold = threshold_quadratic(chain.split, chain.constant, chain.alpha);
  BigRational alpha = chain.alpha;
  const int rounds = chain.feedback ? chain.max_rounds : 1;
  for (int k = 0; k < rounds; ++k) {
    const auto q = threshold_quadratic(chain.split, chain.constant, alpha);
    auto [lo, hi] = q.bracket(chain.precision_bits);
    ConstantRound r{alpha, lo, hi, c2_from_c1(lo)};
    out.rounds.push_back(r);
    const BigRational next = BigRational(2, 3) - r.c2_lower;
    if (next >= alpha) break;
    const BigRational step = alpha - next;
    alpha = next;
    if (step < BigRational(1, BigInt(1) << chain.precision_bits)) break;
  }
  out.c1_lower = out.rounds.back().c1_lower;
  out.c1_upper = out.rounds.back().c1_upper;
  out.c2_lower = out.rounds.back().c2_lower;
  return out;
}

/// Best certified c1 over candidate split factors, ignoring inadmissible ones.
inline DerivedConstants optimize_split(ConstantChain chain, const std::vector<BigRational>& splits) {
  std::optional<DerivedConstants> best;
  for (const auto& t : splits) {
    chain.split = t;
    auto d = derive_constants(chain);
    if (!d.split_admissible) continue;
    if (!best || d.c1_lower > best->c1_lower) best = std::move(d);
  }
  if (!best) throw DomainError("no admissible split factor (need t >= 3)");
  return *best;
}

/// Truncated decimal expansion of a non-negative rational.
inline std::string to_decimal(const BigRational& x, int digits) {
  if (x < 0) return "-" + to_decimal(-x, digits);
  BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  std::string out = BigInt(num / den).str() + ".";
  num %= den;
  for (int d = 0; d < digits; ++d) {
    num *= 10;
    out += static_cast<char>('0' + static_cast<int>(BigInt(num / den)));
    num %= den;
  }
  return out;
}

inline std::string to_fraction(const BigRational& x) {
  const BigInt den = boost::multiprecision::denominator(x);
  const std::string num = boost::multiprecision::numerator(x).str();
  return den == 1 ? num : num + "/" + den.str();
}

}  // namespace ucs
