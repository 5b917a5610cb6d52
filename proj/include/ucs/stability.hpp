#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucs/colex.hpp"
#include "ucs/compression.hpp"
#include "ucs/core.hpp"

namespace ucs {

/// An ordered split [n] = S u T into disjoint parts.
struct Partition {
  ElementSet s;
  ElementSet t;

  static Partition from_s(ElementSet s, int n) {
    if (!s.within(n)) throw DomainError("partition part " + to_string(s) + " outside the ground set");
    return {s, ElementSet::ground(n) - s};
  }

  bool valid_for(int n) const {
    return (s & t).empty() && (s | t) == ElementSet::ground(n);
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Members whose whole shadow lies in the family.
inline Family full_shadow_sets(const Family& f) {
  Family out = f;
  for (int i = 1; i <= f.ground(); ++i) out -= falls(f, i);
  return out;
}

/// def(F) = sum over members B of |delta B \ F|. Defined for any family.
inline std::int64_t deficiency(const Family& f) {
  std::int64_t total = 0;
  for (int i = 1; i <= f.ground(); ++i) total += static_cast<std::int64_t>(falls(f, i).size());
  return total;
}

/// Precomputed data for one simply rooted family: root table, compression
/// trace, statistics and the two kinds of bad sets.
class RootedAnalysis {
 public:
  explicit RootedAnalysis(Family f)
      : family_(std::move(f)), roots_(family_), down_(full_down(family_)) {
    if (!is_simply_rooted(roots_, family_)) throw DomainError("family is not simply rooted");
    stats_ = ucs::stats(roots_, family_);
    full_shadow_ = full_shadow_sets(family_);
    fixed_ = down_.fixed();
  }

  const Family& family() const { return family_; }
  int ground() const { return family_.ground(); }
  const RootTable& roots() const { return roots_; }
  const CompressionTrace& down() const { return down_; }
  const FamilyStats& stats() const { return stats_; }

  /// Members B with delta B inside the family.
  const Family& full_shadow() const { return full_shadow_; }
  /// Members B with d(B) = B.
  const Family& fixed() const { return fixed_; }
  Family bad() const { return full_shadow_ | fixed_; }
  Family good() const { return family_ - bad(); }
  /// Y: members that are bad for both reasons.
  Family y() const { return full_shadow_ & fixed_; }

  Family rooted(ElementSet s) const { return rooted_subfamily(roots_, family_, s); }

  bool contains_empty() const { return family_.contains(ElementSet{}); }

 private:
  Family family_;
  RootTable roots_;
  CompressionTrace down_;
  FamilyStats stats_;
  Family full_shadow_;
  Family fixed_;
};

/// Bad/good classification together with the partition counts b1, b2, b3.
struct BadSetAnalysis {
  Family full_shadow;
  Family fixed;
  Family bad;
  Family good;
  Partition partition;
  std::int64_t b1 = 0;  // full-shadow members outside B_S & B_T
  std::int64_t b2 = 0;  // |B_S & B_T|
  std::int64_t b3 = 0;  // fixed members
};

/// Everything the partition lemmas need for one (S, T). Since the empty set
/// has no root, the pair used where B_S u B_T = B is required is
/// F1 = B_S + (B & {empty}) and F2 = B_T + (B & {empty}).
class PartitionAnalysis {
 public:
  PartitionAnalysis(const RootedAnalysis& base, Partition p)
      : partition_(p),
        b_s_(base.rooted(p.s)),
        b_t_(base.rooted(p.t)),
        f1_(with_empty(base, b_s_)),
        f2_(with_empty(base, b_t_)),
        d1_(full_down(f1_)),
        d2_(full_down(f2_)) {
    if (!p.valid_for(base.ground())) throw DomainError("not a partition of the ground set");
    const Family both = b_s_ & b_t_;
    b2_ = static_cast<std::int64_t>(both.size());
    b1_ = static_cast<std::int64_t>((base.full_shadow() - both).size());
    b3_ = static_cast<std::int64_t>(base.fixed().size());
    z_ = Family(base.ground());
    (f1_ & f2_).for_each([&](ElementSet x) {
      const auto a = base.down().image(x);
      const auto b = d1_.image(x);
      const auto c = d2_.image(x);
      if (a != b && b != c && a != c) z_.insert(x);
    });
  }

  const Partition& partition() const { return partition_; }
  const Family& b_s() const { return b_s_; }
  const Family& b_t() const { return b_t_; }
  const Family& f1() const { return f1_; }
  const Family& f2() const { return f2_; }
  const CompressionTrace& down1() const { return d1_; }
  const CompressionTrace& down2() const { return d2_; }
  /// Z(B, F1, F2).
  const Family& z() const { return z_; }
  std::int64_t b1() const { return b1_; }
  std::int64_t b2() const { return b2_; }
  std::int64_t b3() const { return b3_; }

 private:
  static Family with_empty(const RootedAnalysis& base, Family part) {
    if (base.contains_empty()) part.insert(ElementSet{});
    return part;
  }

  Partition partition_;
  Family b_s_, b_t_, f1_, f2_;
  CompressionTrace d1_, d2_;
  Family z_;
  std::int64_t b1_ = 0, b2_ = 0, b3_ = 0;
};

/// Result of the partition search; certified means the product bound
/// 4 |B_S| |B_T| >= m0^2 - k^2 holds (m0 = nonempty members, k = max |B_{i}|).
struct PartitionSearchResult {
  Partition partition;
  std::int64_t count_s = 0;
  std::int64_t count_t = 0;
  bool certified = false;
  bool used_fallback = false;
};

namespace detail {

/// |B_S| for every S, evaluated from the multiset of member root sets.
class RootProfile {
 public:
  explicit RootProfile(const RootedAnalysis& a) {
    std::map<ElementSet::Bits, std::int64_t> counts;
    a.family().for_each([&](ElementSet x) {
      if (!x.empty()) ++counts[a.roots().roots(x).bits()];
    });
    profile_.assign(counts.begin(), counts.end());
    for (const auto& [mask, c] : profile_) {
      support_ |= mask;
      nonempty_ += c;
    }
  }

  std::int64_t rooted_count(ElementSet::Bits s) const {
    std::int64_t total = 0;
    for (const auto& [mask, c] : profile_) {
      if (mask & s) total += c;
    }
    return total;
  }

  ElementSet::Bits support() const { return support_; }
  std::int64_t nonempty() const { return nonempty_; }

 private:
  std::vector<std::pair<ElementSet::Bits, std::int64_t>> profile_;
  ElementSet::Bits support_ = 0;
  std::int64_t nonempty_ = 0;
};

}  // namespace detail

inline bool large_product_holds(std::int64_t count_s, std::int64_t count_t, std::int64_t m0, std::int64_t k) {
  return static_cast<__int128>(4) * count_s * count_t >= static_cast<__int128>(m0) * m0 - static_cast<__int128>(k) * k;
}

/// Greedy local search for a partition with large |B_S| |B_T|, falling back to
/// exhaustive search over the elements that root something.
inline PartitionSearchResult partition_search(const RootedAnalysis& a) {
  const int n = a.ground();
  const detail::RootProfile profile(a);
  const std::int64_t m0 = profile.nonempty();
  const std::int64_t k = a.stats().max_rooted;
  const ElementSet::Bits all = ElementSet::ground(n).bits();

  ElementSet::Bits s = 0;
  std::int64_t cs = 0;
  std::int64_t ct = profile.rooted_count(all);
  for (;;) {
    std::int64_t best_min = std::min(cs, ct);
    int best = 0;
    for (int i = 1; i <= n; ++i) {
      const ElementSet::Bits cand = s ^ (1u << (i - 1));
      const auto ns = profile.rooted_count(cand);
      const auto nt = profile.rooted_count(all & ~cand);
      if (std::min(ns, nt) > best_min) {
        best_min = std::min(ns, nt);
        best = i;
      }
    }
    if (best == 0) break;
    s ^= 1u << (best - 1);
    cs = profile.rooted_count(s);
    ct = profile.rooted_count(all & ~s);
  }

  PartitionSearchResult out;
  out.partition = Partition::from_s(ElementSet(s), n);
  out.count_s = cs;
  out.count_t = ct;
  out.certified = large_product_holds(cs, ct, m0, k);
  if (out.certified) return out;

  const std::vector<int> relevant = ElementSet(profile.support()).elements();
  if (relevant.size() > 20) return out;
  out.used_fallback = true;
  std::int64_t best_product = static_cast<std::int64_t>(cs) * ct;
  for (std::uint32_t pick = 0; pick < (1u << relevant.size()); ++pick) {
    ElementSet::Bits cand = 0;
    for (std::size_t j = 0; j < relevant.size(); ++j) {
      if (pick >> j & 1u) cand |= 1u << (relevant[j] - 1);
    }
    const auto ns = profile.rooted_count(cand);
    const auto nt = profile.rooted_count(all & ~cand);
    if (ns * nt > best_product) {
      best_product = ns * nt;
      out.partition = Partition::from_s(ElementSet(cand), n);
      out.count_s = ns;
      out.count_t = nt;
    }
  }
  out.certified = large_product_holds(out.count_s, out.count_t, m0, k);
  return out;
}

inline Partition partition_search(const Family& f) {
  return partition_search(RootedAnalysis(f)).partition;
}

inline BadSetAnalysis classify_sets(const RootedAnalysis& a, const Partition& p) {
  const PartitionAnalysis pa(a, p);
  BadSetAnalysis out;
  out.full_shadow = a.full_shadow();
  out.fixed = a.fixed();
  out.bad = a.bad();
  out.good = a.good();
  out.partition = p;
  out.b1 = pa.b1();
  out.b2 = pa.b2();
  out.b3 = pa.b3();
  return out;
}

inline BadSetAnalysis classify_sets(const Family& f, std::optional<Partition> p = std::nullopt) {
  const RootedAnalysis a(f);
  return classify_sets(a, p ? *p : partition_search(a).partition);
}

/// Y(F): members with full shadow that d_F fixes.
inline Family y_family(const Family& f) { return RootedAnalysis(f).y(); }

/// Z(F, F1, F2): members of F1 & F2 whose images under d_F, d_F1, d_F2 are
/// pairwise distinct.
inline Family z_family(const Family& f, const Family& f1, const Family& f2) {
  if ((f1 | f2) != f) throw DomainError("z_family: F1 u F2 must equal F");
  const auto d = full_down(f);
  const auto d1 = full_down(f1);
  const auto d2 = full_down(f2);
  Family out(f.ground());
  (f1 & f2).for_each([&](ElementSet x) {
    const auto a = d.image(x);
    const auto b = d1.image(x);
    const auto c = d2.image(x);
    if (a != b && b != c && a != c) out.insert(x);
  });
  return out;
}

enum class StabilityVariant { twelfth, eighth };

inline int stability_constant(StabilityVariant v) { return v == StabilityVariant::twelfth ? 12 : 8; }

struct StabilityBound {
  std::int64_t m = 0;
  Rational p{0};
  int n = 0;
  StabilityVariant variant = StabilityVariant::twelfth;
  Rational value{0};  // ||I(m)|| + m - m^2 (1 - p^2) / (c 2^n)
  bool holds = false; // ||F|| <= value
};

/// Evaluates the stability bound with p the exact largest rooted fraction.
inline StabilityBound stability_bound(const RootedAnalysis& a, StabilityVariant variant) {
  StabilityBound out;
  const auto& st = a.stats();
  out.m = st.size;
  out.p = st.max_rooted_fraction;
  out.n = a.ground();
  out.variant = variant;
  const std::int64_t c = stability_constant(variant);
  const std::int64_t scale = c << out.n;
  const std::int64_t base = colex_total_size(static_cast<std::uint64_t>(out.m)) + out.m;
  // m^2 (1 - p^2) = m^2 - k^2 with p = k / m.
  const std::int64_t drop = out.m * out.m - st.max_rooted * st.max_rooted;
  out.value = Rational(base) - Rational(drop, scale);
  out.holds = static_cast<__int128>(scale) * st.total_size <= static_cast<__int128>(scale) * base - drop;
  return out;
}

inline StabilityBound stability_bound(const Family& f, StabilityVariant variant) {
  return stability_bound(RootedAnalysis(f), variant);
}

/// One evaluated inequality lhs <= rhs.
struct InequalityResult {
  std::string name;
  Rational lhs{0};
  Rational rhs{0};
  bool precondition = true;
  bool pass() const { return precondition && lhs <= rhs; }
  Rational slack() const { return rhs - lhs; }
};

/// The chain of bad-set lower bounds for one partition, each as lhs <= rhs.
inline std::vector<InequalityResult> bad_set_lower_bounds(const RootedAnalysis& a, const PartitionAnalysis& pa) {
  const int n = a.ground();
  const std::int64_t cube = std::int64_t{1} << n;
  const auto b = static_cast<std::int64_t>(a.bad().size());
  const auto y = static_cast<std::int64_t>(a.y().size());
  const auto z = static_cast<std::int64_t>(pa.z().size());
  const Family& d1 = pa.down1().result();
  const Family& d2 = pa.down2().result();
  const auto common = static_cast<std::int64_t>((d1 & d2).size());
  const auto f1f2 = static_cast<std::int64_t>((pa.f1() & pa.f2()).size());
  const auto size = [](const Family& f) { return static_cast<std::int64_t>(f.size()); };
  const Rational st_product(size(pa.b_s()) * size(pa.b_t()), cube);

  bool shadows_inside = true;
  const Family full = a.full_shadow();
  (pa.f1() & pa.f2()).for_each([&](ElementSet x) {
    if (!full.contains(x)) shadows_inside = false;
  });

  std::vector<InequalityResult> out;
  out.push_back({"split_rooted", Rational(common), Rational(b + f1f2)});
  out.push_back({"harris", Rational(size(d1) * size(d2), cube), Rational(common)});
  out.push_back({"lower_b", Rational(size(pa.f1()) * size(pa.f2()), cube), Rational(b + f1f2)});
  out.push_back({"many_bad", st_product, Rational(pa.b1() + 2 * pa.b2() + pa.b3())});
  out.push_back({"split_rooted_2", Rational(common), Rational(b + z), shadows_inside});
  out.push_back({"many_bad_2", st_product, Rational(pa.b1() + pa.b2() + pa.b3() + z - y)});
  out.push_back({"Y_ge_Z", Rational(z), Rational(y)});
  out.push_back({"refinement", st_product, Rational(pa.b1() + pa.b2() + pa.b3())});
  return out;
}

inline std::vector<InequalityResult> bad_set_lower_bounds(const Family& f, const Partition& p) {
  const RootedAnalysis a(f);
  return bad_set_lower_bounds(a, PartitionAnalysis(a, p));
}

}  // namespace ucs
