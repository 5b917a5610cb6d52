#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "ucs/colex.hpp"
#include "ucs/compression.hpp"
#include "ucs/constants.hpp"
#include "ucs/core.hpp"
#include "ucs/enumerate.hpp"
#include "ucs/family_io.hpp"
#include "ucs/stability.hpp"

namespace ucs {

enum class CheckScope { per_family, global };

/// Which population a per-family check runs on.
enum class Applicability { any_family, simply_rooted, global };

struct CheckDescriptor {
  std::string id;
  std::string anchor;
  std::string statement;
  Applicability applies_to = Applicability::simply_rooted;
  bool conjecture = false;
  /// Hypothesis is never met at testable sizes; such instances count as vacuous.
  bool conditional = false;

  CheckScope scope() const {
    return applies_to == Applicability::global ? CheckScope::global : CheckScope::per_family;
  }
};

/// Statement anchors the catalog must cover.
inline constexpr std::array<std::string_view, 30> kRequiredAnchors = {
    "compression_complement_duality", "rooted_union_closed_duality", "rooted_total_size_bound",
    "compressed_rooted_family",       "rooted_compression_steps",    "fixed_set_bound",
    "full_shadow_bound",              "deficiency_bound",            "missing_shadow_fall",
    "subfamily_fixed_sets",           "good_set_fall",               "split_intersection_bound",
    "harris_bad_set_bound",           "partition_bad_sets",          "large_partition_product",
    "high_degree_colex_bound",        "largest_down_set_bound",      "root_heavy_colex_bound",
    "stability_twelfth",              "colex_total_size_bound",      "reimer_cube_disjointness",
    "falling_set_up_image",           "cube_base_set",               "fall_along_root",
    "z_set_roots",                    "split_intersection_bound_z",  "partition_bad_sets_z",
    "y_dominates_z",                  "partition_bad_sets_refined",  "stability_eighth",
};

struct Violation {
  std::uint64_t sample = 0;
  std::string family;
  std::string detail;
  Rational lhs{0};
  Rational rhs{0};
};

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skipped";
  }
}

struct CheckReport {
  CheckDescriptor descriptor;
  std::uint64_t instances_tested = 0;
  std::uint64_t vacuous = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;  // first ones by sample index
  std::string note;
  CheckStatus status = CheckStatus::skipped;
};

namespace detail {

/// Per-check tally for one shard.
class Tally {
 public:
  explicit Tally(std::size_t cap) : cap_(cap) {}

  void vacuous() {
    ++instances_;
    ++vacuous_;
  }

  /// One evaluated instance; `ok` decides, lhs/rhs are reported on failure.
  void record(bool ok, std::uint64_t sample, const std::function<std::string()>& family,
              Rational lhs, Rational rhs, std::string detail = {}) {
    ++instances_;
    if (ok) return;
    ++violation_count_;
    if (violations_.size() < cap_) violations_.push_back({sample, family(), std::move(detail), lhs, rhs});
  }

  /// lhs <= rhs.
  void at_most(std::uint64_t sample, const std::function<std::string()>& family, Rational lhs, Rational rhs,
               std::string detail = {}) {
    record(lhs <= rhs, sample, family, lhs, rhs, std::move(detail));
  }

  /// A structural property; lhs is the number of offending sets.
  void count(std::uint64_t sample, const std::function<std::string()>& family, std::int64_t offenders,
             std::string detail = {}) {
    record(offenders == 0, sample, family, Rational(offenders), Rational(0), std::move(detail));
  }

  void merge(const Tally& other) {
    instances_ += other.instances_;
    vacuous_ += other.vacuous_;
    violation_count_ += other.violation_count_;
    for (const auto& v : other.violations_) {
      if (violations_.size() < cap_) violations_.push_back(v);
    }
  }

  std::uint64_t instances() const { return instances_; }
  std::uint64_t vacuous_count() const { return vacuous_; }
  std::uint64_t violation_count() const { return violation_count_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::size_t cap_;
  std::uint64_t instances_ = 0;
  std::uint64_t vacuous_ = 0;
  std::uint64_t violation_count_ = 0;
  std::vector<Violation> violations_;
};

inline Rational rat(std::int64_t x) { return Rational(x); }
inline std::int64_t isize(const Family& f) { return static_cast<std::int64_t>(f.size()); }
inline std::int64_t colex(std::int64_t m) { return colex_total_size(static_cast<std::uint64_t>(m)); }

/// Degree of every element, index i-1 for element i.
inline std::vector<std::int64_t> degrees(const Family& f) {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(f.ground()), 0);
  f.for_each([&](ElementSet x) {
    for (auto b = x.bits(); b != 0; b &= b - 1) ++deg[static_cast<std::size_t>(std::countr_zero(b))];
  });
  return deg;
}

/// Union-closed A other than {} and {empty} in which every element has
/// degree below |A|/2.
inline bool is_counterexample(const Family& a) {
  const auto m = isize(a);
  if (m == 0 || (m == 1 && a.contains(ElementSet{}))) return false;
  for (auto d : degrees(a)) {
    if (2 * d >= m) return false;
  }
  return a.ground() > 0;
}

/// Everything the per-family checks share for one simply rooted sample.
class SampleContext {
 public:
  /// With add_searched, the partition found by partition_search is appended.
  SampleContext(std::uint64_t index, Family rooted, std::vector<Partition> partitions, UpOrder order,
                bool add_searched = false)
      : index_(index), analysis_(std::move(rooted)), partitions_(std::move(partitions)), order_(order) {
    if (add_searched) partitions_.push_back(search().partition);
  }
  SampleContext(const SampleContext&) = delete;
  SampleContext& operator=(const SampleContext&) = delete;

  std::uint64_t index() const { return index_; }
  const RootedAnalysis& analysis() const { return analysis_; }
  const Family& family() const { return analysis_.family(); }
  int ground() const { return analysis_.ground(); }
  UpOrder order() const { return order_; }

  const std::function<std::string()>& text() const { return text_; }

  const Family& complement_family() const {
    if (!complement_) complement_ = complement(family());
    return *complement_;
  }

  const std::vector<PartitionAnalysis>& partitions() const {
    if (!partition_analyses_) {
      partition_analyses_.emplace();
      partition_analyses_->reserve(partitions_.size());
      for (const auto& p : partitions_) partition_analyses_->emplace_back(analysis_, p);
    }
    return *partition_analyses_;
  }

  const std::vector<std::vector<InequalityResult>>& partition_bounds() const {
    if (!bounds_) {
      bounds_.emplace();
      for (const auto& pa : partitions()) bounds_->push_back(bad_set_lower_bounds(analysis_, pa));
    }
    return *bounds_;
  }

  const PartitionSearchResult& search() const {
    if (!search_) search_ = partition_search(analysis_);
    return *search_;
  }

  const Family& downset() const {
    if (!downset_) downset_ = largest_downset(family());
    return *downset_;
  }

  /// Traces of d on simply rooted subfamilies: each B_{i}, F1 and F2 of every
  /// partition, and the largest down-set.
  const std::vector<CompressionTrace>& sub_traces() const {
    if (!sub_traces_) {
      sub_traces_.emplace();
      for (int i = 1; i <= ground(); ++i) {
        sub_traces_->push_back(full_down(analysis_.rooted(ElementSet{}.with(i))));
      }
      for (const auto& pa : partitions()) {
        sub_traces_->push_back(pa.down1());
        sub_traces_->push_back(pa.down2());
      }
      sub_traces_->push_back(full_down(downset()));
    }
    return *sub_traces_;
  }

  const ReimerDecomposition& reimer() const {
    if (!reimer_) reimer_.emplace(complement_family(), order_);
    return *reimer_;
  }

  /// Every U_{(A,k)}(A') with k >= 1, A = complement of the family.
  const Family& up_reached() const {
    if (!up_reached_) {
      up_reached_.emplace(ground());
      full_up(complement_family(), order_).replay([&](int k, const Family&, std::span<const ElementSet> pos) {
        if (k == 0) return;
        for (ElementSet x : pos) up_reached_->insert(x);
      });
    }
    return *up_reached_;
  }

 private:
  std::uint64_t index_;
  RootedAnalysis analysis_;
  std::vector<Partition> partitions_;
  UpOrder order_;
  std::function<std::string()> text_ = [this] { return format_family(family()); };
  mutable std::optional<Family> complement_;
  mutable std::optional<std::vector<PartitionAnalysis>> partition_analyses_;
  mutable std::optional<std::vector<std::vector<InequalityResult>>> bounds_;
  mutable std::optional<PartitionSearchResult> search_;
  mutable std::optional<Family> downset_;
  mutable std::optional<std::vector<CompressionTrace>> sub_traces_;
  mutable std::optional<ReimerDecomposition> reimer_;
  mutable std::optional<Family> up_reached_;
};

inline std::string partition_note(const PartitionAnalysis& pa) {
  return "S=" + to_string(pa.partition().s);
}

// ---- checks on arbitrary families -------------------------------------------

inline void check_compression_duality(std::uint64_t s, const Family& f, Tally& t) {
  const auto text = [&] { return format_family(f); };
  const Family comp = complement(f);
  std::int64_t bad = 0;
  std::string note;
  for (int i = 1; i <= f.ground(); ++i) {
    if (complement(down_compress_dir(f, i)) != up_compress_dir(comp, i)) {
      ++bad;
      if (note.empty()) note = "i=" + std::to_string(i);
    }
  }
  t.count(s, text, bad, note);
}

inline void check_rooted_duality(std::uint64_t s, const Family& f, Tally& t) {
  const bool rooted = is_simply_rooted(f);
  const bool closed = is_union_closed(complement(f));
  t.record(rooted == closed, s, [&] { return format_family(f); }, rat(rooted), rat(closed),
           "simply_rooted vs complement union_closed");
}

inline void check_deficiency(std::uint64_t s, const Family& f, Tally& t) {
  const auto m = isize(f);
  t.at_most(s, [&] { return format_family(f); }, rat(f.total_size()), rat(colex(m) + deficiency(f)));
}

inline void check_kk(std::uint64_t s, const Family& f, Tally& t) {
  const Family d = largest_downset(f);
  t.at_most(s, [&] { return format_family(d); }, rat(d.total_size()), rat(colex(isize(d))));
}

// ---- checks on simply rooted families ---------------------------------------

inline void check_rooted_bound(const SampleContext& c, Tally& t) {
  const auto m = isize(c.family());
  t.at_most(c.index(), c.text(), rat(c.family().total_size()), rat(colex(m) + m));
}

inline void check_compressed_rooted(const SampleContext& c, Tally& t) {
  std::int64_t bad = 0;
  std::string note;
  c.analysis().down().replay([&](int k, const Family& fam, std::span<const ElementSet>) {
    if (k == 0) return;
    if (!is_simply_rooted(fam)) {
      ++bad;
      if (note.empty()) note = "D_" + std::to_string(k) + " not simply rooted";
    }
  });
  if (!is_downset(c.analysis().down().result())) {
    ++bad;
    if (note.empty()) note = "d(B) not a down-set";
  }
  t.count(c.index(), c.text(), bad, note);
}

inline void check_rooted_steps(const SampleContext& c, Tally& t) {
  const auto& tr = c.analysis().down();
  std::int64_t bad = 0;
  std::string note;
  tr.replay([&](int k, const Family& fam, std::span<const ElementSet> pos) {
    if (k == 0) return;
    const Family low = largest_downset(fam);
    for (std::size_t j = 0; j < pos.size(); ++j) {
      if (pos[j] != tr.sources()[j] && !low.contains(pos[j])) {
        ++bad;
        if (note.empty()) note = "P(" + to_string(pos[j]) + ") not in D_" + std::to_string(k);
      }
    }
  });
  for (std::size_t j = 0; j < tr.sources().size(); ++j) {
    if ((tr.sources()[j] - tr.images()[j]).size() > 1) {
      ++bad;
      if (note.empty()) note = to_string(tr.sources()[j]) + " lost more than one element";
    }
  }
  t.count(c.index(), c.text(), bad, note);
}

inline void check_no_falls(const SampleContext& c, Tally& t) {
  const auto m = isize(c.family());
  t.at_most(c.index(), c.text(), rat(c.family().total_size()),
            rat(colex(m) + m - isize(c.analysis().fixed())));
}

inline void check_full_shadow(const SampleContext& c, Tally& t) {
  const auto m = isize(c.family());
  t.at_most(c.index(), c.text(), rat(c.family().total_size()),
            rat(colex(m) + m - isize(c.analysis().full_shadow())));
}

inline void check_bad_count(const SampleContext& c, Tally& t) {
  const auto m = isize(c.family());
  t.at_most(c.index(), c.text(), rat(c.family().total_size()),
            Rational(colex(m) + m) - Rational(isize(c.analysis().bad()), 2));
}

inline void check_fall_b(const SampleContext& c, Tally& t) {
  const Family& f = c.family();
  const auto& tr = c.analysis().down();
  std::int64_t bad = 0;
  std::string note;
  for (std::size_t j = 0; j < tr.sources().size(); ++j) {
    const ElementSet x = tr.sources()[j];
    for (int b : x.elements()) {
      if (f.contains(x.without(b))) continue;
      if (tr.images()[j] != x && tr.images()[j] != x.without(b)) {
        ++bad;
        if (note.empty()) note = to_string(x) + " b=" + std::to_string(b);
      }
    }
  }
  t.count(c.index(), c.text(), bad, note);
}

inline void check_smaller_falls(const SampleContext& c, Tally& t) {
  const auto& whole = c.analysis().down();
  std::int64_t bad = 0;
  std::string note;
  for (const auto& sub : c.sub_traces()) {
    for (std::size_t j = 0; j < sub.sources().size(); ++j) {
      const ElementSet x = sub.sources()[j];
      if (sub.images()[j] == x && whole.image(x) != x) {
        ++bad;
        if (note.empty()) note = to_string(x);
      }
    }
  }
  t.count(c.index(), c.text(), bad, note);
}

inline void check_good_fall(const SampleContext& c, Tally& t) {
  const auto& whole = c.analysis().down();
  const Family good = c.analysis().good();
  std::int64_t bad = 0;
  std::string note;
  for (const auto& sub : c.sub_traces()) {
    for (std::size_t j = 0; j < sub.sources().size(); ++j) {
      const ElementSet x = sub.sources()[j];
      if (good.contains(x) && whole.image(x) != sub.images()[j]) {
        ++bad;
        if (note.empty()) note = to_string(x);
      }
    }
  }
  t.count(c.index(), c.text(), bad, note);
}

/// Runs one named entry of the per-partition bound chain.
inline void check_partition_bound(const SampleContext& c, Tally& t, std::string_view name) {
  const auto& all = c.partition_bounds();
  for (std::size_t p = 0; p < all.size(); ++p) {
    for (const auto& r : all[p]) {
      if (r.name != name) continue;
      if (!r.precondition) {
        t.vacuous();
        continue;
      }
      t.at_most(c.index(), c.text(), r.lhs, r.rhs, partition_note(c.partitions()[p]));
    }
  }
}

inline void check_lower_b(const SampleContext& c, Tally& t) {
  check_partition_bound(c, t, "harris");
  check_partition_bound(c, t, "lower_b");
}

inline void check_large_product(const SampleContext& c, Tally& t) {
  const auto& r = c.search();
  const auto m0 = c.family().contains(ElementSet{}) ? isize(c.family()) - 1 : isize(c.family());
  const auto k = c.analysis().stats().max_rooted;
  t.record(r.certified, c.index(), c.text(), rat(m0 * m0 - k * k), rat(4 * r.count_s * r.count_t),
           "S=" + to_string(r.partition.s));
}

inline void check_low_degrees(const SampleContext& c, Tally& t) {
  const Family& b = c.family();
  const auto deg = degrees(b);
  std::int64_t sum = 0;
  for (auto d : deg) sum += d;
  t.record(sum == b.total_size(), c.index(), c.text(), rat(b.total_size()), rat(sum), "degree sum");
  if (!is_counterexample(c.complement_family())) {
    t.vacuous();
    return;
  }
  const auto m = isize(b);
  const auto top = *std::max_element(deg.begin(), deg.end());
  // p = top/m - 1/2, clipped to [0, 1/2].
  Rational p = Rational(top, m) - Rational(1, 2);
  p = std::clamp(p, Rational(0), Rational(1, 2));
  const Rational rhs = Rational(m) * (Rational(c.ground(), 2) - 1 + p);
  t.record(Rational(colex(m)) > rhs, c.index(), c.text(), rhs, Rational(colex(m)), "counterexample case");
}

inline void check_down_set(const SampleContext& c, Tally& t) {
  const auto m = isize(c.family());
  t.at_most(c.index(), c.text(), rat(c.family().total_size()), rat(colex(m) + m - isize(c.downset())));
}

/// Splits the family along element i into B+ = {X - i : i in X} and
/// B- = {X : i not in X} and checks the counting steps of the large-root case.
inline void check_few_with_root(const SampleContext& c, Tally& t) {
  const Family& b = c.family();
  const int n = c.ground();
  const auto m = isize(b);
  for (int i = 1; i <= n; ++i) {
    const std::string note = "i=" + std::to_string(i);
    Family plus(n);
    Family minus(n);
    b.for_each([&](ElementSet x) {
      if (x.contains(i)) {
        plus.insert(x.without(i));
      } else {
        minus.insert(x);
      }
    });
    const auto mp = isize(plus);
    const auto mm = isize(minus);
    t.record(b.total_size() == plus.total_size() + minus.total_size() + mp, c.index(), c.text(),
             rat(b.total_size()), rat(plus.total_size() + minus.total_size() + mp), note + " accounting");
    if (mp == 0) continue;
    const Family d_plus = largest_downset(plus);
    const auto rooted_i = isize(c.analysis().rooted(ElementSet{}.with(i)));
    t.record(is_simply_rooted(plus), c.index(), c.text(), rat(0), rat(1), note + " B+ simply rooted");
    t.at_most(c.index(), c.text(), rat(plus.total_size()), rat(colex(mp) + mp - isize(d_plus)), note + " B+ bound");
    t.at_most(c.index(), c.text(), rat(rooted_i), rat(isize(d_plus)), note + " |B_{i}| <= |D+|");
    // p = |B_{i}| / (3m); hypotheses m+ >= m- and m+ <= m (1/2 + p).
    if (mp >= mm && 6 * mp <= 3 * m + 2 * rooted_i) {
      t.at_most(c.index(), c.text(), rat(b.total_size()), Rational(colex(m) + m) - Rational(rooted_i, 3),
                note + " chain");
    } else {
      t.vacuous();
    }
  }
  if (!is_counterexample(c.complement_family())) {
    t.vacuous();
    return;
  }
  const auto k = c.analysis().stats().max_rooted;
  const Rational p = Rational(k, 3 * m);
  const Rational rhs = Rational(m) * (Rational(n, 2) - 1 + p);
  t.record(Rational(colex(m)) > rhs, c.index(), c.text(), rhs, Rational(colex(m)), "counterexample case");
}

inline void check_stability(const SampleContext& c, Tally& t, StabilityVariant v) {
  const auto r = stability_bound(c.analysis(), v);
  t.record(r.holds, c.index(), c.text(), rat(c.family().total_size()), r.value);
}

inline void check_reimer(const SampleContext& c, Tally& t) {
  const auto& r = c.reimer();
  t.record(r.disjoint(), c.index(), [&] { return format_family(c.complement_family()); },
           Rational(static_cast<std::int64_t>(r.total_cells())), Rational(std::int64_t{1} << c.ground()),
           "cells of all cubes vs 2^n");
}

inline void check_uc_image(const SampleContext& c, Tally& t) {
  const auto& tr = c.analysis().down();
  const Family& reached = c.up_reached();
  std::int64_t bad = 0;
  std::string note;
  for (std::size_t j = 0; j < tr.sources().size(); ++j) {
    if (tr.sources()[j] != tr.images()[j] && !reached.contains(tr.sources()[j])) {
      ++bad;
      if (note.empty()) note = to_string(tr.sources()[j]);
    }
  }
  t.count(c.index(), c.text(), bad, note);
}

inline void check_cube_set(const SampleContext& c, Tally& t) {
  const auto& r = c.reimer();
  if (!r.disjoint()) {
    t.vacuous();
    return;
  }
  std::int64_t bad = 0;
  std::string note;
  c.family().for_each([&](ElementSet x) {
    const auto owner = r.owner(x);
    if (owner && *owner != x - c.analysis().roots().roots(x)) {
      ++bad;
      if (note.empty()) note = to_string(x) + " in cube of " + to_string(*owner);
    }
  });
  t.count(c.index(), c.text(), bad, note);
}

inline void check_root_fall(const SampleContext& c, Tally& t) {
  const auto& tr = c.analysis().down();
  std::int64_t bad = 0;
  std::string note;
  for (std::size_t j = 0; j < tr.sources().size(); ++j) {
    const ElementSet x = tr.sources()[j];
    const ElementSet lost = x - tr.images()[j];
    if (lost.empty()) continue;
    if (lost.size() != 1 || !lost.subset_of(c.analysis().roots().roots(x)) || !tr.images()[j].subset_of(x)) {
      ++bad;
      if (note.empty()) note = to_string(x) + " -> " + to_string(tr.images()[j]);
    }
  }
  t.count(c.index(), c.text(), bad, note);
}

inline void check_z_roots(const SampleContext& c, Tally& t) {
  const auto& tr = c.analysis().down();
  for (const auto& pa : c.partitions()) {
    std::int64_t bad = 0;
    pa.z().for_each([&](ElementSet x) {
      const int roots = c.analysis().roots().roots(x).size();
      const int need = tr.image(x) == x ? 2 : 3;
      if (roots < need) ++bad;
    });
    t.count(c.index(), c.text(), bad, partition_note(pa));
  }
}

inline void check_colex_bound_family(const SampleContext& c, Tally& t) {
  const Family& a = c.complement_family();
  if (a.empty()) {
    t.vacuous();
    return;
  }
  t.record(a.total_size() >= f_extremal(a.size()), c.index(), [&] { return format_family(a); },
           rat(f_extremal(a.size())), rat(a.total_size()), "f(|A|) <= ||A||");
}

/// Large union-closed families satisfy the conjecture: 3|A| >= num/den * 2^n.
inline void check_large_family(const SampleContext& c, Tally& t, std::int64_t num, std::int64_t den) {
  const Family& a = c.complement_family();
  const auto m = isize(a);
  if (m == 0 || (m == 1 && a.contains(ElementSet{})) || den * m < num * (std::int64_t{1} << c.ground())) {
    t.vacuous();
    return;
  }
  const auto deg = degrees(a);
  const auto top = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  t.record(2 * top >= m, c.index(), [&] { return format_family(a); }, rat(m), rat(2 * top),
           "|A| vs 2 max degree");
}

inline void check_main(const SampleContext& c, Tally& t) {
  if (!is_counterexample(c.complement_family())) {
    t.vacuous();
    return;
  }
  const auto m = isize(c.family());
  const Rational rhs = Rational(m) * (Rational(c.ground(), 2) - 1 + Rational(1, 24));
  t.record(Rational(colex(m)) > rhs, c.index(), c.text(), rhs, rat(colex(m)));
}

inline void probe_degree_bound(const SampleContext& c, Tally& t) {
  const auto m = isize(c.family());
  t.at_most(c.index(), c.text(), rat(c.family().total_size()), rat(colex(m) + c.analysis().stats().max_degree()));
}

inline void probe_max_rooted(const SampleContext& c, Tally& t) {
  const auto m = isize(c.family());
  t.at_most(c.index(), c.text(), rat(c.family().total_size()), rat(colex(m) + c.analysis().stats().max_rooted));
}

/// With epsilon = 1/4, a positive delta needs ||B|| < ||I(m)|| + m.
inline void probe_eps_delta(const SampleContext& c, Tally& t) {
  const auto m = isize(c.family());
  if (m == 0 || 4 * c.analysis().stats().max_rooted > m) {
    t.vacuous();
    return;
  }
  t.record(c.family().total_size() < colex(m) + m, c.index(), c.text(), rat(c.family().total_size()),
           rat(colex(m) + m), "max rooted <= m/4");
}

inline void probe_union_closed(const SampleContext& c, Tally& t) {
  const Family& a = c.complement_family();
  const auto m = isize(a);
  if (m == 0 || (m == 1 && a.contains(ElementSet{}))) {
    t.vacuous();
    return;
  }
  const auto deg = degrees(a);
  const auto top = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  t.record(2 * top >= m, c.index(), [&] { return format_family(a); }, rat(m), rat(2 * top),
           "|A| vs 2 max degree");
}

// ---- global checks ------------------------------------------------------------

inline const std::function<std::string()>& no_family() {
  static const std::function<std::string()> f = [] { return std::string(); };
  return f;
}

inline void global_colex_total(Tally& t) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 16;
  for (std::uint64_t m = 2; m <= kLimit; ++m) {
    const auto b = colex_upper_bound(m);
    const Rational total(colex_total_size(m));
    t.at_most(m, no_family(), total, b.value, "m=" + std::to_string(m));
    if (colex_bound_equality_form(m)) {
      t.record(total == b.value, m, no_family(), total, b.value, "equality form m=" + std::to_string(m));
    }
  }
}

/// ||I(m)|| > m r / 2 exactly when 3m > 2^{r+2}.
inline void global_colex_threshold(Tally& t) {
  for (int r = 1; r <= 12; ++r) {
    std::int64_t total = 0;
    const std::int64_t limit = std::int64_t{1} << (r + 3);
    for (std::int64_t m = 1; m <= limit; ++m) {
      if (m > 1) total += std::popcount(static_cast<std::uint64_t>(m - 1));
      const bool above = 2 * total > m * r;
      const bool large = 3 * m > (std::int64_t{1} << (r + 2));
      if (above != large) {
        t.record(false, static_cast<std::uint64_t>(m), no_family(), rat(2 * total), rat(m * r),
                 "r=" + std::to_string(r) + " m=" + std::to_string(m));
      } else {
        t.record(true, static_cast<std::uint64_t>(m), no_family(), 0, 0);
      }
    }
  }
}

inline void global_colex_sums(Tally& t) {
  for (std::uint64_t a = 1; a <= 128; ++a) {
    for (std::uint64_t b = 1; b <= 128; ++b) {
      t.record(colex_superadditivity(a, b) >= 0, a * 1000 + b, no_family(), 0, 0,
               "m1=" + std::to_string(a) + " m2=" + std::to_string(b));
    }
  }
}

/// {A + {N, ..., N+k-1} : A in I(m)} has deficiency k m and total size
/// ||I(m)|| + k m.
inline void global_def_tightness(Tally& t) {
  for (int k = 1; k <= 3; ++k) {
    for (std::uint64_t m = 1; m <= 64; ++m) {
      const int base = ceil_log2(m);
      Family f(base + k);
      const ElementSet top(((1u << k) - 1) << base);
      initial_segment(m, base).for_each([&](ElementSet a) { f.insert(a | top); });
      const auto def = deficiency(f);
      const auto total = f.total_size();
      const auto mm = static_cast<std::int64_t>(m);
      t.record(def == k * mm && total == colex(mm) + def, m, [f] { return format_family(f); }, rat(total),
               rat(colex(mm) + def), "k=" + std::to_string(k));
    }
  }
}

/// Two sets with deficiency 3 have total size at most 3.
inline void global_def_small(Tally& t) {
  constexpr int n = 5;
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    for (std::uint32_t y = x + 1; y < (1u << n); ++y) {
      const Family f(n, {ElementSet(x), ElementSet(y)});
      if (deficiency(f) != 3) continue;
      t.at_most(x * 64 + y, [f] { return format_family(f); }, rat(f.total_size()), rat(3));
    }
  }
}

/// {B + n : B in I(m)} with n = ceil(log2 m) + 1 is simply rooted, rooted at
/// n throughout, and meets ||B|| <= ||I(m)|| + m with equality.
inline void global_rooted_tightness(Tally& t) {
  for (std::uint64_t m = 1; m <= 256; ++m) {
    const int n = ceil_log2(m) + 1;
    const Family f = shift_up(initial_segment(m, n), n);
    const auto mm = static_cast<std::int64_t>(m);
    const bool ok = is_simply_rooted(f) && rooted_subfamily(f, ElementSet{}.with(n)) == f &&
                    f.total_size() == colex(mm) + mm;
    t.record(ok, m, [f] { return format_family(f); }, rat(f.total_size()), rat(colex(mm) + mm));
  }
}

inline void global_constants(Tally& t) {
  ConstantChain first;
  const auto d12 = derive_constants(first);
  // 9p^2 + 36p - 1 is three times the threshold quadratic here.
  const BigRational at = d12.threshold.value(BigRational(1, 37)) * 3;
  const auto to_r = [](const BigRational& x) {
    return Rational(static_cast<std::int64_t>(boost::multiprecision::numerator(x)),
                    static_cast<std::int64_t>(boost::multiprecision::denominator(x)));
  };
  t.record(d12.threshold.a * 3 == 9 && d12.threshold.b * 3 == 36 && d12.threshold.c * 3 == -1, 0, no_family(),
           0, 0, "threshold quadratic 9p^2 + 36p - 1");
  t.record(at < 0, 0, no_family(), to_r(at), 0, "p = 1/37 fails 9p^2 + 36p > 1");
  t.record(d12.c1_lower >= BigRational(1, 37), 0, no_family(), Rational(1, 37), 0, "c1 >= 1/37");
  t.record(c2_from_c1(BigRational(1, 37)) == BigRational(2, 327), 0, no_family(), 0, 0, "c2(1/37) = 2/327");
  ConstantChain refined;
  refined.constant = 8;
  refined.feedback = true;
  const auto d8 = derive_constants(refined);
  t.record(d8.c1_lower > BigRational(1, 24), 0, no_family(), Rational(1, 24), 0, "c1 > 1/24");
  t.record(d8.c2_lower > BigRational(1, 104), 0, no_family(), Rational(1, 104), 0, "c2 > 1/104");
}

struct CheckImpl {
  CheckDescriptor descriptor;
  std::function<void(std::uint64_t, const Family&, Tally&)> on_any;
  std::function<void(const SampleContext&, Tally&)> on_rooted;
  std::function<void(Tally&)> on_global;
};

inline CheckImpl any_check(std::string id, std::string anchor, std::string statement,
                           std::function<void(std::uint64_t, const Family&, Tally&)> fn) {
  return {{std::move(id), std::move(anchor), std::move(statement), Applicability::any_family}, std::move(fn), {}, {}};
}

inline CheckImpl rooted_check(std::string id, std::string anchor, std::string statement,
                              std::function<void(const SampleContext&, Tally&)> fn, bool conditional = false,
                              bool conjecture = false) {
  return {{std::move(id), std::move(anchor), std::move(statement), Applicability::simply_rooted, conjecture,
           conditional},
          {},
          std::move(fn),
          {}};
}

inline CheckImpl global_check(std::string id, std::string anchor, std::string statement,
                              std::function<void(Tally&)> fn) {
  return {{std::move(id), std::move(anchor), std::move(statement), Applicability::global}, {}, {}, std::move(fn)};
}

inline const std::vector<CheckImpl>& registry() {
  static const std::vector<CheckImpl> checks = [] {
    std::vector<CheckImpl> v;
    v.push_back(any_check("compression_duality", "compression_complement_duality",
                          "P(n) - d_i(F) = u_i(P(n) - F) for every i", check_compression_duality));
    v.push_back(any_check("rooted_duality", "rooted_union_closed_duality",
                          "F simply rooted iff P(n) - F union-closed", check_rooted_duality));
    v.push_back(any_check("lemma_def", "deficiency_bound", "||F|| <= ||I(m)|| + def(F)", check_deficiency));
    v.push_back(any_check("lemma_kk", "kruskal_katona_downset", "down-set D: ||D|| <= ||I(|D|)||", check_kk));
    v.push_back(rooted_check("rooted_bound", "rooted_total_size_bound", "||B|| <= ||I(m)|| + m", check_rooted_bound));
    v.push_back(rooted_check("lemma_rei_basics", "compressed_rooted_family",
                             "d(B) is a down-set and every D_k(B) is simply rooted", check_compressed_rooted));
    v.push_back(rooted_check("lemma_rooted_basics", "rooted_compression_steps",
                             "moved images have their power set in D_k(B); |B - d_B(B)| <= 1", check_rooted_steps));
    v.push_back(rooted_check("lemma_no_falls", "fixed_set_bound", "||B|| <= ||I(m)|| + m - |fixed|", check_no_falls));
    v.push_back(rooted_check("lemma_full_sh", "full_shadow_bound", "||B|| <= ||I(m)|| + m - |full shadow|",
                             check_full_shadow));
    v.push_back(rooted_check("bad_count_bridge", "bad_set_count_bound", "||B|| <= ||I(m)|| + m - b/2",
                             check_bad_count));
    v.push_back(rooted_check("lemma_fall_b", "missing_shadow_fall", "B - b not in B implies d_B(B) in {B, B - b}",
                             check_fall_b));
    v.push_back(rooted_check("lemma_smaller_falls", "subfamily_fixed_sets",
                             "B' within B simply rooted: fixed by d_B' implies fixed by d_B", check_smaller_falls));
    v.push_back(rooted_check("lemma_good_fall", "good_set_fall", "good sets of B have d_B(X) = d_B'(X)",
                             check_good_fall));
    v.push_back(rooted_check("lemma_split_rooted", "split_intersection_bound",
                             "|d(F1) & d(F2)| <= b + |F1 & F2|",
                             [](const SampleContext& c, Tally& t) { check_partition_bound(c, t, "split_rooted"); }));
    v.push_back(rooted_check("cor_lower_b", "harris_bad_set_bound", "2^-n |F1| |F2| <= b + |F1 & F2|",
                             check_lower_b));
    v.push_back(rooted_check("lemma_many_bad", "partition_bad_sets", "2^-n |B_S| |B_T| <= b1 + 2 b2 + b3",
                             [](const SampleContext& c, Tally& t) { check_partition_bound(c, t, "many_bad"); }));
    v.push_back(rooted_check("lemma_large_product", "large_partition_product",
                             "some partition has 4 |B_S| |B_T| >= m0^2 - k^2", check_large_product));
    v.push_back(rooted_check("lemma_low_degrees", "high_degree_colex_bound",
                             "counterexample with an element in m(1/2 + p) sets: ||I(m)|| > m(n/2 - 1 + p)",
                             check_low_degrees, true));
    v.push_back(rooted_check("thm_down_set", "largest_down_set_bound", "||B|| <= ||I(m)|| + m - |D|",
                             check_down_set));
    v.push_back(rooted_check("lemma_few_with_root", "root_heavy_colex_bound",
                             "||B|| <= ||I(m)|| + m - |B_{i}|/3 under the split hypotheses", check_few_with_root, true));
    v.push_back(rooted_check("thm_stability_12", "stability_twelfth",
                             "||B|| <= ||I(m)|| + m - (m^2 - k^2) / (12 2^n)",
                             [](const SampleContext& c, Tally& t) { check_stability(c, t, StabilityVariant::twelfth); }));
    v.push_back(rooted_check("thm_stability_8", "stability_eighth",
                             "||B|| <= ||I(m)|| + m - (m^2 - k^2) / (8 2^n)",
                             [](const SampleContext& c, Tally& t) { check_stability(c, t, StabilityVariant::eighth); }));
    v.push_back(rooted_check("lemma_rei", "reimer_cube_disjointness", "the cubes [A, u_A(A)] are pairwise disjoint",
                             check_reimer));
    v.push_back(rooted_check("lemma_uc_image", "falling_set_up_image",
                             "d_B(B) != B implies B = U_(A,k)(A') for some k >= 1", check_uc_image));
    v.push_back(rooted_check("lemma_cube_set", "cube_base_set", "B in [A, u_A(A)] implies A = B - R(B)",
                             check_cube_set));
    v.push_back(rooted_check("lemma_root_fall", "fall_along_root", "d_B(B) in {B} u {B - r : r in R(B)}",
                             check_root_fall));
    v.push_back(rooted_check("cor_Z_roots", "z_set_roots", "B in Z: |R(B)| >= 2, and >= 3 if B moves",
                             check_z_roots));
    v.push_back(rooted_check("lemma_split_rooted_2", "split_intersection_bound_z",
                             "F1 & F2 full-shadow: |d(F1) & d(F2)| <= b + |Z|",
                             [](const SampleContext& c, Tally& t) { check_partition_bound(c, t, "split_rooted_2"); }));
    v.push_back(rooted_check("lemma_many_bad_2", "partition_bad_sets_z",
                             "2^-n |B_S| |B_T| <= b1 + b2 + b3 + |Z| - |Y|",
                             [](const SampleContext& c, Tally& t) { check_partition_bound(c, t, "many_bad_2"); }));
    v.push_back(rooted_check("lemma_Y_ge_Z", "y_dominates_z", "|Z| <= |Y|",
                             [](const SampleContext& c, Tally& t) { check_partition_bound(c, t, "Y_ge_Z"); }));
    v.push_back(rooted_check("lemma_refinement", "partition_bad_sets_refined", "2^-n |B_S| |B_T| <= b1 + b2 + b3",
                             [](const SampleContext& c, Tally& t) { check_partition_bound(c, t, "refinement"); }));
    v.push_back(rooted_check("thm_colex_bound", "union_closed_size", "union-closed A: ||A|| >= f(|A|)",
                             check_colex_bound_family));
    v.push_back(rooted_check("cor_old_bound", "large_family_two_thirds",
                             "union-closed A with |A| >= 2/3 2^n has an element in half its sets",
                             [](const SampleContext& c, Tally& t) { check_large_family(c, t, 2, 3); }));
    v.push_back(rooted_check("cor_main", "large_family_improved",
                             "union-closed A with |A| >= (2/3 - 1/104) 2^n has an element in half its sets",
                             [](const SampleContext& c, Tally& t) { check_large_family(c, t, 205, 312); }));
    v.push_back(rooted_check("thm_main", "counterexample_colex_bound",
                             "counterexample complement: ||I(m)|| > m(n/2 - 1 + 1/24)", check_main, true));
    v.push_back(global_check("lemma_colex_total", "colex_total_size_bound",
                             "||I(m)|| <= m(r/2 - 1) + 3m'/2, tight on the stated form, m <= 2^16",
                             global_colex_total));
    v.push_back(global_check("colex_threshold", "colex_threshold", "||I(m)|| > mr/2 iff 3m > 2^{r+2}, r <= 12",
                             global_colex_threshold));
    v.push_back(global_check("lemma_colex_sums", "colex_sums",
                             "||I(a)|| + ||I(b)|| <= ||I(a+b)|| - min(a, b), a, b <= 128", global_colex_sums));
    v.push_back(global_check("def_tightness", "deficiency_bound_tightness",
                             "the shifted initial segments attain ||I(m)|| + def", global_def_tightness));
    v.push_back(global_check("def_small_case", "deficiency_small_case", "|F| = 2, def(F) = 3 implies ||F|| <= 3",
                             global_def_small));
    v.push_back(global_check("rooted_bound_tightness", "rooted_total_size_tightness",
                             "{B + n : B in I(m)} attains ||I(m)|| + m", global_rooted_tightness));
    v.push_back(global_check("constant_chain", "constant_chain", "threshold quadratic and certified c1, c2",
                             global_constants));
    v.push_back(rooted_check("conj_degree_bound", "degree_conjecture", "||B|| <= ||I(m)|| + max degree",
                             probe_degree_bound, false, true));
    v.push_back(rooted_check("conj_max_rooted", "max_rooted_conjecture", "||B|| <= ||I(m)|| + max |B_{i}|",
                             probe_max_rooted, false, true));
    v.push_back(rooted_check("conj_eps_delta", "n_free_stability_conjecture",
                             "max |B_{i}| <= m/4 implies ||B|| < ||I(m)|| + m", probe_eps_delta, false, true));
    v.push_back(rooted_check("conj_union_closed", "union_closed_conjecture",
                             "union-closed A != {empty}: some element in half the sets", probe_union_closed, false,
                             true));
    return v;
  }();
  return checks;
}

}  // namespace detail

inline std::vector<CheckDescriptor> check_catalog() {
  std::vector<CheckDescriptor> out;
  for (const auto& c : detail::registry()) out.push_back(c.descriptor);
  return out;
}

inline std::vector<std::string> missing_anchors(const std::vector<CheckDescriptor>& catalog) {
  std::vector<std::string> missing;
  for (auto anchor : kRequiredAnchors) {
    const auto hits = std::count_if(catalog.begin(), catalog.end(),
                                    [&](const CheckDescriptor& d) { return d.anchor == anchor; });
    if (hits != 1) missing.emplace_back(anchor);
  }
  return missing;
}

/// Aborts when a required anchor is missing or covered twice.
inline void assert_catalog_complete() {
  const auto missing = missing_anchors(check_catalog());
  if (missing.empty()) return;
  for (const auto& a : missing) std::fprintf(stderr, "check catalog: anchor '%s' not covered exactly once\n", a.c_str());
  std::abort();
}

struct SuiteConfig {
  EnumerationPlan plan;
  std::vector<std::string> checks;  // empty selects everything
  unsigned parallelism = 1;
  UpOrder up_order = UpOrder::ascending;
  std::size_t violation_cap = 100;
  std::uint64_t shard_size = 4096;
};

struct SuiteReport {
  SuiteConfig config;
  std::uint64_t families_any = 0;
  std::uint64_t families_rooted = 0;
  std::uint64_t unfilled_samples = 0;  // random samples with no family passing the filters
  std::vector<CheckReport> checks;
  std::vector<CheckReport> probes;
  double wall_seconds = 0;

  /// Every executed non-conjecture check passed.
  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckReport& r) { return r.status == CheckStatus::fail; });
  }
};

inline std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  for (ElementSet::Bits s = 0; s < (1u << n); ++s) out.push_back(Partition::from_s(ElementSet(s), n));
  return out;
}

namespace detail {

// Substream tags, so the arbitrary family and the random partition of a
// sample are independent of its simply rooted family.
inline constexpr std::uint64_t kAnyStream = 0xA076'1D64'78BD'642Full;
inline constexpr std::uint64_t kPartitionStream = 0xE703'7ED1'A0B4'28DBull;

struct ShardResult {
  std::vector<Tally> tallies;
  std::uint64_t families_any = 0;
  std::uint64_t families_rooted = 0;
  std::uint64_t unfilled = 0;
};

inline ShardResult run_shard(const SuiteConfig& cfg, const std::vector<const CheckImpl*>& selected,
                             std::uint64_t begin, std::uint64_t end) {
  ShardResult out;
  out.tallies.assign(selected.size(), Tally(cfg.violation_cap));
  const auto& plan = cfg.plan;
  const int n = plan.n;
  bool want_any = false;
  bool want_rooted = false;
  for (const auto* c : selected) {
    want_any |= static_cast<bool>(c->on_any);
    want_rooted |= static_cast<bool>(c->on_rooted);
  }
  const std::vector<Partition> every = plan.mode == EnumerationMode::exhaustive ? all_partitions(n)
                                                                                : std::vector<Partition>{};
  for (std::uint64_t i = begin; i < end; ++i) {
    if (want_any) {
      Family any(n);
      if (plan.mode == EnumerationMode::exhaustive) {
        const Family::Word w = i;
        any = Family::from_words(n, std::span<const Family::Word>(&w, 1));
      } else {
        auto rng = sample_rng(plan.seed ^ kAnyStream, i);
        any = random_family(n, rng);
      }
      ++out.families_any;
      for (std::size_t k = 0; k < selected.size(); ++k) {
        if (selected[k]->on_any) selected[k]->on_any(i, any, out.tallies[k]);
      }
    }
    if (!want_rooted) continue;
    std::optional<Family> rooted;
    try {
      rooted = plan_sample(plan, FamilyKind::simply_rooted, i);
    } catch (const CapacityError&) {
      ++out.unfilled;
      continue;
    }
    if (!rooted) continue;
    ++out.families_rooted;
    std::vector<Partition> partitions = every;
    const bool random = plan.mode == EnumerationMode::random;
    if (random) {
      auto rng = sample_rng(plan.seed ^ kPartitionStream, i);
      partitions.push_back(Partition::from_s(draw_subset(rng, n), n));
    }
    const SampleContext ctx(i, std::move(*rooted), std::move(partitions), cfg.up_order, random);
    for (std::size_t k = 0; k < selected.size(); ++k) {
      if (selected[k]->on_rooted) selected[k]->on_rooted(ctx, out.tallies[k]);
    }
  }
  return out;
}

inline CheckReport finish(const CheckDescriptor& d, const Tally& t, std::string note = {}) {
  CheckReport r;
  r.descriptor = d;
  r.instances_tested = t.instances();
  r.vacuous = t.vacuous_count();
  r.violation_count = t.violation_count();
  r.violations = t.violations();
  r.note = std::move(note);
  if (r.instances_tested == 0) {
    r.status = CheckStatus::skipped;
  } else {
    r.status = r.violation_count == 0 ? CheckStatus::pass : CheckStatus::fail;
  }
  return r;
}

}  // namespace detail

/// Runs the selected checks. Per-family checks fan out over fixed-size
/// shards of the population; results merge in shard order, so the report
/// does not depend on the number of workers.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  assert_catalog_complete();
  const auto start = std::chrono::steady_clock::now();
  const auto& all = detail::registry();
  std::vector<const detail::CheckImpl*> selected;
  if (cfg.checks.empty()) {
    for (const auto& c : all) selected.push_back(&c);
  } else {
    for (const auto& id : cfg.checks) {
      auto it = std::find_if(all.begin(), all.end(), [&](const detail::CheckImpl& c) { return c.descriptor.id == id; });
      if (it == all.end()) throw DomainError("unknown check '" + id + "'");
      if (std::find(selected.begin(), selected.end(), &*it) == selected.end()) selected.push_back(&*it);
    }
  }

  SuiteReport report;
  report.config = cfg;

  std::string capacity_note;
  try {
    cfg.plan.validate();
  } catch (const CapacityError& e) {
    capacity_note = e.what();
  }

  std::vector<const detail::CheckImpl*> per_family;
  for (const auto* c : selected) {
    if (c->descriptor.scope() == CheckScope::per_family) per_family.push_back(c);
  }

  std::vector<detail::Tally> merged(per_family.size(), detail::Tally(cfg.violation_cap));
  if (capacity_note.empty() && !per_family.empty()) {
    const std::uint64_t population = cfg.plan.population();
    const std::uint64_t shard = std::max<std::uint64_t>(1, cfg.shard_size);
    const std::uint64_t shards = (population + shard - 1) / shard;
    std::vector<std::optional<detail::ShardResult>> results(shards);
    std::atomic<std::uint64_t> next{0};
    const auto worker = [&] {
      for (;;) {
        const std::uint64_t s = next.fetch_add(1);
        if (s >= shards) return;
        results[s] = detail::run_shard(cfg, per_family, s * shard, std::min(population, (s + 1) * shard));
      }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.parallelism, static_cast<unsigned>(std::max<std::uint64_t>(1, shards))));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& r : results) {
      for (std::size_t k = 0; k < per_family.size(); ++k) merged[k].merge(r->tallies[k]);
      report.families_any += r->families_any;
      report.families_rooted += r->families_rooted;
      report.unfilled_samples += r->unfilled;
    }
  }

  std::size_t k = 0;
  for (const auto* c : selected) {
    CheckReport r;
    if (c->descriptor.scope() == CheckScope::global) {
      detail::Tally t(cfg.violation_cap);
      c->on_global(t);
      r = detail::finish(c->descriptor, t);
    } else {
      r = detail::finish(c->descriptor, merged[k++], capacity_note);
    }
    (c->descriptor.conjecture ? report.probes : report.checks).push_back(std::move(r));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Fractions as "p/q" strings, integers as plain strings.
inline std::string to_fraction(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline const char* to_string(EnumerationMode m) { return m == EnumerationMode::exhaustive ? "exhaustive" : "random"; }

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.descriptor.id;
  j["anchor"] = r.descriptor.anchor;
  j["statement"] = r.descriptor.statement;
  j["scope"] = r.descriptor.scope() == CheckScope::global ? "global" : "per_family";
  j["population"] = r.descriptor.applies_to == Applicability::any_family      ? "any"
                    : r.descriptor.applies_to == Applicability::simply_rooted ? "simply_rooted"
                                                                               : "none";
  j["conjecture"] = r.descriptor.conjecture;
  j["conditional"] = r.descriptor.conditional;
  j["status"] = to_string(r.status);
  j["instances_tested"] = r.instances_tested;
  j["vacuous"] = r.vacuous;
  j["violation_count"] = r.violation_count;
  auto& vs = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) {
    nlohmann::ordered_json e;
    e["sample"] = v.sample;
    e["family"] = v.family;
    e["detail"] = v.detail;
    e["lhs"] = to_fraction(v.lhs);
    e["rhs"] = to_fraction(v.rhs);
    vs.push_back(std::move(e));
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

/// Report document. Timing and worker count are left out so that runs with
/// the same plan produce identical bytes.
inline nlohmann::ordered_json to_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  auto& cfg = j["run_config"];
  cfg["n"] = r.config.plan.n;
  cfg["mode"] = to_string(r.config.plan.mode);
  cfg["samples"] = r.config.plan.sample_count;
  cfg["up_order"] = to_string(r.config.up_order);
  cfg["shard_size"] = r.config.shard_size;
  cfg["violation_cap"] = r.config.violation_cap;
  if (r.config.plan.size) cfg["size_filter"] = *r.config.plan.size;
  if (r.config.plan.contains_empty) cfg["contains_empty_filter"] = *r.config.plan.contains_empty;
  cfg["checks"] = r.config.checks;
  j["seed"] = r.config.plan.seed;
  j["families_any"] = r.families_any;
  j["families_simply_rooted"] = r.families_rooted;
  j["unfilled_samples"] = r.unfilled_samples;
  j["status"] = r.passed() ? "pass" : "fail";
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  auto& probes = j["conjecture_probes"] = nlohmann::ordered_json::array();
  for (const auto& c : r.probes) probes.push_back(to_json(c));
  return j;
}

/// Fixed-width table for terminals.
inline std::string format_table(const SuiteReport& r) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %-8s %12s %10s %10s\n", "check", "status", "instances", "vacuous",
                "violations");
  out += line;
  const auto rows = [&](const std::vector<CheckReport>& list, const char* tag) {
    for (const auto& c : list) {
      std::snprintf(line, sizeof line, "%-24s %-8s %12llu %10llu %10llu%s\n", c.descriptor.id.c_str(),
                    to_string(c.status), static_cast<unsigned long long>(c.instances_tested),
                    static_cast<unsigned long long>(c.vacuous), static_cast<unsigned long long>(c.violation_count),
                    tag);
      out += line;
    }
  };
  rows(r.checks, "");
  rows(r.probes, "  (conjecture)");
  std::snprintf(line, sizeof line, "families: %llu any, %llu simply rooted; %.2f s; %s\n",
                static_cast<unsigned long long>(r.families_any), static_cast<unsigned long long>(r.families_rooted),
                r.wall_seconds, r.passed() ? "PASS" : "FAIL");
  out += line;
  return out;
}

}  // namespace ucs
