#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ucs/core.hpp"

namespace ucs {

enum class EnumerationMode { exhaustive, random };

inline constexpr int kMaxExhaustiveGround = 4;
inline constexpr int kMaxRandomGround = 16;
inline constexpr std::uint64_t kMaxRejectionDraws = 1'000'000;

struct EnumerationPlan {
  int n = 0;
  EnumerationMode mode = EnumerationMode::exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> size;         // keep only families with this many sets
  std::optional<bool> contains_empty;        // keep only families with/without the empty set

  void validate() const {
    if (n < 0) throw DomainError("ground size must be non-negative");
    if (mode == EnumerationMode::exhaustive && n > kMaxExhaustiveGround) {
      throw CapacityError("exhaustive enumeration is limited to n <= " + std::to_string(kMaxExhaustiveGround));
    }
    if (mode == EnumerationMode::random && n > kMaxRandomGround) {
      throw CapacityError("random generation is limited to n <= " + std::to_string(kMaxRandomGround));
    }
  }

  /// Exhaustive: number of candidate characteristic vectors. Random: samples.
  std::uint64_t population() const {
    return mode == EnumerationMode::exhaustive ? std::uint64_t{1} << (std::uint64_t{1} << n) : sample_count;
  }
};

/// Per-sample generator: sample i of a run seeded with s always sees the same
/// stream, independent of how samples are split across workers.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over (seed, index) for well-separated substreams.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return std::mt19937_64(z ^ (z >> 31));
}

/// Uniform integer in [0, bound) from raw generator output.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

/// Random subset of [n], each element present with probability density/16.
inline ElementSet draw_subset(std::mt19937_64& rng, int n, unsigned density16 = 8) {
  ElementSet::Bits bits = 0;
  for (int i = 0; i < n; ++i) {
    if ((rng() & 15u) < density16) bits |= 1u << i;
  }
  return ElementSet(bits);
}

/// Closure of a list of sets under pairwise unions.
inline Family union_closure(int n, const std::vector<ElementSet>& seeds) {
  Family fam(n);
  std::vector<ElementSet> members;
  std::vector<ElementSet> pending(seeds.rbegin(), seeds.rend());
  while (!pending.empty()) {
    const ElementSet x = pending.back();
    pending.pop_back();
    if (fam.contains(x)) continue;
    fam.insert(x);
    members.push_back(x);
    for (ElementSet t : members) {
      if (!fam.contains(x | t)) pending.push_back(x | t);
    }
  }
  return fam;
}

/// Closure of seed_sets uniformly random subsets of [n].
inline Family random_union_closed(int n, std::uint64_t seed_sets, std::mt19937_64& rng, unsigned density16 = 8) {
  if (n > kMaxRandomGround) throw CapacityError("random generation is limited to n <= 16");
  std::vector<ElementSet> seeds;
  seeds.reserve(seed_sets);
  for (std::uint64_t j = 0; j < seed_sets; ++j) seeds.push_back(draw_subset(rng, n, density16));
  return union_closure(n, seeds);
}

inline Family random_union_closed(int n, std::uint64_t seed_sets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_union_closed(n, seed_sets, rng);
}

/// The union-closed family behind sample `index` of a random plan. The seed
/// count is uniform in [0, 2n], the element density in {2,...,8}/16, and the
/// empty set is added with probability 1/2.
inline Family random_plan_sample(int n, std::uint64_t seed, std::uint64_t index) {
  auto rng = sample_rng(seed, index);
  const auto count = draw_below(rng, static_cast<std::uint64_t>(2 * n + 1));
  const auto density = 2u + static_cast<unsigned>(draw_below(rng, 7));
  const bool with_empty = (rng() & 1u) != 0;
  Family f = random_union_closed(n, count, rng, density);
  if (with_empty) f.insert(ElementSet{});
  return f;
}

/// A uniformly random subfamily of P(n).
inline Family random_family(int n, std::mt19937_64& rng) {
  if (n > kMaxRandomGround) throw CapacityError("random generation is limited to n <= 16");
  std::vector<Family::Word> words(std::max<std::size_t>(1, (std::size_t{1} << n) / 64));
  for (auto& w : words) w = rng();
  return Family::from_words(n, words);
}

namespace detail {

inline bool plan_accepts(const EnumerationPlan& plan, const Family& f) {
  if (plan.size && f.size() != *plan.size) return false;
  if (plan.contains_empty && f.contains(ElementSet{}) != *plan.contains_empty) return false;
  return true;
}

}  // namespace detail

enum class FamilyKind { union_closed, simply_rooted };

/// Family number `index` of a plan, or nullopt when the exhaustive candidate
/// is not union-closed or fails a filter. Simply rooted families are the
/// complements of the union-closed ones.
inline std::optional<Family> plan_sample(const EnumerationPlan& plan, FamilyKind kind, std::uint64_t index) {
  const auto view = [&](Family uc) { return kind == FamilyKind::union_closed ? uc : complement(uc); };
  if (plan.mode == EnumerationMode::exhaustive) {
    const Family::Word word = index;
    Family f = Family::from_words(plan.n, std::span<const Family::Word>(&word, 1));
    if (!is_union_closed(f)) return std::nullopt;
    Family out = view(std::move(f));
    if (!detail::plan_accepts(plan, out)) return std::nullopt;
    return out;
  }
  // Each attempt reseeds the substream of this sample, so a sample's family
  // depends only on (seed, index).
  const std::uint64_t attempts = plan.size || plan.contains_empty ? kMaxRejectionDraws : 1;
  for (std::uint64_t attempt = 0; attempt < attempts; ++attempt) {
    Family out = view(random_plan_sample(plan.n, plan.seed ^ (attempt * 0xD1B54A32D192ED03ull), index));
    if (detail::plan_accepts(plan, out)) return out;
  }
  throw CapacityError("no family passing the filters after 10^6 draws");
}

/// Pull-style stream over an index range of a plan. Index ranges partition
/// the population, so shards can be consumed independently.
class FamilyStream {
 public:
  using Kind = FamilyKind;

  FamilyStream(EnumerationPlan plan, Kind kind)
      : FamilyStream(plan, kind, 0, plan.population()) {}

  FamilyStream(EnumerationPlan plan, Kind kind, std::uint64_t begin, std::uint64_t end)
      : plan_(plan), kind_(kind), next_(begin), end_(end) {
    plan_.validate();
  }

  /// Next family and the population index it came from.
  std::optional<std::pair<std::uint64_t, Family>> next() {
    while (next_ < end_) {
      const std::uint64_t index = next_++;
      if (auto f = plan_sample(plan_, kind_, index)) return std::make_pair(index, std::move(*f));
    }
    return std::nullopt;
  }

 private:
  EnumerationPlan plan_;
  Kind kind_;
  std::uint64_t next_;
  std::uint64_t end_;
};

inline std::vector<Family> enumerate_union_closed(const EnumerationPlan& plan) {
  std::vector<Family> out;
  FamilyStream stream(plan, FamilyStream::Kind::union_closed);
  while (auto item = stream.next()) out.push_back(std::move(item->second));
  return out;
}

inline std::vector<Family> enumerate_simply_rooted(const EnumerationPlan& plan) {
  std::vector<Family> out;
  FamilyStream stream(plan, FamilyStream::Kind::simply_rooted);
  while (auto item = stream.next()) out.push_back(std::move(item->second));
  return out;
}

/// Image of a family under a permutation of [n]; perm[i-1] is the image of i.
inline Family permute(const Family& f, const std::vector<int>& perm) {
  Family out(f.ground());
  f.for_each([&](ElementSet x) {
    ElementSet::Bits y = 0;
    for (auto b = x.bits(); b != 0; b &= b - 1) y |= 1u << (perm[static_cast<std::size_t>(std::countr_zero(b))] - 1);
    out.insert(ElementSet(y));
  });
  return out;
}

/// Lexicographic order on characteristic vectors read from cell 0 upward.
inline bool characteristic_less(const Family& a, const Family& b) {
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w) {
    const auto diff = wa[w] ^ wb[w];
    if (diff) return (wa[w] & (diff & (~diff + 1))) == 0;
  }
  return false;
}

/// Isomorphism class representative: the least permuted copy of a family.
struct CanonicalForm {
  Family representative;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
    return characteristic_less(a.representative, b.representative);
  }
};

inline constexpr int kMaxCanonicalGround = 8;

inline CanonicalForm canonicalize(const Family& f) {
  const int n = f.ground();
  if (n > kMaxCanonicalGround) throw CapacityError("canonicalize is limited to n <= 8");
  const auto members = f.members();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<ElementSet::Bits> cell_map(f.cells());
  Family best = f;
  do {
    for (std::size_t x = 0; x < cell_map.size(); ++x) {
      ElementSet::Bits y = 0;
      for (auto b = static_cast<ElementSet::Bits>(x); b != 0; b &= b - 1) {
        y |= 1u << (perm[static_cast<std::size_t>(std::countr_zero(b))] - 1);
      }
      cell_map[x] = y;
    }
    Family image(n);
    for (ElementSet x : members) image.insert(ElementSet(cell_map[x.bits()]));
    if (characteristic_less(image, best)) best = std::move(image);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best};
}

struct ExtremalSearchResult {
  std::int64_t min_total = 0;
  std::vector<CanonicalForm> minimizers;  // one per isomorphism class, sorted
};

/// Least total size over union-closed families of m sets in P(n), by
/// exhaustive enumeration, with all minimizers up to isomorphism.
inline ExtremalSearchResult extremal_search(int n, std::uint64_t m) {
  if (n > kMaxExhaustiveGround) throw CapacityError("extremal_search is limited to n <= 4");
  EnumerationPlan plan;
  plan.n = n;
  plan.size = m;
  std::optional<std::int64_t> best;
  std::set<CanonicalForm> classes;
  FamilyStream stream(plan, FamilyStream::Kind::union_closed);
  while (auto item = stream.next()) {
    const auto total = item->second.total_size();
    if (best && total > *best) continue;
    if (!best || total < *best) {
      best = total;
      classes.clear();
    }
    classes.insert(canonicalize(item->second));
  }
  if (!best) {
    throw DomainError("no union-closed family of " + std::to_string(m) + " sets in P(" + std::to_string(n) + ")");
  }
  return {*best, std::vector<CanonicalForm>(classes.begin(), classes.end())};
}

}  // namespace ucs
