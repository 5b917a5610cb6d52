#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ucs/core.hpp"

namespace ucs {

/// d_i: each member B containing i drops to B - i when B - i is absent.
inline Family down_compress_dir(const Family& f, int i) {
  Family moved = falls(f, i);
  Family out = f - moved;
  out |= shift_down(moved, i);
  return out;
}

/// u_i: each member A missing i rises to A + i when A + i is absent.
inline Family up_compress_dir(const Family& f, int i) {
  Family moved = rises(f, i);
  Family out = f - moved;
  out |= shift_up(moved, i);
  return out;
}

/// Order in which the up-compressions u_1..u_n are applied.
///  ascending:  u_1 first, so U_k = u_k...u_1 and U_k(A) is the complement of
///              D_k(complement of A) for every k.
///  descending: u_n first (the right-to-left reading of u_1 u_2 ... u_n).
enum class UpOrder { ascending, descending };

inline const char* to_string(UpOrder o) { return o == UpOrder::ascending ? "ascending" : "descending"; }

/// A family followed through a sequence of single-direction compressions,
/// recording where each original member ends up.
class CompressionTrace {
 public:
  enum class Kind { down, up };

  CompressionTrace(Kind kind, Family original, std::vector<int> order)
      : kind_(kind), original_(std::move(original)), order_(std::move(order)),
        sources_(original_.members()) {
    result_ = original_;
    images_ = sources_;
    for (int i : order_) step(result_, images_, i);
  }

  Kind kind() const { return kind_; }
  const std::vector<int>& order() const { return order_; }
  const Family& original() const { return original_; }
  /// d(F) for down traces, u(F) for up traces.
  const Family& result() const { return result_; }
  /// Original members in colex order; images()[j] is the final image of sources()[j].
  const std::vector<ElementSet>& sources() const { return sources_; }
  const std::vector<ElementSet>& images() const { return images_; }

  /// d_F(B) (or u_F(B)) for a member B.
  ElementSet image(ElementSet b) const { return images_[index_of(b)]; }

  /// Members B with image(B) == B.
  Family fixed() const {
    Family out(original_.ground());
    for (std::size_t j = 0; j < sources_.size(); ++j) {
      if (sources_[j] == images_[j]) out.insert(sources_[j]);
    }
    return out;
  }

  /// The family after the first k compressions (D_k or U_k).
  Family prefix_family(int k) const {
    Family cur = original_;
    std::vector<ElementSet> pos = sources_;
    for (int s = 0; s < k; ++s) step(cur, pos, order_[static_cast<std::size_t>(s)]);
    return cur;
  }

  /// Images of every member after the first k compressions.
  std::vector<ElementSet> prefix_images(int k) const {
    Family cur = original_;
    std::vector<ElementSet> pos = sources_;
    for (int s = 0; s < k; ++s) step(cur, pos, order_[static_cast<std::size_t>(s)]);
    return pos;
  }

  /// Replays the sequence, calling fn(k, prefix family, prefix images) for
  /// k = 0 .. order().size().
  template <class Fn>
  void replay(Fn&& fn) const {
    Family cur = original_;
    std::vector<ElementSet> pos = sources_;
    fn(0, std::as_const(cur), std::span<const ElementSet>(pos));
    for (std::size_t s = 0; s < order_.size(); ++s) {
      step(cur, pos, order_[s]);
      fn(static_cast<int>(s + 1), std::as_const(cur), std::span<const ElementSet>(pos));
    }
  }

  std::size_t index_of(ElementSet b) const {
    auto it = std::lower_bound(sources_.begin(), sources_.end(), b);
    if (it == sources_.end() || *it != b) {
      throw DomainError("compression trace: " + to_string(b) + " is not an original member");
    }
    return static_cast<std::size_t>(it - sources_.begin());
  }

 private:
  void step(Family& cur, std::vector<ElementSet>& pos, int i) const {
    if (kind_ == Kind::down) {
      Family moved = falls(cur, i);
      if (moved.empty()) return;
      for (auto& p : pos) {
        if (moved.contains(p)) p = p.without(i);
      }
      cur -= moved;
      cur |= shift_down(moved, i);
    } else {
      Family moved = rises(cur, i);
      if (moved.empty()) return;
      for (auto& p : pos) {
        if (moved.contains(p)) p = p.with(i);
      }
      cur -= moved;
      cur |= shift_up(moved, i);
    }
  }

  Kind kind_;
  Family original_;
  std::vector<int> order_;
  std::vector<ElementSet> sources_;
  Family result_;
  std::vector<ElementSet> images_;
};

inline std::vector<int> ascending_directions(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  return order;
}

/// d(F) = d_n ... d_1(F), d_1 applied first.
inline CompressionTrace full_down(const Family& f) {
  return CompressionTrace(CompressionTrace::Kind::down, f, ascending_directions(f.ground()));
}

/// u(A) under the chosen direction order.
inline CompressionTrace full_up(const Family& f, UpOrder order = UpOrder::ascending) {
  auto dirs = ascending_directions(f.ground());
  if (order == UpOrder::descending) std::reverse(dirs.begin(), dirs.end());
  return CompressionTrace(CompressionTrace::Kind::up, f, std::move(dirs));
}

/// {B in F : d_F(B) = B}.
inline Family fixed_sets(const Family& f) { return full_down(f).fixed(); }

/// Two-column "before -> after" listing of a trace.
inline std::string format_trace(const CompressionTrace& t) {
  std::string out;
  for (std::size_t j = 0; j < t.sources().size(); ++j) {
    out += to_string(t.sources()[j]) + " -> " + to_string(t.images()[j]) + "\n";
  }
  return out;
}

/// The intervals [A, u_A(A)] of a union-closed family A.
class ReimerDecomposition {
 public:
  struct Cube {
    ElementSet bottom;
    ElementSet top;
  };

  explicit ReimerDecomposition(const Family& a, UpOrder order = UpOrder::ascending)
      : n_(a.ground()), owner_(a.cells(), kNone) {
    if (!is_union_closed(a)) throw DomainError("Reimer decomposition needs a union-closed family");
    const CompressionTrace up = full_up(a, order);
    cubes_.reserve(up.sources().size());
    for (std::size_t j = 0; j < up.sources().size(); ++j) {
      cubes_.push_back({up.sources()[j], up.images()[j]});
    }
    for (std::size_t j = 0; j < cubes_.size() && disjoint_; ++j) {
      const auto free = (cubes_[j].top - cubes_[j].bottom).bits();
      for (auto sub = free;; sub = (sub - 1) & free) {
        auto& slot = owner_[(cubes_[j].bottom | ElementSet(sub)).bits()];
        if (slot != kNone) {
          disjoint_ = false;
          break;
        }
        slot = static_cast<std::int32_t>(j);
        ++covered_;
        if (sub == 0) break;
      }
    }
  }

  const std::vector<Cube>& cubes() const { return cubes_; }
  /// Whether the cubes are pairwise disjoint. Ownership queries are only
  /// meaningful when they are.
  bool disjoint() const { return disjoint_; }
  std::size_t cells_covered() const { return covered_; }
  /// Total cell count of all cubes, sum of 2^{|top - bottom|}.
  std::uint64_t total_cells() const {
    std::uint64_t total = 0;
    for (const auto& c : cubes_) total += std::uint64_t{1} << (c.top - c.bottom).size();
    return total;
  }

  /// Bottom of the cube containing x, if any.
  std::optional<ElementSet> owner(ElementSet x) const {
    const auto j = owner_[x.bits()];
    if (j == kNone) return std::nullopt;
    return cubes_[static_cast<std::size_t>(j)].bottom;
  }

 private:
  static constexpr std::int32_t kNone = -1;
  int n_;
  std::vector<Cube> cubes_;
  std::vector<std::int32_t> owner_;
  bool disjoint_ = true;
  std::size_t covered_ = 0;
};

inline ReimerDecomposition reimer_decomposition(const Family& a, UpOrder order = UpOrder::ascending) {
  return ReimerDecomposition(a, order);
}

struct UpImageWitness {
  int prefix = 0;      // k with U_(A,k)(base) = B
  ElementSet base;     // a member of the complement family
};

/// For a member B of a simply rooted family F that moves under d_F, finds the
/// smallest k and the member A of P(n) \ F whose image after the first k
/// up-compressions of P(n) \ F is B. nullopt means no such pair exists.
inline std::optional<UpImageWitness> uc_image_witness(const Family& f, ElementSet b,
                                                      UpOrder order = UpOrder::ascending) {
  if (!is_simply_rooted(f)) throw DomainError("uc_image_witness needs a simply rooted family");
  if (!f.contains(b)) throw DomainError("uc_image_witness: " + to_string(b) + " is not a member");
  if (full_down(f).image(b) == b) {
    throw DomainError("uc_image_witness: " + to_string(b) + " is fixed by the down-compression");
  }
  std::optional<UpImageWitness> found;
  const CompressionTrace up = full_up(complement(f), order);
  up.replay([&](int k, const Family& fam, std::span<const ElementSet> pos) {
    if (found || k == 0 || !fam.contains(b)) return;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      if (pos[j] == b) {
        found = UpImageWitness{k, up.sources()[j]};
        return;
      }
    }
  });
  return found;
}

}  // namespace ucs
