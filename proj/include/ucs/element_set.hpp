#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucs {

/// Largest supported ground set. A family over [n] is a 2^n-bit vector.
inline constexpr int kMaxGround = 24;

/// Raised when an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a request exceeds a size limit (ground set, enumeration, ...).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A finite subset of {1, 2, ...}. Element i is stored as binary digit i-1,
/// so the integer value of the set is also its rank in colex order.
class ElementSet {
 public:
  using Bits = std::uint32_t;

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(Bits bits) : bits_(bits) {}

  static ElementSet of(std::initializer_list<int> elements) {
    ElementSet s;
    for (int e : elements) s = s.with(e);
    return s;
  }

  /// The ground set [n] = {1, ..., n}.
  static constexpr ElementSet ground(int n) {
    return ElementSet(n >= 32 ? ~Bits{0} : (Bits{1} << n) - 1);
  }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }

  constexpr bool contains(int i) const {
    return i >= 1 && i <= 32 && (bits_ >> (i - 1)) & 1u;
  }
  constexpr ElementSet with(int i) const {
    check_element(i);
    return ElementSet(bits_ | (Bits{1} << (i - 1)));
  }
  constexpr ElementSet without(int i) const {
    check_element(i);
    return ElementSet(bits_ & ~(Bits{1} << (i - 1)));
  }

  /// Largest element, 0 for the empty set.
  constexpr int max_element() const { return std::bit_width(bits_); }
  /// Smallest element, 0 for the empty set.
  constexpr int min_element() const {
    return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1;
  }

  constexpr bool subset_of(ElementSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool within(int n) const { return subset_of(ground(n)); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ | b.bits_);
  }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ & b.bits_);
  }
  /// Set difference.
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ & ~b.bits_);
  }
  friend constexpr ElementSet operator^(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ ^ b.bits_);
  }

  // Integer order on the encoding; coincides with colex order.
  friend constexpr auto operator<=>(ElementSet, ElementSet) = default;

 private:
  static constexpr void check_element(int i) {
    if (i < 1 || i > 32) throw DomainError("element out of range: " + std::to_string(i));
  }

  Bits bits_ = 0;
};

/// "{1,3}" style rendering, "{}" for the empty set.
inline std::string to_string(ElementSet s) {
  std::string out = "{";
  bool first = true;
  for (int e : s.elements()) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace ucs
