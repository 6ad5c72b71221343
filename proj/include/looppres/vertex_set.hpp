#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <string>
#include <vector>

#include "looppres/errors.hpp"

namespace looppres {

/// Hard upper bound on vertex labels; masks are 32 bits wide and subset loops
/// need one spare bit.
inline constexpr int kHardMaxVertices = 30;
inline constexpr int kDefaultMaxVertices = 24;

/// The configured cap on m. LOOPPRES_MAX_M overrides the default.
inline int max_vertices() {
  if (const char* env = std::getenv("LOOPPRES_MAX_M")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v <= kHardMaxVertices) return static_cast<int>(v);
  }
  return kDefaultMaxVertices;
}

/// A subset of [m] stored as a bitmask: vertex v (1-indexed) is bit v-1.
class VertexSet {
 public:
  using mask_type = std::uint32_t;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(mask_type bits) : bits_(bits) {}
  VertexSet(std::initializer_list<int> vertices) {
    for (int v : vertices) *this = with(v);
  }
  explicit VertexSet(const std::vector<int>& vertices) {
    for (int v : vertices) *this = with(v);
  }

  /// The full set [m].
  static VertexSet range(int m) {
    check_vertex(m == 0 ? 1 : m);
    return VertexSet(m == 0 ? 0u : static_cast<mask_type>((std::uint64_t{1} << m) - 1));
  }
  static VertexSet singleton(int v) { return VertexSet{}.with(v); }

  constexpr mask_type bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }

  bool contains(int v) const {
    return v >= 1 && v <= kHardMaxVertices && ((bits_ >> (v - 1)) & 1u);
  }
  VertexSet with(int v) const {
    check_vertex(v);
    return VertexSet(bits_ | (mask_type{1} << (v - 1)));
  }
  VertexSet without(int v) const {
    check_vertex(v);
    return VertexSet(bits_ & ~(mask_type{1} << (v - 1)));
  }

  /// Largest element; 0 for the empty set (stands in for -infinity).
  int max() const { return empty() ? 0 : 32 - std::countl_zero(bits_); }
  /// Smallest element; 0 for the empty set.
  int min() const { return empty() ? 0 : std::countr_zero(bits_) + 1; }

  /// |J_{<v}|
  int count_below(int v) const {
    if (v <= 1) return 0;
    if (v > 32) return size();
    return std::popcount(bits_ & static_cast<mask_type>((std::uint64_t{1} << (v - 1)) - 1));
  }
  /// |J_{>v}|
  int count_above(int v) const {
    if (v >= 32) return 0;
    if (v < 1) return size();
    return std::popcount(bits_ >> v);
  }
  VertexSet below(int v) const {
    if (v <= 1) return {};
    if (v > 32) return *this;
    return VertexSet(bits_ & static_cast<mask_type>((std::uint64_t{1} << (v - 1)) - 1));
  }
  VertexSet above(int v) const {
    if (v >= 32) return {};
    if (v < 1) return *this;
    return VertexSet(bits_ & ~static_cast<mask_type>((std::uint64_t{1} << v) - 1));
  }

  constexpr bool is_subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(VertexSet other) const { return (bits_ & other.bits_) != 0; }

  /// Elements in increasing order.
  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (mask_type b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VertexSet a, VertexSet b) = default;
  friend constexpr std::strong_ordering operator<=>(VertexSet a, VertexSet b) { return a.bits_ <=> b.bits_; }

 private:
  static void check_vertex(int v) {
    if (v < 1 || v > kHardMaxVertices)
      throw VertexOutOfRange("vertex " + std::to_string(v) + " outside 1.." + std::to_string(kHardMaxVertices));
  }

  mask_type bits_ = 0;
};

/// Order used for deterministic output: by size, then by bitmask.
struct SizeThenMask {
  bool operator()(VertexSet a, VertexSet b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits() < b.bits();
  }
};

/// Koszul sign exponent: number of pairs (a, b) in A x B with a > b.
inline int koszul_theta(VertexSet a, VertexSet b) {
  int count = 0;
  for (int x : a.elements()) count += b.count_below(x);
  return count;
}

/// (-1)^e as an int.
constexpr int sign_of(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

/// "{1,3,4}"
inline std::string to_string(VertexSet s) {
  std::string out = "{";
  bool first = true;
  for (int v : s.elements()) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

/// Calls f(A) for every subset A of s, in increasing bitmask order.
template <class F>
void for_each_subset(VertexSet s, F&& f) {
  const VertexSet::mask_type full = s.bits();
  VertexSet::mask_type sub = 0;
  while (true) {
    f(VertexSet(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

}  // namespace looppres
