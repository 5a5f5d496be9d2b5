#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace coxpart {

/// Maximum number of vertices a graph may carry. Vertex subsets are bitmasks.
inline constexpr int kMaxVertices = 64;

/// A subset of the vertex indices 0..63 of some reference graph.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<int> indices) {
    for (int i : indices) insert(i);
  }

  static VertexSet range(int n) {
    if (n < 0 || n > kMaxVertices) throw std::out_of_range("VertexSet::range");
    return VertexSet(n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static VertexSet singleton(int i) { return VertexSet(std::uint64_t{1} << i); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool contains(int i) const { return (bits_ >> i) & 1U; }
  void insert(int i) {
    if (i < 0 || i >= kMaxVertices) throw std::out_of_range("vertex index out of range");
    bits_ |= std::uint64_t{1} << i;
  }
  void erase(int i) { bits_ &= ~(std::uint64_t{1} << i); }
  /// Smallest index, or -1 when empty.
  int first() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }

  bool subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }
  bool intersects(VertexSet other) const { return (bits_ & other.bits_) != 0; }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
  VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
  friend constexpr bool operator==(VertexSet, VertexSet) = default;
  friend constexpr auto operator<=>(VertexSet a, VertexSet b) { return a.bits_ <=> b.bits_; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace coxpart

template <>
struct std::hash<coxpart::VertexSet> {
  std::size_t operator()(coxpart::VertexSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
