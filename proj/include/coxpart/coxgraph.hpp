#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coxpart/vertex_set.hpp"

namespace coxpart {

/// Thrown for malformed graphs, partitions and other invalid inputs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Coxeter matrix entry m_{i,j}: a positive integer or infinity.
class Label {
 public:
  constexpr Label() = default;
  constexpr explicit Label(std::uint32_t m) : m_(m) {
    if (m == 0) throw InvalidInput("Coxeter label must be positive");
  }
  static constexpr Label infinity() {
    Label l;
    l.m_ = 0;
    return l;
  }
  constexpr bool is_infinite() const { return m_ == 0; }
  constexpr bool is_finite() const { return m_ != 0; }
  /// Only valid on finite labels.
  std::uint32_t value() const {
    if (m_ == 0) throw std::logic_error("value() of an infinite label");
    return m_;
  }
  /// True when the pair forms an edge of the Coxeter graph (m >= 3 or infinite).
  constexpr bool is_edge() const { return m_ == 0 || m_ >= 3; }
  std::string to_string() const { return m_ == 0 ? "inf" : std::to_string(m_); }
  static Label parse(std::string_view text);

  friend constexpr bool operator==(Label, Label) = default;

 private:
  std::uint32_t m_ = 1;  // 0 encodes infinity
};

/// A Coxeter matrix over a finite vertex set of string identifiers, kept in
/// lexicographic order. Pairs that are never mentioned carry label 2.
class CoxeterGraph {
 public:
  struct Edge {
    std::string a;
    std::string b;
    Label m;
  };

  CoxeterGraph() = default;
  CoxeterGraph(std::vector<std::string> vertices, const std::vector<Edge>& edges);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& vertices() const { return names_; }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  std::optional<int> find(std::string_view id) const;
  int index_of(std::string_view id) const;
  VertexSet subset(std::span<const std::string> ids) const;
  std::vector<std::string> names_of(VertexSet s) const;

  Label label(int i, int j) const { return labels_[static_cast<std::size_t>(i * rank() + j)]; }
  VertexSet all() const { return VertexSet::range(rank()); }
  /// Vertices joined to i by an edge (label >= 3 or infinite).
  VertexSet neighbours(int i) const;
  /// Non-trivial pairs (label != 2), i < j, in index order.
  std::vector<Edge> edges() const;
  bool has_infinite_label() const;

  friend bool operator==(const CoxeterGraph& a, const CoxeterGraph& b) {
    return a.names_ == b.names_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Label> labels_;
};

/// Γ_J, with vertices renumbered in increasing order of their index in g.
CoxeterGraph restrict(const CoxeterGraph& g, VertexSet J);
/// Connected components of the edge graph restricted to J (defaults to all vertices).
std::vector<VertexSet> components(const CoxeterGraph& g);
std::vector<VertexSet> components(const CoxeterGraph& g, VertexSet J);
/// True iff every label between J and K is 2. J and K must partition the vertex set.
bool is_direct_product(const CoxeterGraph& g, VertexSet J, VertexSet K);
/// Same test without the partition requirement.
bool commute_blocks(const CoxeterGraph& g, VertexSet J, VertexSet K);

struct SphericalType {
  enum class Family { A, B, D, E, F, H, I };
  Family family = Family::A;
  int rank = 1;
  int m = 0;  // dihedral parameter, only for family I

  std::string name() const;
  friend auto operator<=>(const SphericalType&, const SphericalType&) = default;
};

/// Irreducible spherical types of the components (sorted), or nullopt if some
/// component is not on the list. Decided by diagram shape and labels only.
std::optional<std::vector<SphericalType>> classify_spherical(const CoxeterGraph& g);
bool is_spherical(const CoxeterGraph& g);
bool is_spherical(const CoxeterGraph& g, VertexSet J);
std::string type_name(const std::vector<SphericalType>& types);
/// Parses names like "A3", "E8", "I2(7)"; canonicalises I2(3) and I2(4).
SphericalType parse_spherical_type(std::string_view text);
/// Coxeter number h of an irreducible spherical type.
int coxeter_number(const SphericalType& t);
int coxeter_number(const std::vector<SphericalType>& t);

/// The 2-colouring {α, β} of a connected graph's edge graph; α holds vertex 0.
std::array<VertexSet, 2> bipartite_partition(const CoxeterGraph& g);

using VertexPermutation = std::vector<int>;

struct AutomorphismGroup {
  std::vector<VertexPermutation> elements;
  std::vector<VertexPermutation> generators;
};

inline constexpr int kMaxAutomorphismVertices = 16;
inline constexpr std::size_t kMaxAutomorphismGroupOrder = 500000;

/// All label-preserving vertex bijections, optionally preserving a colouring.
/// Throws InvalidInput beyond kMaxAutomorphismVertices vertices or an oversized group.
AutomorphismGroup automorphisms(const CoxeterGraph& g, std::span<const int> colours = {});
bool is_automorphism(const CoxeterGraph& g, const VertexPermutation& f);
/// An index map g1 → g2 preserving labels (and colours when given).
std::optional<VertexPermutation> find_isomorphism(const CoxeterGraph& g1, const CoxeterGraph& g2,
                                                  std::span<const int> colours1 = {},
                                                  std::span<const int> colours2 = {});
/// Orbits of the group generated by gens, each a VertexSet, ordered by smallest vertex.
std::vector<VertexSet> orbits(int rank, std::span<const VertexPermutation> gens);

}  // namespace coxpart
