#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "coxpart/coxgraph.hpp"
#include "coxpart/scalar.hpp"

namespace coxpart {

enum class Side { Left, Right };
enum class Backend { RootPerm, RepMatrix };

/// Lowest common multiple of the finite labels >= 3 (1 when there are none).
int field_modulus(const CoxeterGraph& g);

/// The root system of a spherical graph in the geometric representation.
/// Positive roots occupy indices [0, P), and root r + P is the negative of root r.
class RootSystem {
 public:
  const std::vector<std::vector<ExactScalar>>& roots() const { return roots_; }
  int size() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return num_positive_; }
  bool is_positive(int r) const { return r < num_positive_; }
  int negate(int r) const { return r < num_positive_ ? r + num_positive_ : r - num_positive_; }
  int simple(int i) const { return simple_[static_cast<std::size_t>(i)]; }
  /// Index of s_i(root r).
  int act(int i, int r) const { return action_[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]; }
  const std::vector<std::uint16_t>& action(int i) const { return action_[static_cast<std::size_t>(i)]; }

 private:
  friend RootSystem build_root_system(const CoxeterGraph& g);
  std::vector<std::vector<ExactScalar>> roots_;
  int num_positive_ = 0;
  std::vector<int> simple_;
  std::vector<std::vector<std::uint16_t>> action_;
};

/// Closes the simple roots under the simple reflections. Throws InvalidInput on a
/// non-spherical graph.
RootSystem build_root_system(const CoxeterGraph& g);

class CoxElement;

/// Per-graph data shared by all elements: field, Gram entries, root system.
class CoxeterSystem : public std::enable_shared_from_this<CoxeterSystem> {
 public:
  /// Cached by graph. RootPerm is used exactly when the graph is spherical unless a
  /// backend is forced (forcing RootPerm on a non-spherical graph is an error).
  static std::shared_ptr<const CoxeterSystem> get(const CoxeterGraph& g, std::optional<Backend> force = {});

  const CoxeterGraph& graph() const { return graph_; }
  int rank() const { return graph_.rank(); }
  Backend backend() const { return backend_; }
  bool spherical() const { return spherical_; }
  const std::shared_ptr<const NumberField>& field() const { return field_; }
  /// 2B(α_i, α_j) = −2cos(π/m_{i,j}), with −2 for ∞ and 2 on the diagonal.
  const ExactScalar& gram2(int i, int j) const { return gram2_[static_cast<std::size_t>(i * rank() + j)]; }
  const RootSystem& root_system() const;

  CoxElement identity() const;
  CoxElement generator(int i) const;
  CoxElement from_word(std::span<const int> word) const;
  CoxElement from_names(std::span<const std::string> word) const;
  /// r_J by greedy ascent. Throws InvalidInput when Γ_J is not spherical.
  CoxElement longest(VertexSet J) const;

  CoxeterSystem(const CoxeterGraph& g, Backend b);

 private:
  CoxeterGraph graph_;
  Backend backend_;
  bool spherical_;
  std::shared_ptr<const NumberField> field_;
  std::vector<ExactScalar> gram2_;
  std::optional<RootSystem> roots_;
};

/// An element of W_Γ. Length is tracked incrementally and is exact.
class CoxElement {
 public:
  struct Perm {
    std::vector<std::uint16_t> fwd;  // w(root r)
    std::vector<std::uint16_t> inv;  // w^{-1}(root r)
  };
  struct Matrix {
    std::vector<ExactScalar> m;    // columns are images of simple roots
    std::vector<ExactScalar> inv;  // same for w^{-1}
  };

  CoxElement() = default;

  const CoxeterSystem& system() const { return *sys_; }
  const std::shared_ptr<const CoxeterSystem>& system_ptr() const { return sys_; }
  Backend backend() const { return std::holds_alternative<Perm>(data_) ? Backend::RootPerm : Backend::RepMatrix; }
  int rank() const { return sys_->rank(); }

  int length() const { return length_; }
  bool is_identity() const { return length_ == 0; }
  bool is_descent(int i, Side side) const;
  VertexSet descents(Side side) const;

  /// w ← w·s_i (Right) or s_i·w (Left).
  void multiply(int i, Side side);
  void mul_right(int i) { multiply(i, Side::Right); }
  void mul_left(int i) { multiply(i, Side::Left); }
  CoxElement inverse() const;
  friend CoxElement operator*(const CoxElement& a, const CoxElement& b);

  /// A reduced word (vertex indices), found by the descent walk with least descents first.
  std::vector<int> reduced_word() const;
  std::vector<std::string> reduced_word_names() const;
  /// Re-derives the length by walking descents; throws std::logic_error past the ceiling.
  int walk_length(int ceiling) const;
  VertexSet support() const;
  /// Image of simple root α_i under w (RepMatrix coordinates, or RootPerm's root coordinates).
  std::vector<ExactScalar> image_of_simple(int i) const;

  const Perm* perm() const { return std::get_if<Perm>(&data_); }
  const Matrix* matrix() const { return std::get_if<Matrix>(&data_); }

  std::size_t hash() const;
  friend bool operator==(const CoxElement& a, const CoxElement& b);

 private:
  friend class CoxeterSystem;
  CoxElement(std::shared_ptr<const CoxeterSystem> sys, std::variant<Perm, Matrix> data, int length)
      : sys_(std::move(sys)), data_(std::move(data)), length_(length) {}

  std::shared_ptr<const CoxeterSystem> sys_;
  std::variant<Perm, Matrix> data_;
  int length_ = 0;
};

// Free-function forms of the element operations.

CoxElement element_from_word(const CoxeterGraph& g, std::span<const std::string> word);
int length(const CoxElement& w);
VertexSet descents(const CoxElement& w, Side side);
CoxElement longest_element(const CoxeterGraph& g, VertexSet J);
/// Smallest n >= 1 with w^n = 1, or nullopt when none exists up to bound.
std::optional<int> order_of(const CoxElement& w, int bound);
VertexSet support(const CoxElement& w);

using BlockWord = std::vector<VertexSet>;
/// ℓ(∏ r_{α_k}) = ∑ ℓ(r_{α_k}), decided incrementally: each α_k must avoid the right
/// descents of the prefix product. Blocks must be spherical.
bool is_compatible(const CoxeterSystem& sys, std::span<const VertexSet> word);
/// Length of the longest compatible prefix of the block word.
std::size_t compatible_prefix(const CoxeterSystem& sys, std::span<const VertexSet> word);
/// The alternating block word ∏_n(α, β) = αβαβ… of n letters.
BlockWord alternating(VertexSet a, VertexSet b, int n);

inline constexpr std::size_t kTitsOracleMaxStates = 2000000;
/// Breadth-first closure of word1 under braid relations; true iff word2 is reached.
/// Independent word-problem oracle for testing. Throws std::length_error past max_states.
bool tits_oracle(const CoxeterGraph& g, const std::vector<int>& word1, const std::vector<int>& word2,
                 std::size_t max_states = kTitsOracleMaxStates);

}  // namespace coxpart

template <>
struct std::hash<coxpart::CoxElement> {
  std::size_t operator()(const coxpart::CoxElement& w) const noexcept { return w.hash(); }
};
