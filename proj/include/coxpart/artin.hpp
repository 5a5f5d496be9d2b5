#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coxpart/coxelem.hpp"

namespace coxpart {

/// A simple element w̄ of B+_Γ is represented by the Coxeter element w.
using Simple = CoxElement;

/// An element of B+_Γ, always held in left normal form (x_1, …, x_n): each x_k is a
/// nontrivial simple and D_L(x_{k+1}) ⊆ D_R(x_k).
class PosBraid {
 public:
  PosBraid() = default;
  explicit PosBraid(std::shared_ptr<const CoxeterSystem> sys) : sys_(std::move(sys)) {}

  static PosBraid atom(const std::shared_ptr<const CoxeterSystem>& sys, int i);
  static PosBraid from_word(const std::shared_ptr<const CoxeterSystem>& sys, std::span<const int> word);
  static PosBraid from_names(const std::shared_ptr<const CoxeterSystem>& sys, std::span<const std::string> word);
  /// Normal form of the product of the given simples.
  static PosBraid from_simples(const std::shared_ptr<const CoxeterSystem>& sys, std::vector<Simple> simples);

  const std::shared_ptr<const CoxeterSystem>& system_ptr() const { return sys_; }
  const CoxeterSystem& system() const { return *sys_; }
  const std::vector<Simple>& factors() const { return factors_; }
  int length() const;
  bool is_identity() const { return factors_.empty(); }
  bool is_simple() const { return factors_.size() <= 1; }
  /// Concatenated reduced words of the normal-form factors.
  std::vector<int> word() const;
  /// π(x) ∈ W.
  CoxElement projection() const;
  /// The mirror image: reversed word, so left and right notions swap.
  PosBraid reversed() const;
  std::vector<std::vector<std::string>> factor_names() const;
  std::string to_string() const;

  std::size_t hash() const;
  friend bool operator==(const PosBraid& a, const PosBraid& b);

 private:
  friend PosBraid normalize(const std::shared_ptr<const CoxeterSystem>& sys, std::vector<Simple> seq);
  std::shared_ptr<const CoxeterSystem> sys_;
  std::vector<Simple> factors_;
};

/// w ↦ w̄.
PosBraid lift(const CoxElement& w);
/// Left normal form of the product of a sequence of simples, by local bubbling.
PosBraid normalize(const std::shared_ptr<const CoxeterSystem>& sys, std::vector<Simple> seq);
/// True iff D_L(v) ⊆ D_R(u).
bool is_left_weighted(const Simple& u, const Simple& v);
/// Checks the adjacent-pair criterion along the whole sequence.
bool is_normal_form(const std::vector<Simple>& factors);

PosBraid multiply(const PosBraid& x, const PosBraid& y);
PosBraid operator*(const PosBraid& x, const PosBraid& y);
/// Right normal form: (y_1, …, y_n) with y_n the maximal simple right divisor of the rest.
std::vector<Simple> right_normal_form(const PosBraid& x);
/// L(x) (Left) or the maximal simple right divisor (Right); identity for the trivial braid.
Simple max_simple_divisor(const PosBraid& x, Side side);

bool divides(const PosBraid& d, const PosBraid& x, Side side);
/// z with x = d·z (Left) or x = z·d (Right). Throws InvalidInput when d does not divide x.
PosBraid cancel(const PosBraid& d, const PosBraid& x, Side side);
PosBraid gcd(const PosBraid& x, const PosBraid& y, Side side);

inline constexpr int kDefaultLcmSteps = 10000;
/// Side::Right gives the right lcm x ∨_R y (the least common multiple having both as left
/// divisors); Side::Left the mirror notion. nullopt means no common multiple was found by
/// word reversing within step_bound steps (always the case across an ∞ label). On
/// spherical graphs an exhausted bound falls back to a Garside-element computation.
std::optional<PosBraid> lcm(const PosBraid& x, const PosBraid& y, Side side, int step_bound = kDefaultLcmSteps);
/// r̄_J if Γ_J is spherical, otherwise nullopt. J must be non-empty.
std::optional<PosBraid> lcm_atoms(const std::shared_ptr<const CoxeterSystem>& sys, VertexSet J);

struct FractionPair {
  PosBraid x;  // denominator
  PosBraid y;  // numerator
  Side side;   // Left: x^{-1}y, Right: x y^{-1}
};
/// Divides out the gcd on the tagged side. Requires a spherical graph.
FractionPair irreducible_fraction(const PosBraid& x, const PosBraid& y, Side side);

}  // namespace coxpart

template <>
struct std::hash<coxpart::PosBraid> {
  std::size_t operator()(const coxpart::PosBraid& x) const noexcept { return x.hash(); }
};
