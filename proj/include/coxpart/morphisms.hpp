#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coxpart/artin.hpp"
#include "coxpart/partitions.hpp"

namespace coxpart {

/// φ : B+_Γ̃ → B+_Γ, s̄_α ↦ r̄_α, induced by an admissible partition of Γ_J.
struct AdmissibleMorphism {
  std::shared_ptr<const CoxeterSystem> target;  // Γ
  std::shared_ptr<const CoxeterSystem> source;  // Γ̃ on the block names
  BlockPartition partition;                     // blocks of J ⊆ I
  PartitionType type;
  std::vector<int> block_of_source;  // source vertex index -> block index
  std::vector<Simple> images;        // indexed by source vertex: r_α in W_Γ

  VertexSet carrier() const { return partition.carrier(); }
  const CoxeterGraph& source_graph() const { return source->graph(); }
  const CoxeterGraph& target_graph() const { return target->graph(); }
};

/// Requires an Admissible verdict for p with a resolved type.
AdmissibleMorphism build_morphism(const BlockPartition& p, const AdmissibilityVerdict& verdict);
/// Runs check_admissible first.
AdmissibleMorphism build_morphism(const BlockPartition& p, int bound = kDefaultBound);
/// The all-singleton partition, blocks named after their vertices.
AdmissibleMorphism identity_morphism(const CoxeterGraph& g);

/// φ(x): the product of the atom images, in normal form.
PosBraid apply(const AdmissibleMorphism& m, const PosBraid& x);
/// φ(s̄_α) = r̄_α for a source vertex index.
PosBraid image_of_atom(const AdmissibleMorphism& m, int source_vertex);

struct CheckResult {
  std::string name;
  int cases = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  int violation_count() const;
  const CheckResult& check(const std::string& name) const;
};

struct SampleOptions {
  int samples = 200;
  int max_length = 6;
  std::uint64_t seed = 0;
};

/// A word of uniformly random length in [0, max_length] with uniform letters.
std::vector<int> random_word(int rank, int max_length, std::mt19937_64& rng);

/// lcm respect on atom pairs (existence and value, both sides), on random pairs, divisibility
/// reflection on random pairs and injectivity on atoms and random elements.
VerificationReport verify_respects_lcm(const AdmissibleMorphism& m, const SampleOptions& opt = {});
/// Factorwise left and right normal forms on random elements, gcd respect on random pairs,
/// φ(r̄_Ĩ) = r̄_J and irreducible fractions when source and target are spherical.
VerificationReport verify_respects_normal_forms(const AdmissibleMorphism& m, const SampleOptions& opt = {});

struct LcmPairCheck {
  int a = 0, b = 0;
  enum class Condition { Fi, In, None } condition = Condition::None;
  std::optional<int> n;  // Ω entry, nullopt for ∞
  std::string reason;
};
struct LcmVerdict {
  bool is_lcm = false;
  std::vector<LcmPairCheck> pairs;
};
std::string to_string(LcmPairCheck::Condition c);
/// Checks (Fi)/(In) for every pair. omega is a Coxeter graph on the block names; without it,
/// each entry is ∞ when Γ_{α∪β} is non-spherical and |r_α r_β| otherwise.
LcmVerdict is_lcm_partition(const BlockPartition& p, const std::optional<CoxeterGraph>& omega = {});

/// δ(m): m−1 for even m, (m−1)/2 for odd m, 2 for ∞.
int burst_delta(Label m);
/// lcm of δ(m_{i,j}) over all pairs.
int burst_base(const CoxeterGraph& g);

struct BurstResult {
  CoxeterGraph input;
  int n = 0;
  CoxeterGraph output;
  BlockPartition partition;  // T(i), named after i
};
/// Vertices i^(k), k = 1..N. N must be a positive multiple of burst_base(g).
BurstResult burst(const CoxeterGraph& g, int n);
/// check_admissible on {T(i)}, with ∞ pairs certified structurally: every component of
/// Γ̂_{T(i)∪T(j)} must be a square whose opposite vertices lie in the same block.
AdmissibilityVerdict verify_burst(const BurstResult& b, int bound = kDefaultBound);

struct FoldingPair {
  int i = 0, j = 0;  // vertices of Γ
  enum class Case { A, B, C1, C2, C3, D, Product, Reject } tag = Case::Reject;
  int copies = 0;  // n for cases A and D
  std::string reason;
};
std::string to_string(FoldingPair::Case c);

struct FoldingReport {
  std::vector<int> map;            // Γ' vertex -> Γ vertex
  std::vector<bool> fiber_ok;      // condition (1), per vertex of Γ
  std::vector<FoldingPair> pairs;  // pairs i < j; empty on the general path
  bool tagged = false;             // false when Γ has an ∞ label
  bool is_folding = false;
  Outcome cross_check = Outcome::Unknown;  // check_admissible on the fibre partition
  bool cross_type_matches = false;         // its type equals Γ
  bool agrees = false;                     // tag verdict and cross check agree
};
/// f maps each vertex of g_prime to a vertex of g.
FoldingReport check_folding(const std::vector<int>& f, const CoxeterGraph& g_prime, const CoxeterGraph& g,
                            int bound = kDefaultBound);

/// outer ∘ inner, where inner's target graph is the source type graph of outer.
AdmissibleMorphism compose(const AdmissibleMorphism& outer, const AdmissibleMorphism& inner, int bound = kDefaultBound);

inline constexpr std::size_t kDefaultEnumerationBudget = 2000000;

struct FixedSubmonoidReport {
  BlockPartition orbits;  // spherical orbits of G
  std::string orbit_type;  // spherical type name of the orbit type graph, or its text form
  CoxeterGraph orbit_type_graph;
  std::vector<std::size_t> monoid_counts;     // |B+_Γ| per length
  std::vector<std::size_t> fixed_counts;      // fixed elements per length
  std::vector<std::size_t> submonoid_counts;  // ⟨r̄_α⟩+ per length
  std::size_t mismatches = 0;                 // elements in exactly one of the two sets
  bool equal() const { return mismatches == 0 && fixed_counts == submonoid_counts; }
};
/// Compares the G-fixed elements of B+_Γ with the submonoid generated by the r̄_α, α a
/// spherical orbit, on all elements up to length_bound.
FixedSubmonoidReport fixed_submonoid_check(const CoxeterGraph& g, const std::vector<VertexPermutation>& gens,
                                           int length_bound, std::size_t budget = kDefaultEnumerationBudget);

/// All elements of B+_Γ of length ≤ bound, grouped by length.
std::vector<std::vector<PosBraid>> enumerate_monoid(const std::shared_ptr<const CoxeterSystem>& sys, int bound,
                                                    std::size_t budget = kDefaultEnumerationBudget);

}  // namespace coxpart
