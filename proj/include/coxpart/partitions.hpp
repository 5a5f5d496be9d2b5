#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coxpart/coxelem.hpp"
#include "coxpart/coxgraph.hpp"

namespace coxpart {

/// Disjoint non-empty named blocks of vertices of a reference graph. The carrier is their union.
class BlockPartition {
 public:
  BlockPartition() = default;
  /// Block names default to the member ids joined by '+'. Blocks are kept in the given order.
  BlockPartition(CoxeterGraph graph, std::vector<VertexSet> blocks, std::vector<std::string> names = {});

  const CoxeterGraph& graph() const { return graph_; }
  const std::vector<VertexSet>& blocks() const { return blocks_; }
  const std::vector<std::string>& names() const { return names_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  VertexSet block(int k) const { return blocks_.at(static_cast<std::size_t>(k)); }
  const std::string& name(int k) const { return names_.at(static_cast<std::size_t>(k)); }
  int index_of(std::string_view name) const;
  VertexSet carrier() const;
  /// Index of the block holding vertex v, or -1.
  int block_of(int v) const;

  friend bool operator==(const BlockPartition& a, const BlockPartition& b) {
    return a.graph_ == b.graph_ && a.blocks_ == b.blocks_ && a.names_ == b.names_;
  }

 private:
  CoxeterGraph graph_;
  std::vector<VertexSet> blocks_;
  std::vector<std::string> names_;
};

std::string default_block_name(const CoxeterGraph& g, VertexSet block);
/// `block <name> = <id>,<id>,…` lines; `#` starts a comment. Errors carry line numbers.
BlockPartition parse_partition(const CoxeterGraph& g, std::string_view text);
std::string partition_to_text(const BlockPartition& p);
/// The same blocks, sorted by smallest vertex (names follow their blocks).
BlockPartition canonical_order(const BlockPartition& p);

enum class Outcome { Admissible, NotAdmissible, Unknown };
std::string to_string(Outcome o);

/// One entry |r_α r_β| of the type matrix.
struct PairOrder {
  enum class Kind { Finite, InfiniteCertified, ExceedsBound };
  Kind kind = Kind::Finite;
  int order = 1;  // meaningful for Finite only
  std::string to_string() const;
  friend bool operator==(const PairOrder&, const PairOrder&) = default;
};

struct PartitionType {
  std::vector<std::string> names;
  std::vector<std::vector<PairOrder>> entries;
  /// True when no entry is ExceedsBound.
  bool resolved() const;
  /// Γ̃ as a Coxeter graph on the block names. Requires resolved().
  CoxeterGraph graph() const;
};

/// The alternating block word ∏_n(first, second) is incompatible.
struct Witness {
  int first = 0;   // block index
  int second = 0;  // block index
  int n = 0;
};

struct Certificate {
  enum class Kind { None, ExhaustiveFinite, Orbit, Lift, Components };
  Kind kind = Kind::None;
  std::vector<VertexPermutation> generators;  // Orbit: generators of G ≤ Aut(Γ_J) in carrier indices
  std::string detail;
};
std::string to_string(Certificate::Kind k);

struct PairVerdict {
  int a = 0, b = 0;  // block indices
  Outcome outcome = Outcome::Unknown;
  PairOrder order;
  std::optional<Witness> witness;
  Certificate certificate;
  std::string reason;
};

struct AdmissibilityVerdict {
  Outcome outcome = Outcome::Unknown;
  PartitionType type;
  std::optional<Witness> witness;
  Certificate certificate;  // global certificate (orbit or lift) when one was used
  std::vector<PairVerdict> pairs;
  int bound = 0;
};

inline constexpr int kDefaultBound = 64;

bool is_spherical_partition(const BlockPartition& p);
/// The decision ladder on Γ_{α∪β} for one unordered pair of blocks of p.
PairVerdict check_pair(const BlockPartition& p, int a, int b, int bound = kDefaultBound);
/// All pairs, then a global orbit certificate when some pair is Unknown.
AdmissibilityVerdict check_admissible(const BlockPartition& p, int bound = kDefaultBound);
PartitionType partition_type(const BlockPartition& p, int bound = kDefaultBound);
/// Re-evaluates a NotAdmissible witness from scratch.
bool replay_witness(const BlockPartition& p, const Witness& w);

/// Spherical orbits of the group generated by gens, as blocks named after their members.
BlockPartition orbit_partition(const CoxeterGraph& g, std::span<const VertexPermutation> gens);
/// True iff the blocks of p are exactly the orbits of some subgroup of Aut(Γ_J) preserving
/// each block; on success gens receives generators of the largest such subgroup.
bool is_orbit_partition(const BlockPartition& p, std::vector<VertexPermutation>* gens = nullptr);

/// Blocks Φ̄ = ∪_{α∈Φ} α for each block Φ of inner; inner lives on the type graph of outer.
BlockPartition lift_partition(const BlockPartition& outer, const BlockPartition& inner);

struct LiftResult {
  AdmissibilityVerdict outer;
  BlockPartition lifted;
  AdmissibilityVerdict inner;   // possibly upgraded by the lifted verdict
  AdmissibilityVerdict lifted_verdict;  // possibly upgraded by the inner verdict
};
/// inner is admissible iff its lift is; an Admissible verdict on either side certifies the other.
/// outer must be Admissible with a resolved type, else InvalidInput.
LiftResult certify_by_lift(const BlockPartition& outer, const BlockPartition& inner, int bound = kDefaultBound);

struct ProductSplitReport {
  std::vector<VertexSet> factors;
  std::vector<PairVerdict> factor_verdicts;
  PairVerdict global;
  std::optional<int> lcm_of_orders;  // when every factor order is finite
  bool lcm_matches = true;           // global finite order equals the lcm
  bool decided = true;               // no Unknown among the verdicts
  bool rule_holds = true;            // global Admissible ⇔ all factors Admissible with equal orders
};
/// g = Γ_1 × … × Γ_n given by factors (vertex sets with commuting cross labels), with a
/// 2-partition {α, β} meeting every factor.
ProductSplitReport product_split_check(const CoxeterGraph& g, std::span<const VertexSet> factors, VertexSet alpha,
                                       VertexSet beta, int bound = kDefaultBound);

struct Candidate {
  enum class Stage { Admissible, CommutingVertex, LengthFilter, DirectCheck, Unknown };
  VertexSet alpha, beta;
  int class_size = 1;  // 2-partitions in its Aut(Γ)-class
  bool bipartite = false;
  Stage stage = Stage::Unknown;
  std::optional<int> length_n;  // n allowed by the length filter
  PairVerdict verdict;          // filled once the direct check ran
  std::string reason;
};
std::string to_string(Candidate::Stage s);

struct ClassificationReport {
  CoxeterGraph graph;
  std::string type;
  int longest_length = 0;
  int total_partitions = 0;  // unordered 2-partitions
  int classes = 0;           // up to Aut(Γ)
  std::vector<Candidate> candidates;  // one per class, deterministic order
  std::vector<const Candidate*> admissible() const;
  int count(Candidate::Stage s) const;
};
inline constexpr int kMaxClassifyRank = 16;
/// Admissible 2-partitions of an irreducible spherical graph, up to graph automorphism.
ClassificationReport classify_2partitions(const CoxeterGraph& g, int bound = kDefaultBound);

/// Maps a subset of ambient indices into the indices of restrict(g, J).
VertexSet compress(VertexSet s, VertexSet J);
/// Inverse of compress.
VertexSet expand(VertexSet s, VertexSet J);

}  // namespace coxpart
