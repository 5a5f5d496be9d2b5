#include "coxpart/partitions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace coxpart {

VertexSet compress(VertexSet s, VertexSet J) {
  VertexSet out;
  int k = 0;
  J.for_each([&](int v) {
    if (s.contains(v)) out.insert(k);
    ++k;
  });
  return out;
}

VertexSet expand(VertexSet s, VertexSet J) {
  VertexSet out;
  int k = 0;
  J.for_each([&](int v) {
    if (s.contains(k)) out.insert(v);
    ++k;
  });
  return out;
}

std::string default_block_name(const CoxeterGraph& g, VertexSet block) {
  std::string out;
  block.for_each([&](int v) { out += (out.empty() ? "" : "+") + g.name(v); });
  return out;
}

BlockPartition::BlockPartition(CoxeterGraph graph, std::vector<VertexSet> blocks, std::vector<std::string> names)
    : graph_(std::move(graph)), blocks_(std::move(blocks)), names_(std::move(names)) {
  VertexSet seen;
  for (VertexSet b : blocks_) {
    if (b.empty()) throw InvalidInput("partition has an empty block");
    if (!b.subset_of(graph_.all())) throw InvalidInput("partition block contains unknown vertices");
    if (b.intersects(seen)) throw InvalidInput("partition blocks overlap");
    seen |= b;
  }
  if (names_.empty())
    for (VertexSet b : blocks_) names_.push_back(default_block_name(graph_, b));
  if (names_.size() != blocks_.size()) throw InvalidInput("partition block names do not match the blocks");
  std::set<std::string> distinct(names_.begin(), names_.end());
  if (distinct.size() != names_.size()) throw InvalidInput("duplicate block name");
}

int BlockPartition::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return static_cast<int>(k);
  throw InvalidInput("unknown block '" + std::string(name) + "'");
}

VertexSet BlockPartition::carrier() const {
  VertexSet s;
  for (VertexSet b : blocks_) s |= b;
  return s;
}

int BlockPartition::block_of(int v) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (blocks_[k].contains(v)) return static_cast<int>(k);
  return -1;
}

BlockPartition parse_partition(const CoxeterGraph& g, std::string_view text) {
  std::vector<VertexSet> blocks;
  std::vector<std::string> names;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto fail = [&](const std::string& what) { return InvalidInput("line " + std::to_string(lineno) + ": " + what); };
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw != "block") throw fail("expected 'block <name> = <id>,<id>,...'");
    std::string rest;
    std::getline(ls, rest);
    auto eq = rest.find('=');
    if (eq == std::string::npos) throw fail("missing '='");
    std::istringstream ns(rest.substr(0, eq));
    std::string name, extra;
    if (!(ns >> name) || (ns >> extra)) throw fail("expected a single block name before '='");
    std::string ids = rest.substr(eq + 1);
    std::replace(ids.begin(), ids.end(), ',', ' ');
    std::istringstream is(ids);
    VertexSet b;
    for (std::string id; is >> id;) {
      auto v = g.find(id);
      if (!v) throw fail("unknown vertex '" + id + "'");
      if (b.contains(*v)) throw fail("vertex '" + id + "' repeated");
      b.insert(*v);
    }
    if (b.empty()) throw fail("empty block '" + name + "'");
    if (std::find(names.begin(), names.end(), name) != names.end()) throw fail("duplicate block name '" + name + "'");
    for (VertexSet other : blocks)
      if (other.intersects(b)) throw fail("block '" + name + "' overlaps an earlier block");
    blocks.push_back(b);
    names.push_back(name);
  }
  try {
    return BlockPartition(g, blocks, names);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("partition: ") + e.what());
  }
}

std::string partition_to_text(const BlockPartition& p) {
  std::string out;
  for (int k = 0; k < p.size(); ++k) {
    out += "block " + p.name(k) + " =";
    bool first = true;
    p.block(k).for_each([&](int v) {
      out += (first ? " " : ",") + p.graph().name(v);
      first = false;
    });
    out += "\n";
  }
  return out;
}

BlockPartition canonical_order(const BlockPartition& p) {
  std::vector<int> order(static_cast<std::size_t>(p.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return p.block(a).first() < p.block(b).first(); });
  std::vector<VertexSet> blocks;
  std::vector<std::string> names;
  for (int k : order) {
    blocks.push_back(p.block(k));
    names.push_back(p.name(k));
  }
  return BlockPartition(p.graph(), blocks, names);
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Admissible: return "Admissible";
    case Outcome::NotAdmissible: return "NotAdmissible";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::None: return "none";
    case Certificate::Kind::ExhaustiveFinite: return "exhaustive-finite";
    case Certificate::Kind::Orbit: return "orbit";
    case Certificate::Kind::Lift: return "lift";
    case Certificate::Kind::Components: return "components";
  }
  return "?";
}

std::string PairOrder::to_string() const {
  switch (kind) {
    case Kind::Finite: return std::to_string(order);
    case Kind::InfiniteCertified: return "inf";
    case Kind::ExceedsBound: return ">bound";
  }
  return "?";
}

bool PartitionType::resolved() const {
  for (const auto& row : entries)
    for (const auto& e : row)
      if (e.kind == PairOrder::Kind::ExceedsBound) return false;
  return true;
}

CoxeterGraph PartitionType::graph() const {
  if (!resolved()) throw InvalidInput("partition type has unresolved entries");
  std::vector<CoxeterGraph::Edge> edges;
  for (std::size_t a = 0; a < names.size(); ++a)
    for (std::size_t b = a + 1; b < names.size(); ++b) {
      const auto& e = entries[a][b];
      if (e.kind == PairOrder::Kind::InfiniteCertified) edges.push_back({names[a], names[b], Label::infinity()});
      else if (e.order != 2) edges.push_back({names[a], names[b], Label(static_cast<std::uint32_t>(e.order))});
    }
  return CoxeterGraph(names, edges);
}

bool is_spherical_partition(const BlockPartition& p) {
  for (VertexSet b : p.blocks())
    if (!is_spherical(p.graph(), b)) return false;
  return true;
}

namespace {

constexpr int kSphericalOrderBound = 1 << 20;

// First incompatible alternating word among ∏_n(α,β), ∏_n(β,α) for n ≤ nmax.
std::optional<Witness> search_witness(const CoxeterSystem& sys, VertexSet ca, VertexSet cb, int a, int b, int nmax) {
  std::size_t pa = compatible_prefix(sys, alternating(ca, cb, nmax));
  std::size_t pb = compatible_prefix(sys, alternating(cb, ca, nmax));
  auto limit = static_cast<std::size_t>(nmax);
  if (pa == limit && pb == limit) return std::nullopt;
  if (pa <= pb) return Witness{a, b, static_cast<int>(pa) + 1};
  return Witness{b, a, static_cast<int>(pb) + 1};
}

// A vertex of one block commuting with the whole other block, if any.
std::optional<int> commuting_vertex(const CoxeterGraph& g, VertexSet A, VertexSet B) {
  std::optional<int> found;
  auto scan = [&](VertexSet from, VertexSet to) {
    from.for_each([&](int i) {
      if (!found && commute_blocks(g, VertexSet::singleton(i), to)) found = i;
    });
  };
  scan(A, B);
  scan(B, A);
  return found;
}

std::vector<VertexSet> sorted_sets(std::vector<VertexSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

PairVerdict check_pair(const BlockPartition& p, int a, int b, int bound) {
  if (a == b || a < 0 || b < 0 || a >= p.size() || b >= p.size()) throw InvalidInput("check_pair: bad block indices");
  const CoxeterGraph& g = p.graph();
  const VertexSet A = p.block(a), B = p.block(b), J = A | B;
  PairVerdict v;
  v.a = a;
  v.b = b;
  if (!is_spherical(g, A) || !is_spherical(g, B)) throw InvalidInput("check_pair: blocks must be spherical");

  // (i) direct product
  if (commute_blocks(g, A, B)) {
    v.outcome = Outcome::Admissible;
    v.order = {PairOrder::Kind::Finite, 2};
    v.certificate.kind = Certificate::Kind::ExhaustiveFinite;
    v.reason = "direct product";
    return v;
  }

  const CoxeterGraph G = restrict(g, J);
  const VertexSet ca = compress(A, J), cb = compress(B, J);
  auto sys = CoxeterSystem::get(G);
  const bool spherical = sys->spherical();
  const CoxElement ra = sys->longest(ca), rb = sys->longest(cb);
  const std::optional<int> m = order_of(ra * rb, spherical ? kSphericalOrderBound : bound);
  if (m) v.order = {PairOrder::Kind::Finite, *m};
  else v.order = {PairOrder::Kind::ExceedsBound, 0};

  // (ii) a vertex commuting with the other block
  if (auto i0 = commuting_vertex(g, A, B)) {
    v.witness = search_witness(*sys, ca, cb, a, b, m ? *m + 1 : bound);
    if (v.witness) {
      v.outcome = Outcome::NotAdmissible;
      v.reason = "vertex " + g.name(*i0) + " commutes with the other block";
    } else {
      v.outcome = Outcome::Unknown;
      v.reason = "vertex " + g.name(*i0) + " commutes with the other block, but no witness up to n = " +
                 std::to_string(bound);
    }
    return v;
  }

  // (iii) spherical union: exact test at n = m
  if (spherical) {
    v.witness = search_witness(*sys, ca, cb, a, b, *m);
    if (v.witness) {
      v.outcome = Outcome::NotAdmissible;
      v.reason = "alternating word of length " + std::to_string(v.witness->n) + " is not compatible";
      return v;
    }
    CoxElement alt = sys->identity();
    for (int k = 0; k < *m; ++k) alt = alt * (k % 2 == 0 ? ra : rb);
    if (!(alt == sys->longest(G.all())))
      throw std::logic_error("check_pair: alternating product of block longest elements is not r_I");
    v.outcome = Outcome::Admissible;
    v.certificate.kind = Certificate::Kind::ExhaustiveFinite;
    v.reason = "spherical union, both alternating words of length " + std::to_string(*m) + " compatible";
    return v;
  }

  // (iv) finite order on a non-spherical union
  if (m) {
    v.witness = search_witness(*sys, ca, cb, a, b, *m);
    if (v.witness) {
      v.outcome = Outcome::NotAdmissible;
      v.reason = "alternating word of length " + std::to_string(v.witness->n) + " is not compatible";
    } else {
      v.outcome = Outcome::Admissible;
      v.certificate.kind = Certificate::Kind::ExhaustiveFinite;
      v.reason = "all alternating words up to the finite order are compatible";
    }
    return v;
  }

  // (v) order beyond the bound
  v.witness = search_witness(*sys, ca, cb, a, b, bound);
  if (v.witness) {
    v.outcome = Outcome::NotAdmissible;
    v.reason = "alternating word of length " + std::to_string(v.witness->n) + " is not compatible";
    return v;
  }

  auto comps = components(G);
  if (comps.size() >= 2) {
    bool ok = true;
    std::optional<PairOrder> common;
    for (VertexSet c : comps) {
      BlockPartition sub(restrict(G, c), {compress(ca & c, c), compress(cb & c, c)});
      PairVerdict pv = check_pair(sub, 0, 1, bound);
      if (pv.outcome != Outcome::Admissible || (common && !(*common == pv.order))) {
        ok = false;
        break;
      }
      common = pv.order;
    }
    if (ok && common && common->kind == PairOrder::Kind::InfiniteCertified) {
      v.outcome = Outcome::Admissible;
      v.order = *common;
      v.certificate.kind = Certificate::Kind::Components;
      v.certificate.detail = std::to_string(comps.size()) + " components, each admissible of infinite order";
      v.reason = "product of admissible components with equal orders";
      v.witness.reset();
      return v;
    }
  }

  if (G.rank() <= kMaxAutomorphismVertices) {
    std::vector<int> colours(static_cast<std::size_t>(G.rank()));
    for (int k = 0; k < G.rank(); ++k) colours[static_cast<std::size_t>(k)] = ca.contains(k) ? 0 : 1;
    try {
      auto aut = automorphisms(G, colours);
      if (sorted_sets(orbits(G.rank(), aut.generators)) == sorted_sets({ca, cb})) {
        v.outcome = Outcome::Admissible;
        v.order = {PairOrder::Kind::InfiniteCertified, 0};
        v.certificate.kind = Certificate::Kind::Orbit;
        v.certificate.generators = aut.generators;
        v.certificate.detail = "blocks are the orbits of the block-preserving automorphisms of the pair graph";
        v.reason = "orbit certificate";
        return v;
      }
    } catch (const InvalidInput&) {
      // group too large to enumerate: no certificate
    }
  }

  v.outcome = Outcome::Unknown;
  v.reason = "order exceeds the bound, words compatible up to n = " + std::to_string(bound) + ", no certificate";
  return v;
}

bool is_orbit_partition(const BlockPartition& p, std::vector<VertexPermutation>* gens) {
  const VertexSet J = p.carrier();
  const CoxeterGraph G = restrict(p.graph(), J);
  if (G.rank() > kMaxAutomorphismVertices) return false;
  std::vector<int> colours(static_cast<std::size_t>(G.rank()));
  std::vector<VertexSet> blocks;
  for (int k = 0; k < p.size(); ++k) {
    VertexSet c = compress(p.block(k), J);
    blocks.push_back(c);
    c.for_each([&](int v) { colours[static_cast<std::size_t>(v)] = k; });
  }
  try {
    auto aut = automorphisms(G, colours);
    if (sorted_sets(orbits(G.rank(), aut.generators)) != sorted_sets(blocks)) return false;
    if (gens) *gens = aut.generators;
    return true;
  } catch (const InvalidInput&) {
    return false;
  }
}

AdmissibilityVerdict check_admissible(const BlockPartition& p, int bound) {
  if (!is_spherical_partition(p)) throw InvalidInput("check_admissible: partition is not spherical");
  AdmissibilityVerdict out;
  out.bound = bound;
  const auto n = static_cast<std::size_t>(p.size());
  out.type.names = p.names();
  out.type.entries.assign(n, std::vector<PairOrder>(n, PairOrder{PairOrder::Kind::Finite, 1}));
  bool any_no = false, any_unknown = false;
  for (int a = 0; a < p.size(); ++a)
    for (int b = a + 1; b < p.size(); ++b) {
      PairVerdict pv = check_pair(p, a, b, bound);
      out.type.entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = pv.order;
      out.type.entries[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = pv.order;
      if (pv.outcome == Outcome::NotAdmissible && !any_no) {
        any_no = true;
        out.witness = pv.witness;
      }
      if (pv.outcome == Outcome::Unknown) any_unknown = true;
      out.pairs.push_back(std::move(pv));
    }
  if (any_no) {
    out.outcome = Outcome::NotAdmissible;
    return out;
  }
  if (!any_unknown) {
    out.outcome = Outcome::Admissible;
    return out;
  }
  std::vector<VertexPermutation> gens;
  if (is_orbit_partition(p, &gens)) {
    out.outcome = Outcome::Admissible;
    out.certificate.kind = Certificate::Kind::Orbit;
    out.certificate.generators = gens;
    out.certificate.detail = "blocks are the orbits of the block-preserving automorphisms of the carrier graph";
    for (auto& pv : out.pairs) {
      if (pv.outcome != Outcome::Unknown) continue;
      pv.outcome = Outcome::Admissible;
      pv.order = {PairOrder::Kind::InfiniteCertified, 0};
      pv.certificate.kind = Certificate::Kind::Orbit;
      pv.reason = "global orbit certificate";
      out.type.entries[static_cast<std::size_t>(pv.a)][static_cast<std::size_t>(pv.b)] = pv.order;
      out.type.entries[static_cast<std::size_t>(pv.b)][static_cast<std::size_t>(pv.a)] = pv.order;
    }
    return out;
  }
  out.outcome = Outcome::Unknown;
  return out;
}

PartitionType partition_type(const BlockPartition& p, int bound) { return check_admissible(p, bound).type; }

bool replay_witness(const BlockPartition& p, const Witness& w) {
  const VertexSet A = p.block(w.first), B = p.block(w.second), J = A | B;
  auto sys = CoxeterSystem::get(restrict(p.graph(), J));
  return !is_compatible(*sys, alternating(compress(A, J), compress(B, J), w.n));
}

BlockPartition orbit_partition(const CoxeterGraph& g, std::span<const VertexPermutation> gens) {
  for (const auto& f : gens)
    if (!is_automorphism(g, f)) throw InvalidInput("orbit_partition: input is not an automorphism");
  std::vector<VertexSet> blocks;
  for (VertexSet o : orbits(g.rank(), gens))
    if (is_spherical(g, o)) blocks.push_back(o);
  return BlockPartition(g, blocks);
}

BlockPartition lift_partition(const BlockPartition& outer, const BlockPartition& inner) {
  std::vector<VertexSet> blocks;
  for (int k = 0; k < inner.size(); ++k) {
    VertexSet u;
    for (const auto& name : inner.graph().names_of(inner.block(k))) u |= outer.block(outer.index_of(name));
    blocks.push_back(u);
  }
  return BlockPartition(outer.graph(), blocks, inner.names());
}

namespace {

// Upgrades `target` to Admissible on the strength of `source` (same block order and names).
void upgrade_by_lift(AdmissibilityVerdict& target, const AdmissibilityVerdict& source, const std::string& detail) {
  target.outcome = Outcome::Admissible;
  target.certificate.kind = Certificate::Kind::Lift;
  target.certificate.detail = detail;
  for (auto& pv : target.pairs) {
    if (pv.outcome == Outcome::Admissible) continue;
    const auto& e = source.type.entries[static_cast<std::size_t>(pv.a)][static_cast<std::size_t>(pv.b)];
    pv.outcome = Outcome::Admissible;
    pv.order = e;
    pv.certificate.kind = Certificate::Kind::Lift;
    pv.reason = detail;
    target.type.entries[static_cast<std::size_t>(pv.a)][static_cast<std::size_t>(pv.b)] = e;
    target.type.entries[static_cast<std::size_t>(pv.b)][static_cast<std::size_t>(pv.a)] = e;
  }
}

}  // namespace

LiftResult certify_by_lift(const BlockPartition& outer, const BlockPartition& inner, int bound) {
  LiftResult r;
  r.outer = check_admissible(outer, bound);
  if (r.outer.outcome != Outcome::Admissible || !r.outer.type.resolved())
    throw InvalidInput("certify_by_lift: outer partition is not admissible with a resolved type");
  if (!(inner.graph() == r.outer.type.graph()))
    throw InvalidInput("certify_by_lift: inner partition must live on the type graph of the outer partition");
  r.lifted = lift_partition(outer, inner);
  r.inner = check_admissible(inner, bound);
  r.lifted_verdict = check_admissible(r.lifted, bound);
  const bool inner_yes = r.inner.outcome == Outcome::Admissible;
  const bool lifted_yes = r.lifted_verdict.outcome == Outcome::Admissible;
  const bool inner_no = r.inner.outcome == Outcome::NotAdmissible;
  const bool lifted_no = r.lifted_verdict.outcome == Outcome::NotAdmissible;
  if ((inner_yes && lifted_no) || (inner_no && lifted_yes))
    throw std::logic_error("certify_by_lift: inner and lifted verdicts contradict each other");
  if (lifted_yes && !inner_yes) upgrade_by_lift(r.inner, r.lifted_verdict, "lifted partition is admissible");
  if (inner_yes && !lifted_yes) upgrade_by_lift(r.lifted_verdict, r.inner, "inner partition is admissible");
  return r;
}

ProductSplitReport product_split_check(const CoxeterGraph& g, std::span<const VertexSet> factors, VertexSet alpha,
                                       VertexSet beta, int bound) {
  VertexSet seen;
  for (VertexSet f : factors) {
    if (f.empty() || f.intersects(seen)) throw InvalidInput("product_split_check: factors must be disjoint and non-empty");
    if (!commute_blocks(g, f, seen)) throw InvalidInput("product_split_check: factors do not commute");
    seen |= f;
  }
  if (seen != g.all()) throw InvalidInput("product_split_check: factors do not cover the graph");
  if (alpha.intersects(beta) || (alpha | beta) != g.all())
    throw InvalidInput("product_split_check: {alpha, beta} is not a 2-partition");
  for (VertexSet f : factors)
    if (!f.intersects(alpha) || !f.intersects(beta))
      throw InvalidInput("product_split_check: each factor must meet both blocks");

  ProductSplitReport r;
  r.factors.assign(factors.begin(), factors.end());
  r.global = check_pair(BlockPartition(g, {alpha, beta}), 0, 1, bound);
  bool all_yes = true, equal = true;
  long long l = 1;
  bool all_finite = true;
  for (VertexSet f : factors) {
    BlockPartition sub(restrict(g, f), {compress(alpha & f, f), compress(beta & f, f)});
    PairVerdict pv = check_pair(sub, 0, 1, bound);
    if (pv.outcome == Outcome::Unknown) r.decided = false;
    if (pv.outcome != Outcome::Admissible) all_yes = false;
    if (!r.factor_verdicts.empty() && !(r.factor_verdicts.front().order == pv.order)) equal = false;
    if (pv.order.kind == PairOrder::Kind::Finite) l = std::lcm(l, static_cast<long long>(pv.order.order));
    else all_finite = false;
    r.factor_verdicts.push_back(std::move(pv));
  }
  if (r.global.outcome == Outcome::Unknown) r.decided = false;
  if (all_finite) {
    r.lcm_of_orders = static_cast<int>(l);
    r.lcm_matches = r.global.order.kind == PairOrder::Kind::Finite && r.global.order.order == l;
  }
  if (r.decided) r.rule_holds = (r.global.outcome == Outcome::Admissible) == (all_yes && equal);
  return r;
}

std::string to_string(Candidate::Stage s) {
  switch (s) {
    case Candidate::Stage::Admissible: return "admissible";
    case Candidate::Stage::CommutingVertex: return "commuting-vertex";
    case Candidate::Stage::LengthFilter: return "length-filter";
    case Candidate::Stage::DirectCheck: return "direct-check";
    case Candidate::Stage::Unknown: return "unknown";
  }
  return "?";
}

std::vector<const Candidate*> ClassificationReport::admissible() const {
  std::vector<const Candidate*> out;
  for (const auto& c : candidates)
    if (c.stage == Candidate::Stage::Admissible) out.push_back(&c);
  return out;
}

int ClassificationReport::count(Candidate::Stage s) const {
  return static_cast<int>(std::count_if(candidates.begin(), candidates.end(), [&](const Candidate& c) { return c.stage == s; }));
}

namespace {

VertexSet image(const VertexPermutation& f, VertexSet s) {
  VertexSet out;
  s.for_each([&](int v) { out.insert(f[static_cast<std::size_t>(v)]); });
  return out;
}

// Canonical key of the unordered pair {α, β} under Aut(Γ): the smallest image of the
// block holding vertex 0.
std::uint64_t class_key(const std::vector<VertexPermutation>& aut, VertexSet alpha, VertexSet all) {
  std::uint64_t best = ~std::uint64_t{0};
  for (const auto& f : aut) {
    VertexSet a = image(f, alpha);
    if (!a.contains(0)) a = all - a;
    best = std::min(best, a.bits());
  }
  return best;
}

}  // namespace

ClassificationReport classify_2partitions(const CoxeterGraph& g, int bound) {
  auto types = classify_spherical(g);
  if (!types || types->size() != 1) throw InvalidInput("classify: graph must be irreducible spherical");
  if (g.rank() < 2) throw InvalidInput("classify: graph must have at least two vertices");
  if (g.rank() > kMaxClassifyRank) throw InvalidInput("classify: rank limit exceeded");

  ClassificationReport rep;
  rep.graph = g;
  rep.type = type_name(*types);
  auto sys = CoxeterSystem::get(g);
  rep.longest_length = sys->longest(g.all()).length();
  const int L = rep.longest_length;
  const auto aut = automorphisms(g).elements;
  const auto bip = bipartite_partition(g);
  const VertexSet all = g.all();

  std::map<std::uint64_t, std::size_t> class_index;
  const std::uint64_t count = std::uint64_t{1} << (g.rank() - 1);
  for (std::uint64_t mask = 0; mask + 1 < count; ++mask) {
    VertexSet alpha(1 | (mask << 1));
    VertexSet beta = all - alpha;
    ++rep.total_partitions;
    std::uint64_t key = class_key(aut, alpha, all);
    if (auto it = class_index.find(key); it != class_index.end()) {
      ++rep.candidates[it->second].class_size;
      continue;
    }
    class_index.emplace(key, rep.candidates.size());
    Candidate c;
    c.alpha = alpha;
    c.beta = beta;
    c.bipartite = alpha == bip[0] || alpha == bip[1];
    if (auto i0 = commuting_vertex(g, alpha, beta)) {
      c.stage = Candidate::Stage::CommutingVertex;
      c.reason = "vertex " + g.name(*i0) + " commutes with the other block";
      rep.candidates.push_back(std::move(c));
      continue;
    }
    const int a = sys->longest(alpha).length();
    const int b = sys->longest(beta).length();
    if (a == b) {
      if (L % a == 0) c.length_n = L / a;
    } else if ((2 * L) % (a + b) == 0 && ((2 * L) / (a + b)) % 2 == 0) {
      c.length_n = (2 * L) / (a + b);
    }
    if (!c.length_n) {
      c.stage = Candidate::Stage::LengthFilter;
      c.reason = "no n with alternating length sums " + std::to_string(a) + "," + std::to_string(b) +
                 " equal to " + std::to_string(L);
      rep.candidates.push_back(std::move(c));
      continue;
    }
    c.verdict = check_pair(BlockPartition(g, {alpha, beta}), 0, 1, bound);
    switch (c.verdict.outcome) {
      case Outcome::Admissible:
        c.stage = Candidate::Stage::Admissible;
        break;
      case Outcome::NotAdmissible:
        c.stage = Candidate::Stage::DirectCheck;
        break;
      case Outcome::Unknown:
        c.stage = Candidate::Stage::Unknown;
        break;
    }
    c.reason = c.verdict.reason;
    rep.candidates.push_back(std::move(c));
  }
  rep.classes = static_cast<int>(rep.candidates.size());
  return rep;
}

}  // namespace coxpart
