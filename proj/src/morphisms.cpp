#include "coxpart/morphisms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "coxpart/graph_io.hpp"

namespace coxpart {

AdmissibleMorphism build_morphism(const BlockPartition& p, const AdmissibilityVerdict& verdict) {
  if (verdict.outcome != Outcome::Admissible) throw InvalidInput("build_morphism: partition is not admissible");
  if (!verdict.type.resolved()) throw InvalidInput("build_morphism: partition type has unresolved entries");
  if (verdict.type.names != p.names()) throw InvalidInput("build_morphism: verdict belongs to another partition");
  AdmissibleMorphism m;
  m.target = CoxeterSystem::get(p.graph());
  m.source = CoxeterSystem::get(verdict.type.graph());
  m.partition = p;
  m.type = verdict.type;
  for (int k = 0; k < m.source->rank(); ++k) {
    int b = p.index_of(m.source->graph().name(k));
    m.block_of_source.push_back(b);
    m.images.push_back(m.target->longest(p.block(b)));
  }
  return m;
}

AdmissibleMorphism build_morphism(const BlockPartition& p, int bound) {
  return build_morphism(p, check_admissible(p, bound));
}

AdmissibleMorphism identity_morphism(const CoxeterGraph& g) {
  std::vector<VertexSet> blocks;
  for (int i = 0; i < g.rank(); ++i) blocks.push_back(VertexSet::singleton(i));
  return build_morphism(BlockPartition(g, blocks, g.vertices()));
}

PosBraid apply(const AdmissibleMorphism& m, const PosBraid& x) {
  if (!(x.system().graph() == m.source_graph())) throw InvalidInput("apply: braid is not over the source type");
  std::vector<Simple> seq;
  for (int i : x.word()) seq.push_back(m.images[static_cast<std::size_t>(i)]);
  return normalize(m.target, std::move(seq));
}

PosBraid image_of_atom(const AdmissibleMorphism& m, int source_vertex) {
  return lift(m.images.at(static_cast<std::size_t>(source_vertex)));
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

int VerificationReport::violation_count() const {
  int n = 0;
  for (const auto& c : checks) n += static_cast<int>(c.violations.size());
  return n;
}

const CheckResult& VerificationReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InvalidInput("no check named '" + name + "'");
}

std::vector<int> random_word(int rank, int max_length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, max_length);
  std::uniform_int_distribution<int> letter(0, rank - 1);
  std::vector<int> w(static_cast<std::size_t>(len(rng)));
  for (int& c : w) c = letter(rng);
  return w;
}

namespace {

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

PosBraid random_braid(const AdmissibleMorphism& m, int max_length, std::mt19937_64& rng) {
  return PosBraid::from_word(m.source, random_word(m.source->rank(), max_length, rng));
}

std::string pair_text(const PosBraid& x, const PosBraid& y) { return "x = " + x.to_string() + ", y = " + y.to_string(); }

}  // namespace

VerificationReport verify_respects_lcm(const AdmissibleMorphism& m, const SampleOptions& opt) {
  VerificationReport rep;
  std::mt19937_64 rng(opt.seed);
  const int n = m.source->rank();

  CheckResult atoms{"atom-lcm", 0, {}};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (Side side : {Side::Left, Side::Right}) {
        ++atoms.cases;
        PosBraid sa = PosBraid::atom(m.source, a), sb = PosBraid::atom(m.source, b);
        auto src = lcm(sa, sb, side);
        auto tgt = lcm(apply(m, sa), apply(m, sb), side);
        const std::string where = m.source_graph().name(a) + ", " + m.source_graph().name(b) + " (" + side_name(side) + ")";
        if (src.has_value() != tgt.has_value())
          atoms.violations.push_back("existence differs for atoms " + where);
        else if (src && !(apply(m, *src) == *tgt))
          atoms.violations.push_back("image of the lcm differs for atoms " + where);
      }
  rep.checks.push_back(std::move(atoms));

  CheckResult pairs{"random-lcm", 0, {}};
  CheckResult divis{"divisibility-reflection", 0, {}};
  for (int s = 0; s < opt.samples; ++s) {
    PosBraid x = random_braid(m, opt.max_length, rng);
    PosBraid y = random_braid(m, opt.max_length, rng);
    PosBraid fx = apply(m, x), fy = apply(m, y);
    for (Side side : {Side::Left, Side::Right}) {
      ++pairs.cases;
      auto src = lcm(x, y, side);
      auto tgt = lcm(fx, fy, side);
      if (src && (!tgt || !(apply(m, *src) == *tgt)))
        pairs.violations.push_back(std::string(side_name(side)) + " lcm not respected: " + pair_text(x, y));
      else if (!src && tgt)
        pairs.violations.push_back(std::string(side_name(side)) + " lcm exists only in the target: " + pair_text(x, y));
    }
    // Half of the pairs are built so that x divides y.
    PosBraid z = random_braid(m, opt.max_length, rng);
    PosBraid y2 = s % 2 == 0 ? y : (s % 4 == 1 ? x * z : z * x);
    PosBraid fy2 = apply(m, y2);
    for (Side side : {Side::Left, Side::Right}) {
      ++divis.cases;
      bool image = divides(fx, fy2, side), source = divides(x, y2, side);
      if (image != source)
        divis.violations.push_back(std::string(side_name(side)) + " divisibility " + (image ? "created" : "lost") +
                                   ": " + pair_text(x, y2));
    }
  }
  rep.checks.push_back(std::move(pairs));
  rep.checks.push_back(std::move(divis));

  CheckResult inj{"injectivity", 0, {}};
  std::unordered_map<PosBraid, PosBraid> seen;
  auto record = [&](const PosBraid& x) {
    ++inj.cases;
    PosBraid fx = apply(m, x);
    auto [it, fresh] = seen.emplace(fx, x);
    if (!fresh && !(it->second == x))
      inj.violations.push_back("equal images for " + pair_text(it->second, x));
  };
  for (int a = 0; a < n; ++a) record(PosBraid::atom(m.source, a));
  for (int s = 0; s < opt.samples; ++s) record(random_braid(m, opt.max_length, rng));
  rep.checks.push_back(std::move(inj));
  return rep;
}

VerificationReport verify_respects_normal_forms(const AdmissibleMorphism& m, const SampleOptions& opt) {
  VerificationReport rep;
  std::mt19937_64 rng(opt.seed ^ 0x5bd1e995u);

  CheckResult left{"left-normal-form", 0, {}};
  CheckResult right{"right-normal-form", 0, {}};
  for (int s = 0; s < opt.samples; ++s) {
    PosBraid x = random_braid(m, opt.max_length, rng);
    PosBraid fx = apply(m, x);
    ++left.cases;
    std::vector<Simple> expect;
    bool simple = true;
    for (const auto& f : x.factors()) {
      PosBraid img = apply(m, lift(f));
      if (img.factors().size() != 1) simple = false;
      else expect.push_back(img.factors().front());
    }
    if (!simple) left.violations.push_back("image of a simple factor is not simple: x = " + x.to_string());
    else if (fx.factors() != expect) left.violations.push_back("left normal form not factorwise: x = " + x.to_string());

    ++right.cases;
    expect.clear();
    simple = true;
    for (const auto& f : right_normal_form(x)) {
      PosBraid img = apply(m, lift(f));
      if (img.factors().size() != 1) simple = false;
      else expect.push_back(img.factors().front());
    }
    if (!simple || right_normal_form(fx) != expect)
      right.violations.push_back("right normal form not factorwise: x = " + x.to_string());
  }
  rep.checks.push_back(std::move(left));
  rep.checks.push_back(std::move(right));

  CheckResult gcds{"gcd", 0, {}};
  for (int s = 0; s < opt.samples; ++s) {
    PosBraid x = random_braid(m, opt.max_length, rng);
    PosBraid y = random_braid(m, opt.max_length, rng);
    for (Side side : {Side::Left, Side::Right}) {
      ++gcds.cases;
      if (!(apply(m, gcd(x, y, side)) == gcd(apply(m, x), apply(m, y), side)))
        gcds.violations.push_back(std::string(side_name(side)) + " gcd not respected: " + pair_text(x, y));
    }
  }
  rep.checks.push_back(std::move(gcds));

  CheckResult longest{"longest-element", 0, {}};
  if (m.source->spherical()) {
    ++longest.cases;
    PosBraid src = lift(m.source->longest(m.source_graph().all()));
    if (!(apply(m, src) == lift(m.target->longest(m.carrier()))))
      longest.violations.push_back("image of the source longest element is not r̄_J");
  }
  rep.checks.push_back(std::move(longest));

  CheckResult fractions{"irreducible-fractions", 0, {}};
  if (m.source->spherical() && m.target->spherical()) {
    for (int s = 0; s < opt.samples; ++s) {
      PosBraid x = random_braid(m, opt.max_length, rng);
      PosBraid y = random_braid(m, opt.max_length, rng);
      for (Side side : {Side::Left, Side::Right}) {
        ++fractions.cases;
        FractionPair src = irreducible_fraction(x, y, side);
        FractionPair tgt = irreducible_fraction(apply(m, x), apply(m, y), side);
        if (!(apply(m, src.x) == tgt.x) || !(apply(m, src.y) == tgt.y))
          fractions.violations.push_back(std::string(side_name(side)) + " irreducible form not respected: " +
                                         pair_text(x, y));
      }
    }
  }
  rep.checks.push_back(std::move(fractions));
  return rep;
}

std::string to_string(LcmPairCheck::Condition c) {
  switch (c) {
    case LcmPairCheck::Condition::Fi: return "Fi";
    case LcmPairCheck::Condition::In: return "In";
    case LcmPairCheck::Condition::None: return "none";
  }
  return "?";
}

LcmVerdict is_lcm_partition(const BlockPartition& p, const std::optional<CoxeterGraph>& omega) {
  if (!is_spherical_partition(p)) throw InvalidInput("is_lcm_partition: partition is not spherical");
  const CoxeterGraph& g = p.graph();
  LcmVerdict out;
  out.is_lcm = true;
  for (int a = 0; a < p.size(); ++a)
    for (int b = a + 1; b < p.size(); ++b) {
      LcmPairCheck c;
      c.a = a;
      c.b = b;
      const VertexSet A = p.block(a), B = p.block(b), U = A | B;
      const bool spherical = is_spherical(g, U);
      std::shared_ptr<const CoxeterSystem> sys;
      if (spherical) sys = CoxeterSystem::get(restrict(g, U));
      if (omega) {
        Label l = omega->label(omega->index_of(p.name(a)), omega->index_of(p.name(b)));
        if (l.is_finite()) c.n = static_cast<int>(l.value());
      } else if (spherical) {
        c.n = order_of(sys->longest(compress(A, U)) * sys->longest(compress(B, U)), 1 << 20);
      }
      if (c.n) {
        if (!spherical) {
          c.reason = "finite entry on a non-spherical union";
        } else {
          Simple ra = sys->longest(compress(A, U)), rb = sys->longest(compress(B, U));
          std::vector<Simple> word;
          for (int k = 0; k < *c.n; ++k) word.push_back(k % 2 == 0 ? ra : rb);
          if (normalize(sys, word) == lift(sys->longest(sys->graph().all()))) {
            c.condition = LcmPairCheck::Condition::Fi;
            c.reason = "r̄ of the union is the alternating product of length " + std::to_string(*c.n);
          } else {
            c.reason = "alternating product of length " + std::to_string(*c.n) + " is not r̄ of the union";
          }
        }
      } else {
        std::optional<int> spherical_vertex;
        auto scan = [&](VertexSet from, VertexSet to) {
          from.for_each([&](int i) {
            if (!spherical_vertex && is_spherical(g, to | VertexSet::singleton(i))) spherical_vertex = i;
          });
        };
        scan(A, B);
        scan(B, A);
        if (spherical_vertex) {
          c.reason = "vertex " + g.name(*spherical_vertex) + " with the other block is spherical";
        } else {
          c.condition = LcmPairCheck::Condition::In;
          c.reason = "every vertex with the other block is non-spherical";
        }
      }
      if (c.condition == LcmPairCheck::Condition::None) out.is_lcm = false;
      out.pairs.push_back(std::move(c));
    }
  return out;
}

int burst_delta(Label m) {
  if (m.is_infinite()) return 2;
  int v = static_cast<int>(m.value());
  if (v < 2) throw InvalidInput("burst_delta: label must be at least 2");
  return v % 2 == 0 ? v - 1 : (v - 1) / 2;
}

int burst_base(const CoxeterGraph& g) {
  int n0 = 1;
  for (int i = 0; i < g.rank(); ++i)
    for (int j = i + 1; j < g.rank(); ++j) n0 = std::lcm(n0, burst_delta(g.label(i, j)));
  return n0;
}

BurstResult burst(const CoxeterGraph& g, int n) {
  const int n0 = burst_base(g);
  if (n <= 0 || n % n0 != 0)
    throw InvalidInput("burst: N must be a positive multiple of " + std::to_string(n0));
  if (static_cast<long long>(n) * g.rank() > kMaxVertices) throw InvalidInput("burst: too many vertices");
  auto vname = [&](int i, int k) { return g.name(i) + "^(" + std::to_string(k) + ")"; };
  std::vector<std::string> names;
  for (int i = 0; i < g.rank(); ++i)
    for (int k = 1; k <= n; ++k) names.push_back(vname(i, k));
  std::vector<CoxeterGraph::Edge> edges;
  const Label three(3);
  for (int i = 0; i < g.rank(); ++i)
    for (int j = i + 1; j < g.rank(); ++j) {
      Label m = g.label(i, j);
      if (!m.is_edge()) continue;
      const int d = burst_delta(m);
      for (int c = 0; c < n / d; ++c) {
        auto b = [&](int k) { return vname(i, c * d + k); };  // T(i)
        auto t = [&](int k) { return vname(j, c * d + k); };  // T(j)
        if (m.is_infinite()) {
          edges.push_back({b(1), t(1), three});
          edges.push_back({t(1), b(2), three});
          edges.push_back({b(2), t(2), three});
          edges.push_back({t(2), b(1), three});
        } else if (m.value() % 2 == 0) {
          for (int k = 1; k < d; ++k) {
            edges.push_back({t(k), b(k + 1), three});
            edges.push_back({b(k), t(k + 1), three});
          }
        } else {
          for (int k = 1; k <= d; ++k) {
            edges.push_back({b(k), t(k), three});
            if (k < d) edges.push_back({b(k), t(k + 1), three});
          }
        }
      }
    }
  BurstResult r;
  r.input = g;
  r.n = n;
  r.output = CoxeterGraph(names, edges);
  std::vector<VertexSet> blocks;
  for (int i = 0; i < g.rank(); ++i) {
    VertexSet t;
    for (int k = 1; k <= n; ++k) t.insert(r.output.index_of(vname(i, k)));
    blocks.push_back(t);
  }
  r.partition = BlockPartition(r.output, blocks, g.vertices());
  return r;
}

namespace {

const CoxeterGraph& square() {
  static const CoxeterGraph sq = *named_graph("A3~");
  return sq;
}

// Central symmetry of each square component of Γ_{A∪B} (carrier indices), or nullopt when some
// component is not a square with its opposite vertices in the same block.
std::optional<VertexPermutation> square_symmetry(const CoxeterGraph& g, VertexSet A, VertexSet B) {
  const VertexSet U = A | B;
  const CoxeterGraph G = restrict(g, U);
  const VertexSet ca = compress(A, U);
  VertexPermutation sym(static_cast<std::size_t>(G.rank()));
  const std::vector<int> ref_colours{0, 1, 0, 1};
  for (VertexSet c : components(G)) {
    if (c.size() != 4) return std::nullopt;
    CoxeterGraph comp = restrict(G, c);
    std::vector<int> colours;
    c.for_each([&](int v) { colours.push_back(ca.contains(v) ? 0 : 1); });
    auto iso = find_isomorphism(comp, square(), colours, ref_colours);
    if (!iso) return std::nullopt;
    std::vector<int> local = c.indices();
    for (std::size_t k = 0; k < 4; ++k) {
      int opposite_ref = ((*iso)[k] + 2) % 4;
      auto pos = std::find(iso->begin(), iso->end(), opposite_ref) - iso->begin();
      sym[static_cast<std::size_t>(local[k])] = local[static_cast<std::size_t>(pos)];
    }
  }
  return sym;
}

void set_entry(PartitionType& t, int a, int b, const PairOrder& o) {
  t.entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = o;
  t.entries[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = o;
}

}  // namespace

AdmissibilityVerdict verify_burst(const BurstResult& b, int bound) {
  AdmissibilityVerdict v = check_admissible(b.partition, bound);
  for (auto& pv : v.pairs) {
    if (!b.input.label(pv.a, pv.b).is_infinite()) continue;
    auto sym = square_symmetry(b.output, b.partition.block(pv.a), b.partition.block(pv.b));
    if (!sym) continue;
    if (pv.outcome == Outcome::NotAdmissible)
      throw std::logic_error("verify_burst: square components certified but a witness was found");
    pv.outcome = Outcome::Admissible;
    pv.order = {PairOrder::Kind::InfiniteCertified, 0};
    pv.certificate.kind = Certificate::Kind::Orbit;
    pv.certificate.generators = {*sym};
    pv.certificate.detail = std::to_string(b.n / 2) + " square components, opposite vertices in the same block";
    pv.reason = "central symmetry of each square";
    pv.witness.reset();
    set_entry(v.type, pv.a, pv.b, pv.order);
  }
  bool any_no = false, any_unknown = false;
  for (const auto& pv : v.pairs) {
    any_no = any_no || pv.outcome == Outcome::NotAdmissible;
    any_unknown = any_unknown || pv.outcome == Outcome::Unknown;
  }
  if (any_no) v.outcome = Outcome::NotAdmissible;
  else if (any_unknown && v.certificate.kind == Certificate::Kind::None) v.outcome = Outcome::Unknown;
  else v.outcome = Outcome::Admissible;
  return v;
}

std::string to_string(FoldingPair::Case c) {
  switch (c) {
    case FoldingPair::Case::A: return "A";
    case FoldingPair::Case::B: return "B";
    case FoldingPair::Case::C1: return "C1";
    case FoldingPair::Case::C2: return "C2";
    case FoldingPair::Case::C3: return "C3";
    case FoldingPair::Case::D: return "D";
    case FoldingPair::Case::Product: return "product";
    case FoldingPair::Case::Reject: return "reject";
  }
  return "?";
}

namespace {

// True iff {A, complement} of h matches the reference 2-partition {R, complement} of ref up to
// a graph isomorphism (the blocks may swap).
bool matches_reference(const CoxeterGraph& h, VertexSet A, const CoxeterGraph& ref, VertexSet R) {
  if (h.rank() != ref.rank()) return false;
  std::vector<int> hc, rc;
  for (int v = 0; v < h.rank(); ++v) hc.push_back(A.contains(v) ? 0 : 1);
  for (int v = 0; v < ref.rank(); ++v) rc.push_back(R.contains(v) ? 0 : 1);
  if (find_isomorphism(h, ref, hc, rc)) return true;
  for (int& c : rc) c = 1 - c;
  return static_cast<bool>(find_isomorphism(h, ref, hc, rc));
}

VertexSet named_set(const CoxeterGraph& g, std::initializer_list<int> ids) {
  VertexSet s;
  for (int id : ids) s.insert(g.index_of(std::to_string(id)));
  return s;
}

// Cases B to C3 for a connected fibre graph h with block A. Returns the tag or Reject.
FoldingPair::Case single_component_case(const CoxeterGraph& h, VertexSet A, int m) {
  auto types = classify_spherical(h);
  if (!types || types->size() != 1) return FoldingPair::Case::Reject;
  auto bip = bipartite_partition(h);
  if (coxeter_number(*types) == m && (A == bip[0] || A == bip[1])) return FoldingPair::Case::B;
  if (m % 2 == 0 && m >= 4 && h.rank() == m) {
    const CoxeterGraph ref = *named_graph("A" + std::to_string(m));
    VertexSet R;
    for (int k = 1; k <= m / 2; k += 2) R |= named_set(ref, {k, m + 1 - k});
    if (matches_reference(h, A, ref, R)) return FoldingPair::Case::C1;
  }
  if (m == 8 && h.rank() == 6) {
    const CoxeterGraph ref = *named_graph("E6");
    if (matches_reference(h, A, ref, named_set(ref, {3, 4, 5}))) return FoldingPair::Case::C2;
  }
  if (m == 8 && h.rank() == 4) {
    const CoxeterGraph ref = *named_graph("F4");
    if (matches_reference(h, A, ref, named_set(ref, {2, 3}))) return FoldingPair::Case::C3;
  }
  return FoldingPair::Case::Reject;
}

FoldingPair classify_fold_pair(const CoxeterGraph& gp, VertexSet Fi, VertexSet Fj, int m) {
  FoldingPair out;
  const VertexSet U = Fi | Fj;
  const CoxeterGraph H = restrict(gp, U);
  const VertexSet A = compress(Fi, U);
  const auto comps = components(H);

  bool all_dihedral = true;
  for (VertexSet c : comps) {
    if (c.size() != 2 || !c.intersects(A) || c.subset_of(A)) {
      all_dihedral = false;
      break;
    }
    auto idx = c.indices();
    Label l = H.label(idx[0], idx[1]);
    if (!l.is_finite() || static_cast<int>(l.value()) != m) all_dihedral = false;
  }
  if (all_dihedral) {
    out.tag = FoldingPair::Case::A;
    out.copies = static_cast<int>(comps.size());
    out.reason = std::to_string(comps.size()) + " copies of I2(" + std::to_string(m) + ")";
    return out;
  }
  if (comps.size() == 1) {
    out.tag = single_component_case(H, A, m);
    out.reason = out.tag == FoldingPair::Case::Reject ? "fibre graph matches none of the cases"
                                                      : "fibre graph " + type_name(*classify_spherical(H));
    return out;
  }
  std::string parts;
  for (VertexSet c : comps) {
    if (!c.intersects(A) || c.subset_of(A)) {
      out.reason = "a component of the fibre graph misses one fibre";
      return out;
    }
    CoxeterGraph hc = restrict(H, c);
    FoldingPair::Case sub = single_component_case(hc, compress(A & c, c), m);
    if (sub == FoldingPair::Case::Reject) {
      out.reason = "a component of the fibre graph matches none of the cases B to C3";
      return out;
    }
    parts += (parts.empty() ? "" : ", ") + to_string(sub);
  }
  out.tag = FoldingPair::Case::D;
  out.copies = static_cast<int>(comps.size());
  out.reason = std::to_string(comps.size()) + " components folded by cases " + parts;
  return out;
}

}  // namespace

FoldingReport check_folding(const std::vector<int>& f, const CoxeterGraph& g_prime, const CoxeterGraph& g, int bound) {
  if (static_cast<int>(f.size()) != g_prime.rank()) throw InvalidInput("check_folding: map is not total");
  for (int v : f)
    if (v < 0 || v >= g.rank()) throw InvalidInput("check_folding: map leaves the target vertex set");
  FoldingReport r;
  r.map = f;
  std::vector<VertexSet> fibers(static_cast<std::size_t>(g.rank()));
  for (int v = 0; v < g_prime.rank(); ++v) fibers[static_cast<std::size_t>(f[static_cast<std::size_t>(v)])].insert(v);
  bool fibers_ok = true;
  for (VertexSet fb : fibers) {
    bool ok = !fb.empty() && is_spherical(g_prime, fb);
    r.fiber_ok.push_back(ok);
    fibers_ok = fibers_ok && ok;
  }

  bool by_definition = false;
  if (fibers_ok) {
    BlockPartition p(g_prime, fibers, g.vertices());
    AdmissibilityVerdict v = check_admissible(p, bound);
    r.cross_check = v.outcome;
    r.cross_type_matches = v.outcome == Outcome::Admissible && v.type.resolved() && v.type.graph() == g;
    by_definition = r.cross_type_matches;
  } else {
    r.cross_check = Outcome::NotAdmissible;
  }

  r.tagged = !g.has_infinite_label();
  if (!r.tagged) {
    r.is_folding = by_definition;
    r.agrees = r.cross_check != Outcome::Unknown;
    return r;
  }

  bool pairs_ok = true;
  for (int i = 0; i < g.rank(); ++i)
    for (int j = i + 1; j < g.rank(); ++j) {
      const VertexSet Fi = fibers[static_cast<std::size_t>(i)], Fj = fibers[static_cast<std::size_t>(j)];
      const int m = static_cast<int>(g.label(i, j).value());
      FoldingPair fp;
      if (Fi.empty() || Fj.empty()) {
        fp.reason = "empty fibre";
      } else if (m == 2) {
        if (commute_blocks(g_prime, Fi, Fj)) {
          fp.tag = FoldingPair::Case::Product;
          fp.reason = "no edge between the fibres";
        } else {
          fp.reason = "edge between the fibres over a label-2 pair";
        }
      } else {
        fp = classify_fold_pair(g_prime, Fi, Fj, m);
      }
      fp.i = i;
      fp.j = j;
      pairs_ok = pairs_ok && fp.tag != FoldingPair::Case::Reject;
      r.pairs.push_back(std::move(fp));
    }
  r.is_folding = fibers_ok && pairs_ok;
  r.agrees = r.cross_check != Outcome::Unknown && r.is_folding == by_definition;
  return r;
}

AdmissibleMorphism compose(const AdmissibleMorphism& outer, const AdmissibleMorphism& inner, int bound) {
  if (!(inner.target_graph() == outer.source_graph()))
    throw InvalidInput("compose: inner target is not the outer source type");
  LiftResult lr = certify_by_lift(outer.partition, inner.partition, bound);
  if (lr.lifted_verdict.outcome != Outcome::Admissible)
    throw std::logic_error("compose: lifted partition failed the admissibility re-check");
  AdmissibleMorphism m = build_morphism(lr.lifted, lr.lifted_verdict);
  if (!(m.source_graph() == inner.source_graph()))
    throw std::logic_error("compose: lifted type differs from the inner type");
  for (int k = 0; k < m.source->rank(); ++k)
    if (!(apply(outer, image_of_atom(inner, k)) == image_of_atom(m, k)))
      throw std::logic_error("compose: generator image mismatch");
  return m;
}

std::vector<std::vector<PosBraid>> enumerate_monoid(const std::shared_ptr<const CoxeterSystem>& sys, int bound,
                                                    std::size_t budget) {
  std::vector<std::vector<PosBraid>> levels{{PosBraid(sys)}};
  std::vector<PosBraid> atoms;
  for (int i = 0; i < sys->rank(); ++i) atoms.push_back(PosBraid::atom(sys, i));
  std::size_t total = 1;
  for (int len = 0; len < bound; ++len) {
    std::unordered_set<PosBraid> next;
    std::vector<PosBraid> ordered;
    for (const auto& x : levels.back())
      for (const auto& a : atoms) {
        PosBraid y = x * a;
        if (next.insert(y).second) {
          ordered.push_back(std::move(y));
          if (++total > budget) throw InvalidInput("enumeration budget exceeded");
        }
      }
    levels.push_back(std::move(ordered));
  }
  return levels;
}

FixedSubmonoidReport fixed_submonoid_check(const CoxeterGraph& g, const std::vector<VertexPermutation>& gens,
                                           int length_bound, std::size_t budget) {
  FixedSubmonoidReport r;
  r.orbits = orbit_partition(g, gens);
  AdmissibilityVerdict v = check_admissible(r.orbits);
  if (v.outcome != Outcome::Admissible || !v.type.resolved())
    throw std::logic_error("fixed_submonoid_check: orbit partition is not admissible");
  r.orbit_type_graph = v.type.graph();
  auto types = classify_spherical(r.orbit_type_graph);
  r.orbit_type = types ? type_name(*types) : graph_to_text(r.orbit_type_graph);

  auto sys = CoxeterSystem::get(g);
  auto levels = enumerate_monoid(sys, length_bound, budget);
  std::vector<std::unordered_set<PosBraid>> fixed(levels.size());
  for (std::size_t len = 0; len < levels.size(); ++len) {
    r.monoid_counts.push_back(levels[len].size());
    for (const auto& x : levels[len]) {
      std::vector<int> w = x.word();
      bool is_fixed = true;
      for (const auto& f : gens) {
        std::vector<int> fw;
        for (int i : w) fw.push_back(f[static_cast<std::size_t>(i)]);
        if (!(PosBraid::from_word(sys, fw) == x)) {
          is_fixed = false;
          break;
        }
      }
      if (is_fixed) fixed[len].insert(x);
    }
    r.fixed_counts.push_back(fixed[len].size());
  }

  std::vector<PosBraid> generators;
  for (VertexSet o : r.orbits.blocks()) generators.push_back(lift(sys->longest(o)));
  std::vector<std::unordered_set<PosBraid>> sub(levels.size());
  sub[0].insert(PosBraid(sys));
  for (std::size_t len = 0; len < sub.size(); ++len)
    for (const auto& x : sub[len])
      for (const auto& gen : generators) {
        auto l = len + static_cast<std::size_t>(gen.length());
        if (l < sub.size()) sub[l].insert(x * gen);
      }
  for (std::size_t len = 0; len < sub.size(); ++len) {
    r.submonoid_counts.push_back(sub[len].size());
    for (const auto& x : sub[len]) r.mismatches += fixed[len].count(x) ? 0 : 1;
    for (const auto& x : fixed[len]) r.mismatches += sub[len].count(x) ? 0 : 1;
  }
  return r;
}

}  // namespace coxpart
