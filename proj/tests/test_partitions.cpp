#include <algorithm>
#include <numeric>
#include <set>

#include "coxpart/artin.hpp"
#include "coxpart/graph_io.hpp"
#include "coxpart/morphisms.hpp"
#include "coxpart/partitions.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coxpart;

namespace {

CoxeterGraph named(const char* name) { return *named_graph(name); }

VertexSet ids(const CoxeterGraph& g, std::initializer_list<const char*> names) {
  VertexSet s;
  for (const char* n : names) s.insert(g.index_of(n));
  return s;
}

BlockPartition two_blocks(const CoxeterGraph& g, VertexSet a, VertexSet b) { return BlockPartition(g, {a, b}); }

BlockPartition bipartite(const CoxeterGraph& g) {
  auto b = bipartite_partition(g);
  return two_blocks(g, b[0], b[1]);
}

const PairOrder& entry(const PartitionType& t, int a, int b) {
  return t.entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

CoxeterGraph star() {
  return parse_graph_text(
      "vertex a\nvertex b\nvertex c\nvertex d\nvertex e\nvertex i\n"
      "edge c a 3\nedge c b 3\nedge c d 3\nedge c e 3\nedge c i 3\n");
}

// Unordered 2-partition key, minimised over graph automorphisms.
std::pair<std::uint64_t, std::uint64_t> class_key(const CoxeterGraph& g, VertexSet a, VertexSet b,
                                                  const AutomorphismGroup& aut) {
  std::pair<std::uint64_t, std::uint64_t> best{~0ULL, ~0ULL};
  for (const auto& f : aut.elements) {
    VertexSet fa, fb;
    for (int v : a.indices()) fa.insert(f[static_cast<std::size_t>(v)]);
    for (int v : b.indices()) fb.insert(f[static_cast<std::size_t>(v)]);
    const std::uint64_t x = fa.bits(), y = fb.bits();
    best = std::min(best, std::make_pair(std::min(x, y), std::max(x, y)));
  }
  return best;
}

}  // namespace

TEST_CASE("partition text format") {
  const CoxeterGraph a3 = named("A3");
  const BlockPartition p = parse_partition(a3, "# ends\nblock x = 1,3\nblock y = 2\n");
  CHECK(p.size() == 2);
  CHECK(p.name(0) == "x");
  CHECK(p.block(0) == ids(a3, {"1", "3"}));
  CHECK(parse_partition(a3, partition_to_text(p)) == p);
  CHECK(p.block_of(a3.index_of("2")) == 1);
  CHECK(p.carrier() == a3.all());

  const BlockPartition q = parse_partition(a3, "block 1+3 = 1, 3\n");
  CHECK(q.carrier() == ids(a3, {"1", "3"}));
  CHECK(BlockPartition(a3, {ids(a3, {"1", "3"})}).name(0) == "1+3");

  CHECK_THROWS_WITH_AS(parse_partition(a3, "block x = 1\nblock y = 1\n"), doctest::Contains("line 2"), InvalidInput);
  CHECK_THROWS_AS(parse_partition(a3, "block x = 9\n"), InvalidInput);
  CHECK_THROWS_AS(parse_partition(a3, "block x =\n"), InvalidInput);
  CHECK_THROWS_AS(parse_partition(a3, "block x = 1\nblock x = 2\n"), InvalidInput);
  CHECK_THROWS_AS(parse_partition(a3, "blok x = 1\n"), InvalidInput);
  CHECK_THROWS_AS(BlockPartition(a3, {VertexSet{}}), InvalidInput);
}

TEST_CASE("spherical partitions") {
  const CoxeterGraph inf = named("I2(inf)");
  CHECK(is_spherical_partition(BlockPartition(inf, {VertexSet{0}, VertexSet{1}})));
  CHECK_FALSE(is_spherical_partition(BlockPartition(inf, {VertexSet{0, 1}})));
  const BurstResult b = burst(named("H3"), 2);
  CHECK(is_spherical_partition(b.partition));
  CHECK_THROWS_AS(check_admissible(BlockPartition(inf, {VertexSet{0, 1}})), InvalidInput);
}

TEST_CASE("partition types") {
  for (int m : {5, 7, 12}) {
    const CoxeterGraph g = *named_graph("I2(" + std::to_string(m) + ")");
    CHECK(entry(partition_type(bipartite(g)), 0, 1) == PairOrder{PairOrder::Kind::Finite, m});
  }
  const PartitionType e8 = partition_type(bipartite(named("E8")));
  CHECK(entry(e8, 0, 1).order == 30);
  CHECK(entry(e8, 0, 0).order == 1);
  CHECK(e8.graph().label(0, 1) == Label(30));

  const CoxeterGraph sq = named("A3~");
  const BlockPartition opp = two_blocks(sq, ids(sq, {"1", "3"}), ids(sq, {"2", "4"}));
  const PartitionType t = partition_type(opp);
  CHECK(entry(t, 0, 1).kind == PairOrder::Kind::InfiniteCertified);
  CHECK(entry(t, 0, 1).to_string() == "inf");
  CHECK(t.graph().label(0, 1).is_infinite());
}

TEST_CASE("pair ladder") {
  const CoxeterGraph a2 = named("A2");
  PairVerdict v = check_pair(bipartite(a2), 0, 1);
  CHECK(v.outcome == Outcome::Admissible);
  CHECK(v.order.order == 3);

  CoxeterGraph a1a1({"1", "2"}, {});
  v = check_pair(two_blocks(a1a1, VertexSet{0}, VertexSet{1}), 0, 1);
  CHECK(v.outcome == Outcome::Admissible);
  CHECK(v.order.order == 2);

  // The remark after the definition of admissible morphisms: α = {1}, β = {2,3} on A3.
  const CoxeterGraph a3 = named("A3");
  const BlockPartition rem = two_blocks(a3, ids(a3, {"1"}), ids(a3, {"2", "3"}));
  v = check_pair(rem, 0, 1);
  CHECK(v.outcome == Outcome::NotAdmissible);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->n == 3);
  CHECK(replay_witness(rem, *v.witness));

  // A vertex commuting with the other block.
  const CoxeterGraph a4 = named("A4");
  const BlockPartition comm = two_blocks(a4, ids(a4, {"1", "2", "4"}), ids(a4, {"3"}));
  v = check_pair(comm, 0, 1);
  CHECK(v.outcome == Outcome::NotAdmissible);
  REQUIRE(v.witness.has_value());
  CHECK(replay_witness(comm, *v.witness));

  // The remaining candidate of H4 (path shape {1,4} | {2,3}).
  const CoxeterGraph h4 = named("H4");
  const BlockPartition h = two_blocks(h4, ids(h4, {"1", "4"}), ids(h4, {"2", "3"}));
  const AdmissibilityVerdict hv = check_admissible(h);
  CHECK(hv.outcome == Outcome::NotAdmissible);
  REQUIRE(hv.witness.has_value());
  CHECK(replay_witness(h, *hv.witness));
}

TEST_CASE("bipartite partitions are admissible with the Coxeter number") {
  std::vector<std::string> names{"E6", "E7", "E8", "F4", "H3", "H4"};
  for (int n = 2; n <= 8; ++n) names.push_back("A" + std::to_string(n));
  for (int n = 2; n <= 8; ++n) names.push_back("B" + std::to_string(n));
  for (int n = 4; n <= 8; ++n) names.push_back("D" + std::to_string(n));
  for (int m = 5; m <= 12; ++m) names.push_back("I2(" + std::to_string(m) + ")");
  for (const auto& name : names) {
    INFO(name);
    const CoxeterGraph g = named(name.c_str());
    const BlockPartition p = bipartite(g);
    const AdmissibilityVerdict v = check_admissible(p);
    CHECK(v.outcome == Outcome::Admissible);
    const int h = coxeter_number(*classify_spherical(g));
    CHECK(entry(v.type, 0, 1).order == h);
    oracle::Word w = p.block(0).indices();
    for (int x : p.block(1).indices()) w.push_back(x);
    CHECK(oracle::numeric_order(g, w, 64) == h);

    // ∏_h(r̄_α, r̄_β) = ∏_h(r̄_β, r̄_α) = r̄_I, and compatibility stops exactly at h.
    auto sys = CoxeterSystem::get(g);
    const PosBraid ra = *lcm_atoms(sys, p.block(0)), rb = *lcm_atoms(sys, p.block(1));
    PosBraid ab(sys), ba(sys);
    for (int k = 0; k < h; ++k) {
      ab = ab * (k % 2 == 0 ? ra : rb);
      ba = ba * (k % 2 == 0 ? rb : ra);
    }
    CHECK(ab == *lcm_atoms(sys, g.all()));
    CHECK(ba == ab);
    for (int n = 0; n <= h + 1; ++n) CHECK(is_compatible(*sys, alternating(p.block(0), p.block(1), n)) == (n <= h));
  }
}

TEST_CASE("bursts of H3 and the square") {
  const BurstResult b = burst(named("H3"), 2);
  const AdmissibilityVerdict v = check_admissible(b.partition);
  CHECK(v.outcome == Outcome::Admissible);
  CHECK(type_name(*classify_spherical(v.type.graph())) == "H3");

  const CoxeterGraph sq = named("A3~");
  const BlockPartition opp = two_blocks(sq, ids(sq, {"1", "3"}), ids(sq, {"2", "4"}));
  const AdmissibilityVerdict o = check_admissible(opp);
  CHECK(o.outcome == Outcome::Admissible);
  CHECK(o.pairs[0].certificate.kind == Certificate::Kind::Orbit);
  CHECK_FALSE(o.pairs[0].certificate.generators.empty());
  // Adjacent pairs are the orbits of a reflection of the square.
  const BlockPartition adj = two_blocks(sq, ids(sq, {"1", "2"}), ids(sq, {"3", "4"}));
  CHECK(check_admissible(adj).outcome == Outcome::Admissible);
}

TEST_CASE("orbit partitions") {
  const CoxeterGraph a3 = named("A3");
  const BlockPartition triv = orbit_partition(a3, {});
  CHECK(triv.size() == 3);
  CHECK(triv.carrier() == a3.all());

  const auto a3aut = automorphisms(a3);
  const BlockPartition ends = orbit_partition(a3, a3aut.generators);
  CHECK(canonical_order(ends).block(0) == ids(a3, {"1", "3"}));
  CHECK(type_name(*classify_spherical(partition_type(ends).graph())) == "B2");

  const CoxeterGraph e6 = named("E6");
  const BlockPartition flip = orbit_partition(e6, automorphisms(e6).generators);
  CHECK(type_name(*classify_spherical(partition_type(flip).graph())) == "F4");

  std::vector<VertexPermutation> bad{{1, 0, 2}};
  CHECK_THROWS_AS(orbit_partition(a3, bad), InvalidInput);

  // A non-spherical orbit is dropped from the carrier.
  const CoxeterGraph tri({"1", "2", "3"}, {{"1", "2", Label(3)}, {"2", "3", Label(3)}, {"1", "3", Label(3)}});
  const BlockPartition rot = orbit_partition(tri, automorphisms(tri).generators);
  CHECK(rot.size() == 0);
}

TEST_CASE("orbit partitions of every subgroup are admissible") {
  std::vector<CoxeterGraph> corpus{named("A3"), named("A5"), named("D4"), named("D5"), named("E6"),
                                   named("A3~"), named("I2(inf)"), named("B3"), star()};
  corpus.push_back(parse_graph_text("vertex 1\nvertex 2\nvertex 3\nvertex 4\nedge 1 2 4\nedge 3 4 4\n"));
  corpus.push_back(parse_graph_text("vertex 1\nvertex 2\nvertex 3\nvertex 4\nedge 1 2 inf\nedge 2 3 3\nedge 3 4 inf\n"));
  for (const auto& g : corpus) {
    INFO(graph_to_text(g));
    const auto aut = automorphisms(g);
    // Every subgroup of these groups is generated by at most two elements.
    std::set<std::vector<VertexSet>> seen;
    for (const auto& f1 : aut.elements)
      for (const auto& f2 : aut.elements) {
        std::vector<VertexPermutation> gens{f1, f2};
        const BlockPartition p = orbit_partition(g, gens);
        if (p.size() < 2 || !seen.insert(canonical_order(p).blocks()).second) continue;
        const AdmissibilityVerdict v = check_admissible(p);
        CHECK(v.outcome == Outcome::Admissible);
        CHECK(v.type.resolved());
        for (const auto& pv : v.pairs) CHECK(pv.outcome != Outcome::Unknown);
        CHECK(is_orbit_partition(p));
      }
  }
}

TEST_CASE("lifting") {
  const CoxeterGraph a4 = named("A4");
  const BlockPartition outer = orbit_partition(a4, automorphisms(a4).generators);
  const AdmissibilityVerdict ov = check_admissible(outer);
  REQUIRE(ov.outcome == Outcome::Admissible);
  const CoxeterGraph b2 = ov.type.graph();
  CHECK(type_name(*classify_spherical(b2)) == "B2");

  const BlockPartition singles = orbit_partition(b2, {});
  CHECK(canonical_order(lift_partition(outer, singles)).blocks() == canonical_order(outer).blocks());

  const BlockPartition whole(b2, {b2.all()});
  CHECK(lift_partition(outer, whole).block(0) == a4.all());

  const BlockPartition inner = bipartite(b2);
  const LiftResult lr = certify_by_lift(outer, inner);
  CHECK(lr.inner.outcome == Outcome::Admissible);
  CHECK(lr.lifted_verdict.outcome == Outcome::Admissible);
  CHECK(check_admissible(inner).outcome == check_admissible(lr.lifted).outcome);
  const std::set<VertexSet> lifted_blocks(lr.lifted.blocks().begin(), lr.lifted.blocks().end());
  CHECK(lifted_blocks == std::set<VertexSet>{ids(a4, {"1", "4"}), ids(a4, {"2", "3"})});

  // The star with five arms: orbits of the stabiliser of i, then {1,3} | {2} on the type.
  const CoxeterGraph s = star();
  const BlockPartition st(s, {ids(s, {"a", "b", "d", "e"}), ids(s, {"c"}), ids(s, {"i"})}, {"1", "2", "3"});
  const AdmissibilityVerdict sv = check_admissible(st);
  REQUIRE(sv.outcome == Outcome::Admissible);
  const CoxeterGraph tg = sv.type.graph();
  CHECK(tg.label(tg.index_of("1"), tg.index_of("2")).is_infinite());
  CHECK(tg.label(tg.index_of("2"), tg.index_of("3")) == Label(3));
  const BlockPartition in(tg, {ids(tg, {"1", "3"}), ids(tg, {"2"})});
  const LiftResult slr = certify_by_lift(st, in);
  CHECK(slr.inner.outcome == Outcome::Admissible);
  CHECK(slr.inner.type.entries[0][1].kind == PairOrder::Kind::InfiniteCertified);
  const std::set<VertexSet> star_blocks(slr.lifted.blocks().begin(), slr.lifted.blocks().end());
  const auto full = orbit_partition(s, automorphisms(s).generators);
  CHECK(star_blocks == std::set<VertexSet>(full.blocks().begin(), full.blocks().end()));

  // The H4 candidate lifts through the burst of H4 to a non-admissible partition of E8.
  const BurstResult b = burst(named("H4"), 2);
  const CoxeterGraph h4 = check_admissible(b.partition).type.graph();
  const BlockPartition cand = two_blocks(h4, ids(h4, {"1", "4"}), ids(h4, {"2", "3"}));
  const LiftResult hl = certify_by_lift(b.partition, cand);
  CHECK(hl.inner.outcome == Outcome::NotAdmissible);
  CHECK(hl.lifted_verdict.outcome == Outcome::NotAdmissible);

  CHECK_THROWS_AS(certify_by_lift(two_blocks(a4, ids(a4, {"1"}), ids(a4, {"2", "3", "4"})), inner), InvalidInput);
}

TEST_CASE("products") {
  const CoxeterGraph a2a2 = parse_graph_text("vertex 1\nvertex 2\nvertex 3\nvertex 4\nedge 1 2 3\nedge 3 4 3\n");
  const std::vector<VertexSet> f{ids(a2a2, {"1", "2"}), ids(a2a2, {"3", "4"})};
  ProductSplitReport r = product_split_check(a2a2, f, ids(a2a2, {"1", "3"}), ids(a2a2, {"2", "4"}));
  CHECK(r.global.outcome == Outcome::Admissible);
  CHECK(r.global.order.order == 3);
  CHECK(r.rule_holds);
  CHECK(r.lcm_matches);

  const CoxeterGraph a2b2 = parse_graph_text("vertex 1\nvertex 2\nvertex 3\nvertex 4\nedge 1 2 3\nedge 3 4 4\n");
  const std::vector<VertexSet> f2{ids(a2b2, {"1", "2"}), ids(a2b2, {"3", "4"})};
  r = product_split_check(a2b2, f2, ids(a2b2, {"1", "3"}), ids(a2b2, {"2", "4"}));
  CHECK(r.global.outcome == Outcome::NotAdmissible);
  CHECK(r.global.order.order == 12);
  CHECK(r.lcm_of_orders == 12);
  CHECK(std::lcm(3, 4) == 12);
  CHECK(r.rule_holds);

  const CoxeterGraph a3 = named("A3");
  const std::vector<VertexSet> one{a3.all()};
  r = product_split_check(a3, one, ids(a3, {"1", "3"}), ids(a3, {"2"}));
  CHECK(r.rule_holds);
  CHECK(r.decided);

  const std::vector<VertexSet> wrong{ids(a3, {"1", "2"}), ids(a3, {"3"})};
  CHECK_THROWS_AS(product_split_check(a3, wrong, ids(a3, {"1", "3"}), ids(a3, {"2"})), InvalidInput);
}

TEST_CASE("classification of 2-partitions") {
  struct Expected {
    const char* graph;
    std::vector<std::pair<std::vector<const char*>, int>> extra;  // block α and order
  };
  std::vector<Expected> cases{
      {"A4", {{{"1", "4"}, 4}}},
      {"A6", {{{"1", "6", "3", "4"}, 6}}},
      {"A8", {{{"1", "8", "3", "6"}, 8}}},
      {"E6", {{{"1", "2", "6"}, 8}}},
      {"F4", {{{"1", "4"}, 8}}},
      {"A3", {}}, {"A5", {}}, {"A7", {}}, {"B3", {}}, {"B6", {}}, {"D4", {}}, {"D7", {}}, {"H3", {}}, {"H4", {}},
  };
  for (const auto& c : cases) {
    INFO(c.graph);
    const CoxeterGraph g = named(c.graph);
    const ClassificationReport rep = classify_2partitions(g);
    const auto aut = automorphisms(g);
    std::set<std::pair<std::pair<std::uint64_t, std::uint64_t>, int>> got, want;
    for (const Candidate* cand : rep.admissible())
      got.insert({class_key(g, cand->alpha, cand->beta, aut), cand->verdict.order.order});
    auto bip = bipartite_partition(g);
    want.insert({class_key(g, bip[0], bip[1], aut), coxeter_number(*classify_spherical(g))});
    for (const auto& [alpha, order] : c.extra) {
      VertexSet a;
      for (const char* v : alpha) a.insert(g.index_of(v));
      want.insert({class_key(g, a, g.all() - a, aut), order});
    }
    CHECK(got == want);
    CHECK(rep.count(Candidate::Stage::Unknown) == 0);
    CHECK(rep.total_partitions == (1 << (g.rank() - 1)) - 1);
    int sum = 0;
    for (const auto& cand : rep.candidates) {
      sum += cand.class_size;
      if (cand.verdict.outcome == Outcome::NotAdmissible && cand.verdict.witness) {
        const BlockPartition p = two_blocks(g, cand.alpha, cand.beta);
        CHECK(replay_witness(p, *cand.verdict.witness));
      }
    }
    CHECK(sum == rep.total_partitions);
  }

  const ClassificationReport e6 = classify_2partitions(named("E6"));
  CHECK(e6.longest_length == 36);
  CHECK(e6.count(Candidate::Stage::LengthFilter) == 1);
  CHECK(e6.count(Candidate::Stage::DirectCheck) == 0);
  CHECK_THROWS_AS(classify_2partitions(named("A3~")), InvalidInput);
}
