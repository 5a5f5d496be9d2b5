#include <algorithm>
#include <set>

#include "coxpart/coxelem.hpp"
#include "coxpart/partitions.hpp"
#include "coxpart/graph_io.hpp"
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

// Standard diagrams, written out independently of the built-in table.
CoxeterGraph bourbaki_e8() {
  return CoxeterGraph({"1", "2", "3", "4", "5", "6", "7", "8"},
                      {{"1", "3", Label(3)}, {"3", "4", Label(3)}, {"4", "5", Label(3)}, {"5", "6", Label(3)},
                       {"6", "7", Label(3)}, {"7", "8", Label(3)}, {"2", "4", Label(3)}});
}
CoxeterGraph bourbaki_e6() {
  return CoxeterGraph({"1", "2", "3", "4", "5", "6"}, {{"1", "3", Label(3)},
                                                       {"3", "4", Label(3)},
                                                       {"4", "5", Label(3)},
                                                       {"5", "6", Label(3)},
                                                       {"2", "4", Label(3)}});
}

}  // namespace

TEST_CASE("labels") {
  CHECK(Label::parse("inf").is_infinite());
  CHECK(Label::parse("5").value() == 5);
  CHECK(Label(2).is_edge() == false);
  CHECK(Label(3).is_edge());
  CHECK(Label::infinity().is_edge());
  CHECK(Label::infinity().to_string() == "inf");
  CHECK_THROWS_AS(Label::parse("0"), InvalidInput);
  CHECK_THROWS_AS(Label::parse("x"), InvalidInput);
  CHECK_THROWS_AS(Label::infinity().value(), std::logic_error);
}

TEST_CASE("graph construction") {
  CoxeterGraph g({"b", "a", "c"}, {{"a", "b", Label(3)}});
  CHECK(g.vertices() == std::vector<std::string>{"a", "b", "c"});
  CHECK(g.label(0, 1) == Label(3));
  CHECK(g.label(0, 2) == Label(2));
  CHECK(g.label(1, 1) == Label(1));
  CHECK_FALSE(g.find("z").has_value());
  CHECK_THROWS_AS(g.index_of("z"), InvalidInput);
  CHECK_THROWS_AS(CoxeterGraph({"a", "a"}, {}), InvalidInput);
  CHECK_THROWS_AS(CoxeterGraph({"a", "b"}, {{"a", "c", Label(3)}}), InvalidInput);
  CHECK_THROWS_AS(CoxeterGraph({"a", "b"}, {{"a", "a", Label(3)}}), InvalidInput);
  CHECK_THROWS_AS(CoxeterGraph({"a", "b"}, {{"a", "b", Label(1)}}), InvalidInput);
}

TEST_CASE("restrict") {
  const CoxeterGraph a3 = named("A3");
  const CoxeterGraph r = restrict(a3, ids(a3, {"1", "3"}));
  CHECK(r.rank() == 2);
  CHECK(r.label(0, 1) == Label(2));
  CHECK(restrict(a3, a3.all()) == a3);

  const CoxeterGraph e8 = named("E8");
  CHECK(e8 == bourbaki_e8());
  CHECK(restrict(e8, ids(e8, {"1", "2", "3", "4", "5", "6"})) == bourbaki_e6());

  const VertexSet j = ids(e8, {"2", "3", "4", "5", "7"});
  const VertexSet k = ids(e8, {"3", "4", "7"});
  CHECK(restrict(restrict(e8, j), compress(k, j)) == restrict(e8, k));
}

TEST_CASE("components") {
  CoxeterGraph a1a1({"1", "2"}, {});
  CHECK(components(a1a1).size() == 2);
  CHECK(components(named("A5")).size() == 1);
  CoxeterGraph b2b2b2({"1", "2", "3", "4", "5", "6"},
                      {{"1", "2", Label(4)}, {"3", "4", Label(4)}, {"5", "6", Label(4)}});
  auto cs = components(b2b2b2);
  REQUIRE(cs.size() == 3);
  for (auto c : cs) CHECK(c.size() == 2);
}

TEST_CASE("spherical classification") {
  auto t = classify_spherical(bourbaki_e6());
  REQUIRE(t.has_value());
  CHECK(type_name(*t) == "E6");
  CHECK_FALSE(classify_spherical(named("I2(inf)")).has_value());
  CHECK_FALSE(classify_spherical(named("A3~")).has_value());
  CHECK(type_name(*classify_spherical(named("I2(3)"))) == "A2");
  CHECK(type_name(*classify_spherical(named("I2(4)"))) == "B2");
  CHECK(type_name(*classify_spherical(named("I2(6)"))) == "I2(6)");
  CHECK(parse_spherical_type("I2(3)").name() == "A2");
  CHECK(parse_spherical_type("I2(4)").name() == "B2");
  CoxeterGraph a2b2({"1", "2", "3", "4"}, {{"1", "2", Label(3)}, {"3", "4", Label(4)}});
  CHECK(type_name(*classify_spherical(a2b2)) == "A2xB2");

  for (const char* name : {"A1", "A4", "B3", "B5", "D4", "D7", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)"}) {
    INFO(name);
    CHECK(classify_spherical(named(name))->at(0).name() == name);
  }
}

TEST_CASE("sphericity agrees with a finiteness oracle on rank <= 4") {
  // Positive-root count bound: no finite rank-4 group has a reduced word longer than 60.
  const int cap = 61;
  std::vector<CoxeterGraph> graphs = {named("A3"), named("B3"), named("H3"), named("D4"), named("F4"),
                                      named("H4"), named("A3~"), named("I2(inf)"), named("I2(9)")};
  auto path = [](Label a, Label b) {
    return CoxeterGraph({"1", "2", "3"}, {{"1", "2", a}, {"2", "3", b}});
  };
  graphs.push_back(path(Label(4), Label(4)));  // affine C2
  graphs.push_back(path(Label(3), Label(6)));  // affine G2
  graphs.push_back(path(Label(5), Label(5)));
  graphs.push_back(path(Label(3), Label(7)));
  graphs.push_back(CoxeterGraph({"1", "2", "3"}, {{"1", "2", Label(3)}, {"2", "3", Label(3)}, {"1", "3", Label(3)}}));
  graphs.push_back(CoxeterGraph({"1", "2", "3", "4"},
                                {{"1", "2", Label(3)}, {"2", "3", Label(4)}, {"3", "4", Label(4)}}));
  graphs.push_back(CoxeterGraph({"1", "2", "3", "4"},
                                {{"1", "2", Label(3)}, {"2", "3", Label(5)}, {"3", "4", Label(4)}}));
  for (const auto& g : graphs) {
    INFO(graph_to_text(g));
    CHECK(is_spherical(g) == (oracle::greedy_reduced_length(g, cap) < cap));
  }
}

TEST_CASE("coxeter numbers against the order oracle") {
  for (const char* name : {"A2", "A3", "A4", "A5", "A6", "A7", "A8", "B4", "D5", "E6", "E7", "E8", "F4", "H3", "H4",
                           "I2(5)", "I2(11)"}) {
    INFO(name);
    const CoxeterGraph g = named(name);
    auto bip = bipartite_partition(g);
    oracle::Word w = bip[0].indices();
    for (int v : bip[1].indices()) w.push_back(v);
    CHECK(oracle::numeric_order(g, w, 64) == coxeter_number(*classify_spherical(g)));
  }
  CHECK(coxeter_number(parse_spherical_type("I2(12)")) == 12);
  CHECK(coxeter_number(parse_spherical_type("E8")) == 30);
  CHECK_THROWS_AS(coxeter_number(*classify_spherical(CoxeterGraph({"1", "2"}, {}))), InvalidInput);
}

TEST_CASE("bipartite partition") {
  const CoxeterGraph a2 = named("A2");
  auto p = bipartite_partition(a2);
  CHECK(p[0] == ids(a2, {"1"}));
  CHECK(p[1] == ids(a2, {"2"}));
  const CoxeterGraph a4 = named("A4");
  p = bipartite_partition(a4);
  CHECK(p[0] == ids(a4, {"1", "3"}));
  CHECK(p[1] == ids(a4, {"2", "4"}));
  const CoxeterGraph d4 = named("D4");
  p = bipartite_partition(d4);
  CHECK(std::set<VertexSet>{p[0], p[1]} == std::set<VertexSet>{ids(d4, {"2"}), ids(d4, {"1", "3", "4"})});
  CHECK_THROWS_AS(bipartite_partition(named("A1")), InvalidInput);
  CoxeterGraph triangle({"1", "2", "3"}, {{"1", "2", Label(3)}, {"2", "3", Label(3)}, {"1", "3", Label(3)}});
  CHECK_THROWS_AS(bipartite_partition(triangle), InvalidInput);

  for (const char* name : {"E8", "F4", "H4", "D6", "A3~"}) {
    const CoxeterGraph g = named(name);
    auto b = bipartite_partition(g);
    CHECK((b[0] | b[1]) == g.all());
    for (const auto& block : b)
      for (int i : block.indices())
        for (int j : block.indices()) CHECK_FALSE(g.label(i, j).is_edge());
  }
}

TEST_CASE("automorphisms") {
  CHECK(automorphisms(named("A3")).elements.size() == 2);
  const CoxeterGraph d4 = named("D4");
  auto aut = automorphisms(d4);
  CHECK(aut.elements.size() == 6);
  for (const auto& f : aut.elements) CHECK(f[static_cast<std::size_t>(d4.index_of("2"))] == d4.index_of("2"));
  CHECK(automorphisms(named("E8")).elements.size() == 1);
  CHECK(automorphisms(named("E6")).elements.size() == 2);
  CHECK(automorphisms(named("A3~")).elements.size() == 8);

  for (const char* name : {"D4", "A5", "A3~", "E6"}) {
    const CoxeterGraph g = named(name);
    for (const auto& f : automorphisms(g).elements)
      for (int i = 0; i < g.rank(); ++i)
        for (int j = 0; j < g.rank(); ++j)
          CHECK(g.label(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]) == g.label(i, j));
  }
  std::vector<int> colours{0, 1, 0, 1};
  CHECK(automorphisms(named("A3~"), colours).elements.size() == 4);
  CHECK_THROWS_AS(automorphisms(named("A17")), InvalidInput);
}

TEST_CASE("isomorphism and orbits") {
  CoxeterGraph relabelled({"x", "y", "z"}, {{"z", "y", Label(5)}, {"y", "x", Label(3)}});
  CHECK(find_isomorphism(named("H3"), relabelled).has_value());
  CHECK_FALSE(find_isomorphism(named("H3"), named("B3")).has_value());
  const CoxeterGraph d4 = named("D4");
  auto orb = orbits(d4.rank(), automorphisms(d4).generators);
  CHECK(orb.size() == 2);
}

TEST_CASE("direct product") {
  CoxeterGraph a1a1({"1", "2"}, {});
  CHECK(is_direct_product(a1a1, VertexSet{0}, VertexSet{1}));
  CHECK_FALSE(is_direct_product(named("A2"), VertexSet{0}, VertexSet{1}));
  const CoxeterGraph d6 = named("D6");
  CHECK_FALSE(is_direct_product(d6, ids(d6, {"1", "2", "3"}), ids(d6, {"4", "5", "6"})));
  CHECK_THROWS_AS(is_direct_product(d6, ids(d6, {"1"}), ids(d6, {"2"})), InvalidInput);
}

TEST_CASE("graph formats") {
  for (const auto& name : named_graph_examples()) {
    INFO(name);
    const CoxeterGraph g = named(name.c_str());
    CHECK(parse_graph_text(graph_to_text(g)) == g);
    CHECK(parse_graph_json(graph_to_json(g)) == g);
    CHECK(parse_graph(graph_to_json(g)) == g);
  }
  auto g = parse_graph_text("# comment\nvertex a\nvertex b\nedge a b inf\n");
  CHECK(g.label(0, 1).is_infinite());
  CHECK_THROWS_AS(parse_graph_text("vertex a\nedge a b 3\n"), InvalidInput);
  CHECK_THROWS_AS(parse_graph_text("vertex a\nbogus\n"), InvalidInput);
  CHECK_THROWS_AS(parse_graph_json("{\"vertices\": [\"a\"], \"edges\": [{\"i\": \"a\", \"j\": \"b\", \"m\": 3}]}"),
                  InvalidInput);
  CHECK_FALSE(named_graph("Q7").has_value());
  CHECK_THROWS_AS(load_graph("/nonexistent/graph.txt"), InvalidInput);
}
