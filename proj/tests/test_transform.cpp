#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "wlpa/classify.hpp"
#include "wlpa/ktheory.hpp"
#include "wlpa/transform.hpp"

using namespace wlpa;

namespace {

UnweightedGraph from_text(const std::string& text) {
  WeightedGraph g = parse_graph(text).graph;
  UnweightedGraph u;
  u.vertices = g.vertices;
  for (const Edge& e : g.edges) u.edges.push_back({e.id, e.source, e.target, -1, 0, false});
  return u;
}

}  // namespace

TEST_CASE("step1 reverses exactly the edges emitted inside the zone (chain example)") {
  Step1Result s1 = step1(fixtures::g6());
  const WeightedGraph& t = s1.graph;
  // e and f survive, g and h are replaced by reversed unweighted copies
  CHECK(t.vertices == fixtures::g6().vertices);
  REQUIRE(t.edges.size() == 6);
  CHECK(t.edge_index("e") >= 0);
  CHECK(t.edge_index("f") >= 0);
  CHECK(t.edges[t.edge_index("f")].weight == 2);
  int g1 = t.edge_index("g__1");
  REQUIRE(g1 >= 0);
  CHECK(t.vertices[t.edges[g1].source] == "y");
  CHECK(t.vertices[t.edges[g1].target] == "x");
  CHECK(t.edges[g1].weight == 1);
  for (const char* id : {"h__1", "h__2", "h__3"}) {
    int h = t.edge_index(id);
    REQUIRE(h >= 0);
    CHECK(t.vertices[t.edges[h].source] == "z");
    CHECK(t.vertices[t.edges[h].target] == "y");
  }
}

TEST_CASE("step2 splits ranges of weighted edges (chain example)") {
  Step2Result s2 = step2(step1(fixtures::g6()).graph);
  UnweightedGraph expect = from_text(
      "vertex u\nvertex v\nvertex x1\nvertex x2\nvertex y\nvertex z\n"
      "edge e v u 1\nedge f1 v x1 1\nedge f2 x2 v 1\n"
      "edge g11 y x1 1\nedge g12 y x2 1\n"
      "edge h1 z y 1\nedge h2 z y 1\nedge h3 z y 1\n");
  CHECK(digraphs_isomorphic(s2.graph, expect));
}

TEST_CASE("to_unweighted reproduces the exlpa1 figure") {
  TransformResult tr = to_unweighted(fixtures::g3());
  UnweightedGraph expect = from_text(
      "vertex t\nvertex u\nvertex v\nvertex x1\nvertex x2\nvertex y\nvertex z\n"
      "edge b1 t u 1\nedge a1 u t 1\nedge a2 u t 1\n"
      "edge c v u 1\nedge d v v 1\nedge e v y 1\n"
      "edge f1 v x1 1\nedge f2 x2 v 1\nedge g1 v x1 1\nedge g2 v x2 1\n"
      "edge h11 y x1 1\nedge h12 y x2 1\nedge k1 z y 1\nedge k2 z y 1\n");
  CHECK(digraphs_isomorphic(tr.graph, expect));
}

TEST_CASE("to_unweighted on g4 gives the four-vertex graph with three paths into each sink") {
  TransformResult tr = to_unweighted(fixtures::g4());
  CHECK(tr.graph.vertices.size() == 4);
  UnweightedGraph expect = from_text(
      "vertex u\nvertex v\nvertex x1\nvertex x2\n"
      "edge e v u 1\nedge f1 v x1 1\nedge f2 x2 v 1\n");
  CHECK(digraphs_isomorphic(tr.graph, expect));
}

TEST_CASE("an all-unweighted graph transforms to itself") {
  WeightedGraph g = parse_graph("vertex v\nvertex w\nedge e v w 1\nedge f w v 1\n").graph;
  TransformResult tr = to_unweighted(g);
  UnweightedGraph same;
  same.vertices = g.vertices;
  for (const Edge& e : g.edges) same.edges.push_back({e.id, e.source, e.target, -1, 0, false});
  CHECK(digraphs_isomorphic(tr.graph, same));
  // identity-like generator map
  RewriteContext target = make_context(tr.graph.to_weighted());
  for (size_t v = 0; v < g.vertices.size(); ++v)
    CHECK(tr.map.vertex_images[v] == AlgebraElement::vertex((int)v));
}

TEST_CASE("step1 requires Condition (LPA)") {
  CHECK_THROWS_AS(step1(fixtures::g5()), PreconditionError);  // LPA1 fails
  CHECK_THROWS_AS(step1(fixtures::g1()), PreconditionError);  // LPA2 fails
}

TEST_CASE("step2 checks its precondition") {
  // range of the weighted edge is not a sink
  WeightedGraph g = parse_graph("vertex u\nvertex v\nvertex w\nedge e u v 2\nedge f v w 1\n").graph;
  CHECK_THROWS_AS(step2(g), PreconditionError);
}

TEST_CASE("verify_homomorphism accepts the constructed maps") {
  for (const WeightedGraph& g : {fixtures::g3(), fixtures::g6(), fixtures::g4()}) {
    TransformResult tr = to_unweighted(g);
    HomomorphismCheck check = verify_homomorphism(g, tr.graph, tr.map);
    INFO(check.failing_relation);
    CHECK(check.ok);
  }
}

TEST_CASE("a corrupted generator map is rejected with a witness") {
  WeightedGraph g = fixtures::g4();
  TransformResult tr = to_unweighted(g);
  GeneratorMap bad = tr.map;
  std::swap(bad.edge_images.at({0, 1}), bad.edge_images.at({1, 1}));
  HomomorphismCheck check = verify_homomorphism(g, tr.graph, bad);
  CHECK_FALSE(check.ok);
  CHECK_FALSE(check.failing_relation.empty());
}

TEST_CASE("random LPA graphs: maps verify and K0 is invariant") {
  std::mt19937 rng(83);
  for (int i = 0; i < 20; ++i) {
    WeightedGraph g = fixtures2::random_lpa_graph(rng);
    REQUIRE(check_conditions(g).lpa());
    TransformResult tr = to_unweighted(g);  // also asserts the step1 postcondition
    CHECK(verify_homomorphism(g, tr.graph, tr.map).ok);
    AbelianGroupReport before = k0(g);
    AbelianGroupReport after = k0(tr.graph.to_weighted());
    CHECK(before.rank == after.rank);
    CHECK(before.torsion == after.torsion);
  }
}

TEST_CASE("digraph isomorphism is a sound test helper") {
  UnweightedGraph a = from_text("vertex p\nvertex q\nedge e p q 1\nedge f q p 1\n");
  UnweightedGraph b = from_text("vertex x\nvertex y\nedge m y x 1\nedge n x y 1\n");
  UnweightedGraph c = from_text("vertex x\nvertex y\nedge m y x 1\nedge n y x 1\n");
  CHECK(digraphs_isomorphic(a, b));
  CHECK_FALSE(digraphs_isomorphic(a, c));
}
