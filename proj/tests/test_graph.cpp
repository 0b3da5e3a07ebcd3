#include <doctest.h>

#include <random>

#include "wlpa/graph.hpp"

using namespace wlpa;

namespace {

const char* kG1 =
    "vertex u\nvertex v\nvertex x\nedge e u v 2\nedge f v x 1\nedge g v x 1\n";

WeightedGraph g1() { return parse_graph(kG1).graph; }

WeightedGraph exlpa1() {
  return parse_graph(
             "vertex t\nvertex u\nvertex v\nvertex x\nvertex y\nvertex z\n"
             "edge a t u 2\nedge b u t 1\nedge c v u 1\nedge d v v 1\nedge e v y 1\n"
             "edge f v x 2\nedge g v x 1\nedge h x y 1\nedge k y z 2\n")
      .graph;
}

}  // namespace

TEST_CASE("parse_graph reads the example graph") {
  WeightedGraph g = g1();
  CHECK(g.vertices == std::vector<std::string>{"u", "v", "x"});
  REQUIRE(g.edges.size() == 3);
  CHECK(g.edges[0].id == "e");
  CHECK(g.edges[0].weight == 2);
  CHECK(g.edges[0].source == 0);
  CHECK(g.edges[0].target == 1);
  CHECK(g.vertex_weight(0) == 2);
  CHECK(g.vertex_weight(1) == 1);
  CHECK(g.vertex_weight(2) == 0);  // sink
}

TEST_CASE("parse_graph accepts a single unweighted loop") {
  WeightedGraph g = parse_graph("vertex v\nedge e v v 1\n").graph;
  CHECK(g.vertices.size() == 1);
  CHECK(g.edges.size() == 1);
}

TEST_CASE("parse_graph rejects malformed input") {
  CHECK_THROWS_AS(parse_graph("vertex v\nedge e v v 0\n"), ParseError);      // weight < 1
  CHECK_THROWS_AS(parse_graph("vertex v\nvertex v\n"), ParseError);          // duplicate id
  CHECK_THROWS_AS(parse_graph("vertex v\nedge e v w 1\n"), ParseError);      // unknown endpoint
  CHECK_THROWS_AS(parse_graph("vertex v\nedge e v v x\n"), ParseError);      // bad weight
  CHECK_THROWS_AS(parse_graph("vertx v\n"), ParseError);                     // bad directive
  CHECK_THROWS_AS(parse_graph("vertex 1v\n"), ParseError);                   // bad id
  CHECK_THROWS_AS(parse_graph("vertex v\nedge e v v 2\nspecial v f\n"), ParseError);
}

TEST_CASE("special lines are validated against the max-weight rule") {
  ParsedGraph p = parse_graph("vertex v\nedge e v v 1\nedge f v v 1\nspecial v f\n");
  CHECK(p.explicit_specials.at(0) == 1);
  CHECK_THROWS_AS(parse_graph("vertex u\nvertex v\nedge e u v 2\nedge f u v 1\nspecial u f\n"), ParseError);
}

TEST_CASE("validate reports emptiness and disconnectedness") {
  CHECK(validate(g1()).ok);
  WeightedGraph empty;
  CHECK_FALSE(validate(empty).ok);
  WeightedGraph two = parse_graph("vertex a\nvertex b\n").graph;
  ValidationReport rep = validate(two);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("not connected") != std::string::npos);
}

TEST_CASE("hat_graph splits edges by weight") {
  UnweightedGraph h = hat_graph(g1());
  REQUIRE(h.edges.size() == 4);
  CHECK(h.edges[0].id == "e_1");
  CHECK(h.edges[1].id == "e_2");
  CHECK(h.edges[2].id == "f_1");
  CHECK(h.edges[3].id == "g_1");
  CHECK(h.vertices == g1().vertices);

  // all-weight-1 graph keeps its edge set, ids suffixed _1
  UnweightedGraph loop = hat_graph(parse_graph("vertex v\nedge e v v 1\n").graph);
  REQUIRE(loop.edges.size() == 1);
  CHECK(loop.edges[0].id == "e_1");

  CHECK(hat_graph(rose(2, 3)).edges.size() == 6);
}

TEST_CASE("hat_graph preserves the vertex set and total weight") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      WeightedGraph g = rose(m, n);
      UnweightedGraph h = hat_graph(g);
      CHECK(h.vertices == g.vertices);
      long long total = 0;
      for (const Edge& e : g.edges) total += e.weight;
      CHECK((long long)h.edges.size() == total);
    }
}

TEST_CASE("double_graph adds reversed ghosts") {
  UnweightedGraph h = hat_graph(g1());
  UnweightedGraph d = double_graph(h);
  CHECK(d.edges.size() == 2 * h.edges.size());
  for (size_t i = 0; i < h.edges.size(); ++i) {
    const UnweightedEdge& ghost = d.edges[h.edges.size() + i];
    CHECK(ghost.source == h.edges[i].target);
    CHECK(ghost.target == h.edges[i].source);
    CHECK(ghost.ghost);
  }
}

TEST_CASE("tree computes directed reachability") {
  WeightedGraph g = g1();
  CHECK(tree(g, {1}) == std::set<int>{1, 2});
  CHECK(tree(g, {2}) == std::set<int>{2});  // sink

  WeightedGraph ex = exlpa1();
  std::set<int> ranges;
  for (const Edge& e : ex.edges)
    if (e.weight > 1) ranges.insert(e.target);
  CHECK(ranges == std::set<int>{1, 3, 5});  // u, x, z
  std::set<int> expect{0, 1, 3, 4, 5};      // t, u, x, y, z
  CHECK(tree(ex, ranges) == expect);
}

TEST_CASE("tree is idempotent and monotone") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    int nv = 1 + (int)(rng() % 5);
    WeightedGraph g;
    for (int v = 0; v < nv; ++v) g.vertices.push_back("v" + std::to_string(v));
    int ne = (int)(rng() % 7);
    for (int e = 0; e < ne; ++e)
      g.edges.push_back({"e" + std::to_string(e), (int)(rng() % nv), (int)(rng() % nv), 1});
    std::set<int> x;
    for (int v = 0; v < nv; ++v)
      if (rng() % 2) x.insert(v);
    std::set<int> t = tree(g, x);
    CHECK(tree(g, t) == t);
    for (int v : x) CHECK(t.count(v));
  }
}

TEST_CASE("special_edges picks the first declared maximal edge") {
  WeightedGraph g = g1();
  SpecialEdges sp = special_edges(g);
  CHECK(sp[0] == 0);  // u -> e
  CHECK(sp[1] == 1);  // v -> f (declared before g)
  CHECK(sp[2] == -1);

  WeightedGraph g4 = parse_graph("vertex u\nvertex v\nvertex x\nedge e v u 1\nedge f v x 2\n").graph;
  CHECK(special_edges(g4)[1] == 1);  // only f attains w(v)=2

  // explicit override accepted when the weight matches
  SpecialEdges sp2 = special_edges(g, {{1, 2}});
  CHECK(sp2[1] == 2);
  CHECK_THROWS_AS(special_edges(g, {{0, 1}}), PreconditionError);  // f not emitted by u
}

TEST_CASE("special_edges is stable under reparsing") {
  ParsedGraph p1 = parse_graph(kG1);
  ParsedGraph p2 = parse_graph(print_graph(p1.graph));
  CHECK(p1.graph == p2.graph);
  CHECK(special_edges(p1.graph) == special_edges(p2.graph));
}

TEST_CASE("all_special_assignments enumerates the valid choices") {
  CHECK(all_special_assignments(g1()).size() == 2);  // v may pick f or g
  CHECK(all_special_assignments(rose(2, 3)).size() == 3);
}

TEST_CASE("rose builds the Leavitt algebra graphs") {
  WeightedGraph r12 = rose(1, 2);
  CHECK(r12.vertices.size() == 1);
  CHECK(r12.edges.size() == 2);
  CHECK(r12.edges[0].weight == 1);

  WeightedGraph r23 = rose(2, 3);
  CHECK(r23.edges.size() == 3);
  CHECK(r23.edges[0].weight == 2);

  CHECK(rose(1, 1).edges.size() == 1);
  CHECK_THROWS_AS(rose(0, 1), PreconditionError);
}

TEST_CASE("graph printer round-trips") {
  for (const WeightedGraph& g : {g1(), exlpa1(), rose(2, 3)}) {
    ParsedGraph back = parse_graph(print_graph(g));
    CHECK(back.graph == g);
  }
}
