#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "wlpa/classify.hpp"
#include "wlpa/growth.hpp"

using namespace wlpa;

TEST_CASE("the exlpa1 graph satisfies Condition (LPA)") {
  ConditionReport rep = check_conditions(fixtures::g3());
  CHECK(rep.lpa1);
  CHECK(rep.lpa2);
  CHECK(rep.lpa3);
  CHECK(rep.lpa4);
  CHECK(rep.lpa());
  CHECK_FALSE(rep.w1);  // t -> u -> t is a cycle based inside T(r(E1_w))
  CHECK_FALSE(rep.acyclic);
}

TEST_CASE("the exqu graph fails LPA2 and yields a nod-path witness") {
  WeightedGraph g = fixtures::g1();
  ConditionReport rep = check_conditions(g);
  CHECK_FALSE(rep.lpa2);  // v lies in T(r(E1_w)) and emits f and g
  CHECK_FALSE(rep.lpa());
  REQUIRE(rep.lpa_failure_nod_path.has_value());
  const Word& w = *rep.lpa_failure_nod_path;
  RewriteContext ctx = make_context(g);
  CHECK(is_nod_path(w, ctx));
  CHECK(w.letters.front().kind == LetterKind::real);
  CHECK(w.letters.front().tag == 2);
  CHECK(g.edges[w.letters.front().index].weight > 1);
  CHECK(w.letters.back().kind == LetterKind::ghost);
  CHECK(w.letters.back().tag == 2);
  CHECK(w.letters.back().index == w.letters.front().index);
}

TEST_CASE("the two-weighted-edges graph fails LPA1") {
  ConditionReport rep = check_conditions(fixtures::g5());
  CHECK_FALSE(rep.lpa1);
  CHECK_FALSE(rep.lpa());
  REQUIRE(rep.lpa_failure_nod_path.has_value());
}

TEST_CASE("Condition (LV) holds exactly on the LV graphs") {
  CHECK(check_conditions(fixtures::g8()).lv);
  CHECK(check_conditions(rose(2, 3)).lv);
  CHECK_FALSE(check_conditions(fixtures::g1()).lv);
  CHECK_FALSE(check_conditions(fixtures::g5()).lv);  // v emits only one edge per direction
  // single weight-2 loop: only one maximal-weight edge
  CHECK_FALSE(check_conditions(parse_graph("vertex v\nedge e v v 2\n").graph).lv);
}

TEST_CASE("W2 detects the chained path-pair constellation") {
  CHECK(check_conditions(fixtures::g5()).w2);  // no unweighted edge anywhere
  WeightedGraph bad = parse_graph("vertex v\nvertex x\nedge f v x 2\nedge g v x 1\n").graph;
  ConditionReport rep = check_conditions(bad);
  CHECK_FALSE(rep.w2);
  CHECK_FALSE(rep.lpa2);  // same constellation
  CHECK_FALSE(rep.aquasicyclic);
}

TEST_CASE("W1 implies LPA4 on random graphs") {
  std::mt19937 rng(71);
  for (int i = 0; i < 60; ++i) {
    WeightedGraph g = fixtures2::random_connected_graph(rng, 5, 6, 3);
    ConditionReport rep = check_conditions(g);
    if (rep.w1) CHECK(rep.lpa4);
  }
}

TEST_CASE("classification of the finite-dimensional example") {
  Classification cls = classify(fixtures::g4());
  REQUIRE(cls.finite_dimensional.has_value());
  CHECK(*cls.finite_dimensional == std::vector<long long>{3, 3});
  REQUIRE(cls.noetherian.has_value());
  CHECK(cls.noetherian->laurent_blocks.empty());
  CHECK(cls.von_neumann_regular);
  CHECK(cls.locally_finite);
  CHECK_FALSE(cls.gk.infinite);
  CHECK(cls.gk.value == 0);
  CHECK_FALSE(cls.domain);
  CHECK_FALSE(cls.simple.has_value());  // outside this classifier's scope
}

TEST_CASE("the single unweighted loop is Noetherian with one Laurent block") {
  WeightedGraph g = parse_graph("vertex v\nedge e v v 1\n").graph;
  Classification cls = classify(g);
  CHECK_FALSE(cls.finite_dimensional.has_value());
  REQUIRE(cls.noetherian.has_value());
  CHECK(cls.noetherian->field_blocks.empty());
  CHECK(cls.noetherian->laurent_blocks == std::vector<long long>{1});
  CHECK(cls.domain);  // Laurent polynomials
  CHECK(cls.gk.value == 1);
}

TEST_CASE("a no-exit cycle with a tail gets the right Laurent size") {
  WeightedGraph g = parse_graph("vertex u\nvertex w\nedge a u w 1\nedge l w w 1\n").graph;
  Classification cls = classify(g);
  REQUIRE(cls.noetherian.has_value());
  CHECK(cls.noetherian->laurent_blocks == std::vector<long long>{2});
}

TEST_CASE("failing Condition (LPA) forces every negative verdict") {
  Classification cls = classify(fixtures::g5());
  CHECK_FALSE(cls.finite_dimensional.has_value());
  CHECK_FALSE(cls.noetherian.has_value());
  CHECK_FALSE(cls.von_neumann_regular);
  CHECK_FALSE(cls.locally_finite);
  CHECK(cls.gk.infinite);
  REQUIRE(cls.simple.has_value());
  CHECK_FALSE(*cls.simple);
  REQUIRE(cls.graded_simple.has_value());
  CHECK_FALSE(*cls.graded_simple);
}

TEST_CASE("the LV rose is a domain") {
  CHECK(classify(fixtures::g8()).domain);
  CHECK(classify(fixtures::g8()).gk.infinite);
  CHECK_FALSE(classify(fixtures::g5()).domain);
}

TEST_CASE("no_cycle_has_exit") {
  CHECK(no_cycle_has_exit(parse_graph("vertex v\nedge e v v 1\n").graph));
  CHECK_FALSE(no_cycle_has_exit(parse_graph("vertex v\nvertex u\nedge e v v 1\nedge f v u 1\n").graph));
  CHECK(no_cycle_has_exit(fixtures::g4()));  // acyclic: vacuous
}

TEST_CASE("finite-dimensionality and Noetherianness equivalences on random graphs") {
  std::mt19937 rng(73);
  for (int i = 0; i < 40; ++i) {
    WeightedGraph g = fixtures2::random_connected_graph(rng, 4, 5, 3);
    ConditionReport rep = check_conditions(g);
    CHECK((rep.acyclic && rep.well_behaved()) == rep.aquasicyclic);
    GkDimension gk = gk_dimension(make_context(g));
    bool noeth = rep.well_behaved() && no_cycle_has_exit(g);
    CHECK(noeth == (!gk.infinite && gk.value <= 1));
  }
}

TEST_CASE("dimension cross-check: sum of squares equals the saturated count") {
  std::mt19937 rng(79);
  int done = 0;
  while (done < 12) {
    WeightedGraph g = fixtures2::random_connected_graph(rng, 4, 4, 3);
    if (!check_conditions(g).aquasicyclic) continue;
    ++done;
    Classification cls = classify(g);
    REQUIRE(cls.finite_dimensional.has_value());
    long long dim = 0;
    for (long long n : *cls.finite_dimensional) dim += n * n;
    CHECK(BigInt(dim) == count_nod_paths_saturated(make_context(g)));
  }
}
