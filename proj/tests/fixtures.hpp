#pragma once

#include <random>
#include <string>

#include "wlpa/element.hpp"
#include "wlpa/growth.hpp"

namespace fixtures {

using namespace wlpa;

// u -(e,2)-> v, parallel f,g : v -> x
inline WeightedGraph g1() {
  return parse_graph("vertex u\nvertex v\nvertex x\nedge e u v 2\nedge f v x 1\nedge g v x 1\n").graph;
}

// u -(e,2)-> v -(f,1)-> x, u -(g,1)-> x
inline WeightedGraph g2() {
  return parse_graph("vertex u\nvertex v\nvertex x\nedge e u v 2\nedge g u x 1\nedge f v x 1\n").graph;
}

// exlpa1 graph
inline WeightedGraph g3() {
  return parse_graph(
             "vertex t\nvertex u\nvertex v\nvertex x\nvertex y\nvertex z\n"
             "edge a t u 2\nedge b u t 1\nedge c v u 1\nedge d v v 1\nedge e v y 1\n"
             "edge f v x 2\nedge g v x 1\nedge h x y 1\nedge k y z 2\n")
      .graph;
}

// u <-(e,1)- v -(f,2)-> x
inline WeightedGraph g4() {
  return parse_graph("vertex u\nvertex v\nvertex x\nedge e v u 1\nedge f v x 2\n").graph;
}

// u <-(e,2)- v -(f,2)-> x
inline WeightedGraph g5() {
  return parse_graph("vertex u\nvertex v\nvertex x\nedge e v u 2\nedge f v x 2\n").graph;
}

// chain graph: u <-(e,1)- v -(f,2)-> x -(g,1)-> y -(h,3)-> z
inline WeightedGraph g6() {
  return parse_graph(
             "vertex u\nvertex v\nvertex x\nvertex y\nvertex z\n"
             "edge e v u 1\nedge f v x 2\nedge g x y 1\nedge h y z 3\n")
      .graph;
}

// one vertex, two weight-2 loops
inline WeightedGraph g8() {
  return parse_graph("vertex v\nedge e v v 2\nedge f v v 2\n").graph;
}

// random d-path word of length <= max_len (possibly a vertex word)
inline Word random_word(const WeightedGraph& g, std::mt19937& rng, int max_len) {
  std::vector<Letter> alphabet = letter_alphabet(g);
  std::uniform_int_distribution<int> len_dist(0, max_len);
  int len = len_dist(rng);
  if (len == 0 || alphabet.empty()) {
    return Word{{Letter::vertex_letter((int)(rng() % g.vertices.size()))}};
  }
  Word w;
  for (int i = 0; i < len; ++i) {
    std::vector<Letter> options;
    for (const Letter& l : alphabet)
      if (w.letters.empty() || letter_range(w.letters.back(), g) == letter_source(l, g)) options.push_back(l);
    if (options.empty()) break;
    w.letters.push_back(options[rng() % options.size()]);
  }
  if (w.letters.empty()) return Word{{Letter::vertex_letter((int)(rng() % g.vertices.size()))}};
  return w;
}

// random element: a few composable words with coefficients in -3..3
inline AlgebraElement random_element(const WeightedGraph& g, std::mt19937& rng, int max_len = 6,
                                     int max_terms = 3, int field = 0) {
  AlgebraElement x(field);
  std::uniform_int_distribution<int> coeff(-3, 3);
  int terms = 1 + (int)(rng() % max_terms);
  for (int t = 0; t < terms; ++t) x.add_term(random_word(g, rng, max_len), Scalar::of(coeff(rng), 1, field));
  return x;
}

}  // namespace fixtures

namespace fixtures2 {

using namespace wlpa;

// random connected weighted graph (rejection sampled)
inline WeightedGraph random_connected_graph(std::mt19937& rng, int max_v, int max_e, int max_w) {
  while (true) {
    WeightedGraph g;
    int nv = 1 + (int)(rng() % max_v);
    for (int v = 0; v < nv; ++v) g.vertices.push_back("v" + std::to_string(v));
    int ne = (int)(rng() % (max_e + 1));
    for (int e = 0; e < ne; ++e)
      g.edges.push_back({"e" + std::to_string(e), (int)(rng() % nv), (int)(rng() % nv),
                         1 + (int)(rng() % max_w)});
    if (validate(g).ok) return g;
  }
}

}  // namespace fixtures2

namespace fixtures2 {

// Random graph satisfying Condition (LPA) by construction: an arbitrary
// unweighted core plus weighted edges into fresh linear chains.
inline wlpa::WeightedGraph random_lpa_graph(std::mt19937& rng) {
  using namespace wlpa;
  while (true) {
    WeightedGraph g;
    int core = 1 + (int)(rng() % 3);
    for (int v = 0; v < core; ++v) g.vertices.push_back("v" + std::to_string(v));
    int ecount = 0;
    int ne = (int)(rng() % 4);
    for (int e = 0; e < ne; ++e)
      g.edges.push_back({"e" + std::to_string(ecount++), (int)(rng() % core), (int)(rng() % core), 1});
    int chains = (int)(rng() % 3);  // 0..2 weighted pendants
    std::vector<int> sources;
    for (int c = 0; c < chains; ++c) {
      int len = 1 + (int)(rng() % 3);
      int first = (int)g.vertices.size();
      for (int i = 0; i < len; ++i) g.vertices.push_back("c" + std::to_string(c) + std::to_string(i));
      for (int i = 0; i + 1 < len; ++i)
        g.edges.push_back({"e" + std::to_string(ecount++), first + i, first + i + 1, 1});
      int src = (int)(rng() % core);
      bool clash = false;
      for (int s : sources) clash |= s == src;
      if (clash) continue;  // keep LPA1
      sources.push_back(src);
      g.edges.push_back({"e" + std::to_string(ecount++), src, first, 2 + (int)(rng() % 2)});
      // optional extra unweighted feeder into the chain
      if (rng() % 2)
        g.edges.push_back({"e" + std::to_string(ecount++), (int)(rng() % core),
                           first + (int)(rng() % len), 1});
    }
    if (!validate(g).ok) continue;
    return g;
  }
}

}  // namespace fixtures2
