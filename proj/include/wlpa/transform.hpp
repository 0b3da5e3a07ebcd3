#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wlpa/element.hpp"

namespace wlpa {

// Images of the source generators inside the algebra of a target graph.
// Ghost images are the involutions of the real images.
struct GeneratorMap {
  std::vector<AlgebraElement> vertex_images;                 // per source vertex
  std::map<std::pair<int, int>, AlgebraElement> edge_images;  // (edge, tag) -> image of e_tag

  AlgebraElement image_of(const Letter& l) const;
  // homomorphic extension, normalized over the target context
  AlgebraElement apply(const AlgebraElement& x, const RewriteContext& target) const;
};

struct Step1Result {
  WeightedGraph graph;
  GeneratorMap map;
};

struct Step2Result {
  UnweightedGraph graph;
  GeneratorMap map;
};

// Reverses every edge emitted inside Z = T(r(E^1_w)) into w(e) unweighted
// copies. Requires Condition (LPA); afterwards ranges of weighted edges are
// sinks and no vertex emits or receives two distinct weighted edges.
Step1Result step1(const WeightedGraph& g);

// Splits each range of a weighted edge into w(g^v) vertices, producing an
// unweighted graph. Requires the step1 postcondition shape.
Step2Result step2(const WeightedGraph& g);

// step2 after step1, with the composed generator map.
struct TransformResult {
  UnweightedGraph graph;
  GeneratorMap map;
};
TransformResult to_unweighted(const WeightedGraph& g);

struct HomomorphismCheck {
  bool ok = true;
  std::string failing_relation;
};

// Checks that the images of all defining relations of L(src) vanish in the
// algebra of dst and that the map commutes with the involution.
HomomorphismCheck verify_homomorphism(const WeightedGraph& src, const UnweightedGraph& dst,
                                      const GeneratorMap& m);

// Plain digraph isomorphism for small graphs (test support for comparing
// transform outputs against expected shapes up to id renaming).
bool digraphs_isomorphic(const UnweightedGraph& a, const UnweightedGraph& b);

}  // namespace wlpa
