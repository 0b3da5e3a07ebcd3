#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlpa/element.hpp"

namespace wlpa {

// Labeled graph (F, phi) over the hat graph of a weighted base graph.
// Vertices are labeled by base vertices, edges by hat-graph letters.
struct RepGraph {
  WeightedGraph base;

  std::vector<std::string> vertex_ids;
  std::vector<int> vertex_label;  // base vertex per F-vertex

  struct REdge {
    std::string id;
    int source = -1;
    int target = -1;
    int edge = -1;  // base edge (the structure edge)
    int tag = 0;
  };
  std::vector<REdge> edges;

  int vertex_index(const std::string& id) const;
};

// File format: `rvertex <id> <base-vertex>`, `redge <id> <src> <dst> <edge>_<tag>`.
RepGraph parse_repgraph(const std::string& text, const WeightedGraph& base);
std::string print_repgraph(const RepGraph& r);

struct RepReport {
  bool ok = true;
  std::vector<std::string> violations;
};

RepReport validate_repgraph(const RepGraph& r);

// The maximal admissible relation ~ (labeled-path-language equality), as a
// block id per vertex; blocks are numbered deterministically.
std::vector<int> vertex_equivalence(const RepGraph& r);

bool is_admissible(const RepGraph& r, const std::vector<int>& partition);

RepGraph quotient(const RepGraph& r, const std::vector<int>& partition);

bool is_irreducible(const RepGraph& r);

RepGraph irreducible_quotient(const RepGraph& r);

// Fragment of the universal representation graph: vertices indexed by the
// reduced labeled paths from u of length <= depth. Leaf vertices (at the
// depth horizon) may violate conditions (i)/(ii) and are flagged.
struct UnfoldResult {
  RepGraph graph;
  std::vector<char> truncated;  // per vertex
};

UnfoldResult unfold_universal(const RepGraph& r, int u, int depth);

// Right action of an algebra element on a vertex of the module basis F^0.
std::map<int, Scalar> act(const RepGraph& r, int u, const AlgebraElement& a, const RewriteContext& ctx);

bool is_graded_module(const RepGraph& r);

bool simplicity_verdict(const RepGraph& r);

// Isomorphism of representation graphs (labels respected, ids ignored).
bool repgraphs_isomorphic(const RepGraph& a, const RepGraph& b);

}  // namespace wlpa
