#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace wlpa {

// Thrown on malformed graph/element/representation-graph input.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line = 0, int col = 0)
      : std::runtime_error(what), line(line), col(col) {}
  int line;
  int col;
};

// Thrown when an operation's structural precondition fails (e.g. a transform
// on a graph violating Condition (LPA), or corner data on a graph with sinks).
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct Edge {
  std::string id;
  int source = -1;
  int target = -1;
  int weight = 1;

  bool operator==(const Edge&) const = default;
};

// Finite directed graph with per-edge positive integer weights. Vertex and
// edge order is declaration order; every "first edge" tie-break below uses it.
struct WeightedGraph {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;
  std::vector<int> out_edges(int v) const;
  std::vector<int> in_edges(int v) const;
  bool is_sink(int v) const { return out_edges(v).empty(); }
  bool is_regular(int v) const { return !is_sink(v); }
  // w(v): max weight over s^{-1}(v), 0 for sinks.
  int vertex_weight(int v) const;
  int max_weight() const;
  bool all_unweighted() const;

  bool operator==(const WeightedGraph&) const = default;
};

struct UnweightedEdge {
  std::string id;
  int source = -1;
  int target = -1;
  // provenance when produced by hat_graph/double_graph; -1 otherwise
  int orig_edge = -1;
  int tag = 0;
  bool ghost = false;

  bool operator==(const UnweightedEdge&) const = default;
};

struct UnweightedGraph {
  std::vector<std::string> vertices;
  std::vector<UnweightedEdge> edges;

  WeightedGraph to_weighted() const;

  bool operator==(const UnweightedGraph&) const = default;
};

struct ParsedGraph {
  WeightedGraph graph;
  std::map<int, int> explicit_specials;  // vertex index -> edge index, from `special` lines
};

// Graph file format (line oriented): `# comment`, `vertex <id>`,
// `edge <id> <src> <dst> <weight>`, optional `special <vertex> <edge>`.
ParsedGraph parse_graph(const std::string& text);
std::string print_graph(const WeightedGraph& g, const std::map<int, int>* specials = nullptr);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Reports emptiness and disconnectedness (connectedness is tested in the
// double graph, i.e. ignoring edge orientation); all other well-formedness is
// enforced at parse time.
ValidationReport validate(const WeightedGraph& g);

// Unweighted graph associated to (E,w): one edge e_i per e and 1 <= i <= w(e).
UnweightedGraph hat_graph(const WeightedGraph& g);

// Adds a reversed ghost edge per edge.
UnweightedGraph double_graph(const UnweightedGraph& g);

// All vertices reachable from X by directed paths, including X itself.
std::set<int> tree(const WeightedGraph& g, const std::set<int>& start);

// Per-vertex chosen special edge (index into g.edges), -1 for sinks.
using SpecialEdges = std::vector<int>;

// Deterministic policy: first declared edge of maximal weight per regular
// vertex; entries of `explicit_map` override it (they must lie in s^{-1}(v)
// and attain w(v)).
SpecialEdges special_edges(const WeightedGraph& g, const std::map<int, int>& explicit_map = {});

// All valid special-edge assignments (used by exhaustive invariance checks).
std::vector<SpecialEdges> all_special_assignments(const WeightedGraph& g);

// One vertex, n loops of weight m.
WeightedGraph rose(int m, int n);

}  // namespace wlpa
