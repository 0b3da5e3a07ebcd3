#include "wlpa/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace wlpa {

int WeightedGraph::vertex_index(const std::string& id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == id) return (int)i;
  return -1;
}

int WeightedGraph::edge_index(const std::string& id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return (int)i;
  return -1;
}

std::vector<int> WeightedGraph::out_edges(int v) const {
  std::vector<int> out;
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].source == v) out.push_back((int)i);
  return out;
}

std::vector<int> WeightedGraph::in_edges(int v) const {
  std::vector<int> in;
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].target == v) in.push_back((int)i);
  return in;
}

int WeightedGraph::vertex_weight(int v) const {
  int w = 0;
  for (const Edge& e : edges)
    if (e.source == v) w = std::max(w, e.weight);
  return w;
}

int WeightedGraph::max_weight() const {
  int w = 0;
  for (const Edge& e : edges) w = std::max(w, e.weight);
  return w;
}

bool WeightedGraph::all_unweighted() const {
  for (const Edge& e : edges)
    if (e.weight != 1) return false;
  return true;
}

WeightedGraph UnweightedGraph::to_weighted() const {
  WeightedGraph g;
  g.vertices = vertices;
  for (const UnweightedEdge& e : edges)
    g.edges.push_back({e.id, e.source, e.target, 1});
  return g;
}

namespace {

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha((unsigned char)s[0])) return false;
  for (char c : s)
    // underscores are tolerated so that machine-generated ids (vertex/edge
    // splits) survive a round trip through the printer
    if (!std::isalnum((unsigned char)c) && c != '_') return false;
  return true;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace

ParsedGraph parse_graph(const std::string& text) {
  ParsedGraph result;
  WeightedGraph& g = result.graph;
  struct SpecialLine { std::string v, e; int line; };
  std::vector<SpecialLine> special_lines;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> tok = tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "vertex") {
      if (tok.size() != 2) throw ParseError("expected `vertex <id>`", lineno);
      if (!valid_id(tok[1])) throw ParseError("invalid vertex id `" + tok[1] + "`", lineno);
      if (g.vertex_index(tok[1]) >= 0) throw ParseError("duplicate vertex id `" + tok[1] + "`", lineno);
      g.vertices.push_back(tok[1]);
    } else if (tok[0] == "edge") {
      if (tok.size() != 5) throw ParseError("expected `edge <id> <src> <dst> <weight>`", lineno);
      if (!valid_id(tok[1])) throw ParseError("invalid edge id `" + tok[1] + "`", lineno);
      if (g.edge_index(tok[1]) >= 0) throw ParseError("duplicate edge id `" + tok[1] + "`", lineno);
      int s = g.vertex_index(tok[2]);
      if (s < 0) throw ParseError("unknown endpoint `" + tok[2] + "`", lineno);
      int r = g.vertex_index(tok[3]);
      if (r < 0) throw ParseError("unknown endpoint `" + tok[3] + "`", lineno);
      int w;
      try {
        size_t pos = 0;
        w = std::stoi(tok[4], &pos);
        if (pos != tok[4].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("invalid weight `" + tok[4] + "`", lineno);
      }
      if (w < 1) throw ParseError("weight < 1", lineno);
      g.edges.push_back({tok[1], s, r, w});
    } else if (tok[0] == "special") {
      if (tok.size() != 3) throw ParseError("expected `special <vertex> <edge>`", lineno);
      special_lines.push_back({tok[1], tok[2], lineno});
    } else {
      throw ParseError("unknown directive `" + tok[0] + "`", lineno);
    }
  }

  for (const SpecialLine& s : special_lines) {
    int v = g.vertex_index(s.v);
    if (v < 0) throw ParseError("special: unknown vertex `" + s.v + "`", s.line);
    int e = g.edge_index(s.e);
    if (e < 0) throw ParseError("special: unknown edge `" + s.e + "`", s.line);
    if (g.edges[e].source != v)
      throw ParseError("special: edge `" + s.e + "` is not emitted by `" + s.v + "`", s.line);
    if (g.edges[e].weight != g.vertex_weight(v))
      throw ParseError("special: edge `" + s.e + "` does not attain the maximal weight at `" + s.v + "`", s.line);
    result.explicit_specials[v] = e;
  }
  return result;
}

std::string print_graph(const WeightedGraph& g, const std::map<int, int>* specials) {
  std::ostringstream out;
  for (const std::string& v : g.vertices) out << "vertex " << v << "\n";
  for (const Edge& e : g.edges)
    out << "edge " << e.id << " " << g.vertices[e.source] << " " << g.vertices[e.target]
        << " " << e.weight << "\n";
  if (specials)
    for (auto [v, e] : *specials)
      out << "special " << g.vertices[v] << " " << g.edges[e].id << "\n";
  return out.str();
}

ValidationReport validate(const WeightedGraph& g) {
  ValidationReport rep;
  if (g.vertices.empty()) {
    rep.ok = false;
    rep.violations.push_back("empty: the vertex set is empty");
    return rep;
  }
  // connectedness in the double graph = connectivity ignoring orientation
  std::vector<int> comp(g.vertices.size(), -1);
  int ncomp = 0;
  for (size_t s = 0; s < g.vertices.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::queue<int> q;
    q.push((int)s);
    comp[s] = ncomp;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& e : g.edges) {
        int other = -1;
        if (e.source == v) other = e.target;
        else if (e.target == v) other = e.source;
        if (other >= 0 && comp[other] < 0) {
          comp[other] = ncomp;
          q.push(other);
        }
      }
    }
    ++ncomp;
  }
  if (ncomp > 1) {
    rep.ok = false;
    std::ostringstream msg;
    msg << "not connected: components";
    for (int c = 0; c < ncomp; ++c) {
      msg << " {";
      bool first = true;
      for (size_t v = 0; v < g.vertices.size(); ++v)
        if (comp[v] == c) {
          if (!first) msg << ",";
          msg << g.vertices[v];
          first = false;
        }
      msg << "}";
    }
    rep.violations.push_back(msg.str());
  }
  return rep;
}

UnweightedGraph hat_graph(const WeightedGraph& g) {
  UnweightedGraph h;
  h.vertices = g.vertices;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    for (int t = 1; t <= e.weight; ++t)
      h.edges.push_back({e.id + "_" + std::to_string(t), e.source, e.target, (int)i, t, false});
  }
  return h;
}

UnweightedGraph double_graph(const UnweightedGraph& g) {
  UnweightedGraph d = g;
  for (const UnweightedEdge& e : g.edges)
    d.edges.push_back({e.id + "^*", e.target, e.source, e.orig_edge, e.tag, true});
  return d;
}

std::set<int> tree(const WeightedGraph& g, const std::set<int>& start) {
  std::set<int> seen = start;
  std::queue<int> q;
  for (int v : start) q.push(v);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Edge& e : g.edges)
      if (e.source == v && !seen.count(e.target)) {
        seen.insert(e.target);
        q.push(e.target);
      }
  }
  return seen;
}

SpecialEdges special_edges(const WeightedGraph& g, const std::map<int, int>& explicit_map) {
  SpecialEdges sp(g.vertices.size(), -1);
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    int w = g.vertex_weight((int)v);
    if (w == 0) continue;
    for (size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].source == (int)v && g.edges[e].weight == w) {
        sp[v] = (int)e;
        break;
      }
  }
  for (auto [v, e] : explicit_map) {
    if (v < 0 || v >= (int)g.vertices.size()) throw PreconditionError("special: vertex out of range");
    if (e < 0 || e >= (int)g.edges.size()) throw PreconditionError("special: edge out of range");
    if (g.edges[e].source != v)
      throw PreconditionError("special: edge `" + g.edges[e].id + "` is not emitted by `" + g.vertices[v] + "`");
    if (g.edges[e].weight != g.vertex_weight(v))
      throw PreconditionError("special: edge `" + g.edges[e].id + "` does not attain the maximal weight at `" +
                              g.vertices[v] + "`");
    sp[v] = e;
  }
  return sp;
}

std::vector<SpecialEdges> all_special_assignments(const WeightedGraph& g) {
  std::vector<std::vector<int>> choices(g.vertices.size());
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    int w = g.vertex_weight((int)v);
    if (w == 0) continue;
    for (size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].source == (int)v && g.edges[e].weight == w) choices[v].push_back((int)e);
  }
  std::vector<SpecialEdges> out;
  SpecialEdges cur(g.vertices.size(), -1);
  auto rec = [&](auto&& self, size_t v) -> void {
    if (v == g.vertices.size()) {
      out.push_back(cur);
      return;
    }
    if (choices[v].empty()) {
      self(self, v + 1);
      return;
    }
    for (int e : choices[v]) {
      cur[v] = e;
      self(self, v + 1);
    }
    cur[v] = -1;
  };
  rec(rec, 0);
  return out;
}

WeightedGraph rose(int m, int n) {
  if (m < 1 || n < 1) throw PreconditionError("rose: m and n must be >= 1");
  WeightedGraph g;
  g.vertices.push_back("v");
  for (int i = 1; i <= n; ++i) g.edges.push_back({"e" + std::to_string(i), 0, 0, m});
  return g;
}

}  // namespace wlpa
