#include "wlpa/transform.hpp"

#include <algorithm>
#include <sstream>

#include "wlpa/classify.hpp"

namespace wlpa {

AlgebraElement GeneratorMap::image_of(const Letter& l) const {
  switch (l.kind) {
    case LetterKind::vertex: return vertex_images[l.index];
    case LetterKind::real: return edge_images.at({l.index, l.tag});
    case LetterKind::ghost: return involution(edge_images.at({l.index, l.tag}));
  }
  throw std::logic_error("unreachable");
}

AlgebraElement GeneratorMap::apply(const AlgebraElement& x, const RewriteContext& target) const {
  AlgebraElement out(target.field_char);
  for (const auto& [w, c] : x.terms()) {
    AlgebraElement img = image_of(w.letters[0]);
    for (size_t i = 1; i < w.letters.size(); ++i) img = multiply(img, image_of(w.letters[i]), target);
    out += img.scaled(c);
  }
  return normal_form(out, target);
}

namespace {

AlgebraElement real_mono(int e, int tag) {
  return AlgebraElement::monomial(Word{{Letter::real_letter(e, tag)}}, Scalar::one(0));
}
AlgebraElement ghost_mono(int e, int tag) {
  return AlgebraElement::monomial(Word{{Letter::ghost_letter(e, tag)}}, Scalar::one(0));
}

void require_lpa(const WeightedGraph& g) {
  ConditionReport rep = check_conditions(g);
  if (!rep.lpa1) throw PreconditionError("Condition (LPA1) fails: " + rep.witness("LPA1"));
  if (!rep.lpa2) throw PreconditionError("Condition (LPA2) fails: " + rep.witness("LPA2"));
  if (!rep.lpa3) throw PreconditionError("Condition (LPA3) fails: " + rep.witness("LPA3"));
  if (!rep.lpa4) throw PreconditionError("Condition (LPA4) fails: " + rep.witness("LPA4"));
}

}  // namespace

Step1Result step1(const WeightedGraph& g) {
  require_lpa(g);

  std::set<int> ranges;
  for (const Edge& e : g.edges)
    if (e.weight > 1) ranges.insert(e.target);
  std::set<int> zone = tree(g, ranges);

  Step1Result out;
  out.graph.vertices = g.vertices;
  // new edge index per (old edge, copy); copies of reversed edges carry __k
  std::map<std::pair<int, int>, int> reversed;
  std::map<int, int> kept;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& ed = g.edges[e];
    if (zone.count(ed.source)) {
      for (int k = 1; k <= ed.weight; ++k) {
        reversed[{(int)e, k}] = (int)out.graph.edges.size();
        out.graph.edges.push_back({ed.id + "__" + std::to_string(k), ed.target, ed.source, 1});
      }
    } else {
      kept[(int)e] = (int)out.graph.edges.size();
      out.graph.edges.push_back(ed);
    }
  }

  for (size_t v = 0; v < g.vertices.size(); ++v)
    out.map.vertex_images.push_back(AlgebraElement::vertex((int)v));
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& ed = g.edges[e];
    for (int t = 1; t <= ed.weight; ++t) {
      if (zone.count(ed.source))
        out.map.edge_images[{(int)e, t}] = ghost_mono(reversed[{(int)e, t}], 1);
      else
        out.map.edge_images[{(int)e, t}] = real_mono(kept[(int)e], t);
    }
  }

  // postcondition guaranteed by Condition (LPA)
  for (const Edge& ed : out.graph.edges)
    if (ed.weight > 1 && !out.graph.is_sink(ed.target))
      throw std::logic_error("step1: range of a weighted edge is not a sink");
  for (size_t v = 0; v < out.graph.vertices.size(); ++v) {
    int emitted = 0, received = 0;
    for (const Edge& ed : out.graph.edges)
      if (ed.weight > 1) {
        if (ed.source == (int)v) ++emitted;
        if (ed.target == (int)v) ++received;
      }
    if (emitted > 1 || received > 1)
      throw std::logic_error("step1: vertex touches two distinct weighted edges");
  }
  return out;
}

Step2Result step2(const WeightedGraph& g) {
  // precondition: ranges of weighted edges are sinks; no vertex emits or
  // receives two distinct weighted edges
  std::map<int, int> heavy_in;  // vertex -> its unique incoming weighted edge
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& ed = g.edges[e];
    if (ed.weight == 1) continue;
    if (!g.is_sink(ed.target))
      throw PreconditionError("step2: range of weighted edge `" + ed.id + "` is not a sink");
    if (heavy_in.count(ed.target))
      throw PreconditionError("step2: vertex `" + g.vertices[ed.target] + "` receives two weighted edges");
    heavy_in[ed.target] = (int)e;
  }
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    int emitted = 0;
    for (const Edge& ed : g.edges)
      if (ed.weight > 1 && ed.source == (int)v) ++emitted;
    if (emitted > 1) throw PreconditionError("step2: vertex `" + g.vertices[v] + "` emits two weighted edges");
  }

  Step2Result out;
  // split vertices; vertex_slot[v][k] = new index of v^(k+1) (singleton when not split)
  std::vector<std::vector<int>> slot(g.vertices.size());
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    auto it = heavy_in.find((int)v);
    if (it == heavy_in.end()) {
      slot[v] = {(int)out.graph.vertices.size()};
      out.graph.vertices.push_back(g.vertices[v]);
    } else {
      int w = g.edges[it->second].weight;
      for (int k = 1; k <= w; ++k) {
        slot[v].push_back((int)out.graph.vertices.size());
        out.graph.vertices.push_back(g.vertices[v] + "__" + std::to_string(k));
      }
    }
  }

  // edge families A (kept), B (unweighted into a split vertex), C/D (the
  // weighted edge's copies)
  std::map<std::pair<int, int>, int> copies;  // (old edge, copy k) -> new edge index
  auto add_edge = [&](const std::string& id, int s, int r, int orig, int k) {
    copies[{orig, k}] = (int)out.graph.edges.size();
    out.graph.edges.push_back({id, s, r, orig, 0, false});
  };
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& ed = g.edges[e];
    if (ed.weight == 1) {
      if (!heavy_in.count(ed.target)) {
        add_edge(ed.id, slot[ed.source][0], slot[ed.target][0], (int)e, 1);
      } else {
        int n = (int)slot[ed.target].size();
        for (int k = 1; k <= n; ++k)
          add_edge(ed.id + "__" + std::to_string(k), slot[ed.source][0], slot[ed.target][k - 1], (int)e, k);
      }
    } else {
      add_edge(ed.id + "__1", slot[ed.source][0], slot[ed.target][0], (int)e, 1);
      for (int k = 2; k <= ed.weight; ++k)
        add_edge(ed.id + "__" + std::to_string(k), slot[ed.target][k - 1], slot[ed.source][0], (int)e, k);
    }
  }

  for (size_t v = 0; v < g.vertices.size(); ++v) {
    AlgebraElement img(0);
    for (int nv : slot[v]) img += AlgebraElement::vertex(nv);
    out.map.vertex_images.push_back(img);
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& ed = g.edges[e];
    if (ed.weight == 1) {
      if (!heavy_in.count(ed.target)) {
        out.map.edge_images[{(int)e, 1}] = real_mono(copies[{(int)e, 1}], 1);
      } else {
        AlgebraElement img(0);
        for (size_t k = 1; k <= slot[ed.target].size(); ++k) img += real_mono(copies[{(int)e, (int)k}], 1);
        out.map.edge_images[{(int)e, 1}] = img;
      }
    } else {
      out.map.edge_images[{(int)e, 1}] = real_mono(copies[{(int)e, 1}], 1);
      for (int k = 2; k <= ed.weight; ++k) out.map.edge_images[{(int)e, k}] = ghost_mono(copies[{(int)e, k}], 1);
    }
  }
  return out;
}

TransformResult to_unweighted(const WeightedGraph& g) {
  Step1Result s1 = step1(g);
  Step2Result s2 = step2(s1.graph);
  RewriteContext target = make_context(s2.graph.to_weighted());

  TransformResult out;
  out.graph = s2.graph;
  for (size_t v = 0; v < g.vertices.size(); ++v)
    out.map.vertex_images.push_back(s2.map.apply(s1.map.vertex_images[v], target));
  for (const auto& [key, img] : s1.map.edge_images) out.map.edge_images[key] = s2.map.apply(img, target);
  return out;
}

HomomorphismCheck verify_homomorphism(const WeightedGraph& src, const UnweightedGraph& dst,
                                      const GeneratorMap& m) {
  RewriteContext target = make_context(dst.to_weighted());
  HomomorphismCheck check;
  // involution compatibility: image(x^*) == image(x)^* holds by construction
  // for edges (ghost images are defined that way); vertices must be
  // involution-fixed
  for (size_t v = 0; v < src.vertices.size(); ++v)
    if (normal_form(m.vertex_images[v] - involution(m.vertex_images[v]), target) != AlgebraElement(0)) {
      check.ok = false;
      check.failing_relation = "involution on vertex " + src.vertices[v];
      return check;
    }
  for (const auto& [name, rel] : defining_relations(src)) {
    if (!m.apply(rel, target).is_zero()) {
      check.ok = false;
      check.failing_relation = name;
      return check;
    }
  }
  return check;
}

bool digraphs_isomorphic(const UnweightedGraph& a, const UnweightedGraph& b) {
  size_t n = a.vertices.size();
  if (n != b.vertices.size() || a.edges.size() != b.edges.size()) return false;

  auto adj = [](const UnweightedGraph& g) {
    std::map<std::pair<int, int>, int> m;
    for (const UnweightedEdge& e : g.edges) ++m[{e.source, e.target}];
    return m;
  };
  std::map<std::pair<int, int>, int> adj_a = adj(a), adj_b = adj(b);

  auto degrees = [&](const UnweightedGraph& g) {
    std::vector<std::pair<int, int>> d(g.vertices.size(), {0, 0});
    for (const UnweightedEdge& e : g.edges) {
      ++d[e.source].first;
      ++d[e.target].second;
    }
    return d;
  };
  std::vector<std::pair<int, int>> deg_a = degrees(a), deg_b = degrees(b);
  {
    auto sa = deg_a, sb = deg_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  auto cnt = [](const std::map<std::pair<int, int>, int>& m, int x, int y) {
    auto it = m.find({x, y});
    return it == m.end() ? 0 : it->second;
  };

  std::vector<int> perm(n, -1);   // a-vertex -> b-vertex
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, size_t v) -> bool {
    if (v == n) return true;
    for (size_t w = 0; w < n; ++w) {
      if (used[w] || deg_a[v] != deg_b[w]) continue;
      bool ok = cnt(adj_a, (int)v, (int)v) == cnt(adj_b, (int)w, (int)w);
      for (size_t u = 0; u < v && ok; ++u) {
        if (cnt(adj_a, (int)v, (int)u) != cnt(adj_b, (int)w, perm[u])) ok = false;
        if (cnt(adj_a, (int)u, (int)v) != cnt(adj_b, perm[u], (int)w)) ok = false;
      }
      if (!ok) continue;
      perm[v] = (int)w;
      used[w] = 1;
      if (self(self, v + 1)) return true;
      used[w] = 0;
      perm[v] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace wlpa
