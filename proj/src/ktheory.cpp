#include "wlpa/ktheory.hpp"

#include <algorithm>
#include <sstream>

namespace wlpa {

namespace {

// edges of s^{-1}(v) ordered by ascending weight, then declaration order
std::vector<int> sorted_out_edges(const WeightedGraph& g, int v) {
  std::vector<int> out = g.out_edges(v);
  std::stable_sort(out.begin(), out.end(),
                   [&](int a, int b) { return g.edges[a].weight < g.edges[b].weight; });
  return out;
}

std::vector<int> distinct_weights(const WeightedGraph& g, int v) {
  std::vector<int> ws;
  for (int e : g.out_edges(v)) ws.push_back(g.edges[e].weight);
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

}  // namespace

MonoidPresentation monoid_presentation(const WeightedGraph& g) {
  MonoidPresentation pres;
  std::map<std::pair<int, int>, int> q_index;  // (vertex, level) -> generator index
  for (size_t v = 0; v < g.vertices.size(); ++v)
    pres.generators.push_back({false, (int)v, 0, g.vertices[v]});
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    int kv = (int)distinct_weights(g, (int)v).size();
    for (int l = 1; l <= kv - 1; ++l) {
      q_index[{(int)v, l}] = (int)pres.generators.size();
      pres.generators.push_back({true, (int)v, l, "q" + std::to_string(l) + "_" + g.vertices[v]});
    }
  }
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    std::vector<int> ws = distinct_weights(g, (int)v);
    int kv = (int)ws.size();
    for (int i = 1; i <= kv; ++i) {
      MonoidRelation rel;
      long long wi = ws[i - 1];
      long long wprev = i >= 2 ? ws[i - 2] : 0;
      if (i >= 2) rel.lhs[q_index[{(int)v, i - 1}]] += 1;
      if (wi - wprev > 0) rel.lhs[(int)v] += wi - wprev;
      if (i <= kv - 1) rel.rhs[q_index[{(int)v, i}]] += 1;
      for (int e : g.out_edges((int)v))
        if (g.edges[e].weight == wi) rel.rhs[g.edges[e].target] += 1;
      pres.relations.push_back(rel);
    }
  }
  return pres;
}

bool v_monoid_infinite_hint(const WeightedGraph& g) {
  for (size_t v = 0; v < g.vertices.size(); ++v)
    if (distinct_weights(g, (int)v).size() >= 2) return true;
  return false;
}

std::vector<ThetaFamily> theta_idempotents(const WeightedGraph& g, const RewriteContext& ctx) {
  std::vector<ThetaFamily> out;
  const Scalar one = Scalar::one(ctx.field_char);
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    std::vector<int> edges = sorted_out_edges(g, (int)v);
    std::vector<int> ws = distinct_weights(g, (int)v);
    int kv = (int)ws.size();
    if (kv < 2) continue;
    int nv = (int)edges.size();
    for (int l = 1; l <= kv - 1; ++l) {
      // X_{v,l}: rows 1..w_l, columns with edge weight > w_l
      int rows = ws[l - 1];
      std::vector<int> cols;
      for (int j = 0; j < nv; ++j)
        if (g.edges[edges[j]].weight > ws[l - 1]) cols.push_back(edges[j]);
      ThetaFamily fam;
      fam.vertex = (int)v;
      fam.level = l;
      fam.matrix.assign(rows, std::vector<AlgebraElement>(rows, AlgebraElement(ctx.field_char)));
      for (int a = 1; a <= rows; ++a)
        for (int b = 1; b <= rows; ++b) {
          AlgebraElement sum(ctx.field_char);
          for (int e : cols) {
            if (g.edges[e].weight < a || g.edges[e].weight < b) continue;
            Word w;
            w.letters = {Letter::real_letter(e, a), Letter::ghost_letter(e, b)};
            sum.add_term(w, one);
          }
          fam.matrix[a - 1][b - 1] = sum;
        }
      // verify eps^2 == eps entrywise
      fam.verified = true;
      for (int a = 0; a < rows && fam.verified; ++a)
        for (int b = 0; b < rows && fam.verified; ++b) {
          AlgebraElement entry(ctx.field_char);
          for (int c = 0; c < rows; ++c) entry += multiply(fam.matrix[a][c], fam.matrix[c][b], ctx);
          if (normal_form(entry - fam.matrix[a][b], ctx) != AlgebraElement(ctx.field_char)) fam.verified = false;
        }
      out.push_back(std::move(fam));
    }
  }
  return out;
}

std::vector<CornerData> corner_data(const WeightedGraph& g, const RewriteContext& ctx) {
  for (size_t v = 0; v < g.vertices.size(); ++v)
    if (g.is_sink((int)v))
      throw PreconditionError("corner_data: vertex `" + g.vertices[v] + "` is a sink");
  const Scalar one = Scalar::one(ctx.field_char);
  AlgebraElement unit(ctx.field_char);
  for (size_t v = 0; v < g.vertices.size(); ++v) unit += AlgebraElement::vertex((int)v, ctx.field_char);

  std::vector<int> order;
  for (size_t v = 0; v < g.vertices.size(); ++v)
    for (int e : g.out_edges((int)v)) order.push_back(e);

  std::vector<CornerData> out;
  for (int tag = 1; tag <= g.max_weight(); ++tag) {
    CornerData cd;
    cd.tag = tag;
    AlgebraElement prod(ctx.field_char);
    for (int e : order) {
      AlgebraElement re(ctx.field_char), gh(ctx.field_char);
      if (g.edges[e].weight >= tag) {
        re.add_term(Word{{Letter::real_letter(e, tag)}}, one);
        gh.add_term(Word{{Letter::ghost_letter(e, tag)}}, one);
        Word w;
        w.letters = {Letter::real_letter(e, tag), Letter::ghost_letter(e, tag)};
        prod.add_term(w, one);
      }
      cd.row.push_back(re);
      cd.column.push_back(gh);
    }
    cd.verified = normal_form(prod - unit, ctx).is_zero();
    out.push_back(std::move(cd));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

void swap_rows(IntMatrix& m, size_t a, size_t b) { std::swap(m[a], m[b]); }
void swap_cols(IntMatrix& m, size_t a, size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}
void add_row(IntMatrix& m, size_t dst, size_t src, const BigInt& k) {
  for (size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += k * m[src][j];
}
void add_col(IntMatrix& m, size_t dst, size_t src, const BigInt& k) {
  for (auto& row : m) row[dst] += k * row[src];
}
void negate_row(IntMatrix& m, size_t r) {
  for (auto& x : m[r]) x = -x;
}

IntMatrix identity(size_t n) {
  IntMatrix m(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& input) {
  SnfResult r;
  r.d = input;
  size_t rows = input.size();
  size_t cols = rows ? input[0].size() : 0;
  r.u = identity(rows);
  r.v = identity(cols);
  IntMatrix& d = r.d;

  size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: minimal nonzero absolute value in the remaining block
    size_t pi = t, pj = t;
    BigInt best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (d[i][j] == 0) continue;
        BigInt a = abs(d[i][j]);
        if (best == 0 || a < best) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    if (pi != t) { swap_rows(d, pi, t); swap_rows(r.u, pi, t); }
    if (pj != t) { swap_cols(d, pj, t); swap_cols(r.v, pj, t); }

    bool dirty = false;
    for (size_t i = t + 1; i < rows; ++i) {
      if (d[i][t] == 0) continue;
      BigInt q = d[i][t] / d[t][t];
      add_row(d, i, t, -q);
      add_row(r.u, i, t, -q);
      if (d[i][t] != 0) dirty = true;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      if (d[t][j] == 0) continue;
      BigInt q = d[t][j] / d[t][t];
      add_col(d, j, t, -q);
      add_col(r.v, j, t, -q);
      if (d[t][j] != 0) dirty = true;
    }
    if (dirty) continue;  // smaller pivot now exists

    // divisibility: the pivot must divide every remaining entry
    bool fixed = true;
    for (size_t i = t + 1; i < rows && fixed; ++i)
      for (size_t j = t + 1; j < cols && fixed; ++j)
        if (d[i][j] % d[t][t] != 0) {
          add_row(d, t, i, 1);
          add_row(r.u, t, i, 1);
          fixed = false;
        }
    if (!fixed) continue;

    if (d[t][t] < 0) { negate_row(d, t); negate_row(r.u, t); }
    ++t;
  }
  return r;
}

AbelianGroupReport cokernel(const IntMatrix& m, size_t rows) {
  AbelianGroupReport rep;
  if (m.empty() || m[0].empty()) {
    rep.rank = (long long)rows;
    return rep;
  }
  SnfResult snf = smith_normal_form(m);
  size_t diag = std::min(m.size(), m[0].size());
  size_t nonzero = 0;
  for (size_t i = 0; i < diag; ++i)
    if (snf.d[i][i] != 0) {
      ++nonzero;
      if (snf.d[i][i] >= 2) rep.torsion.push_back(snf.d[i][i]);
    }
  rep.rank = (long long)rows - (long long)nonzero;
  return rep;
}

IntMatrix k0_matrix(const WeightedGraph& g) {
  size_t n = g.vertices.size();
  IntMatrix m(n, std::vector<BigInt>(n, 0));
  for (const Edge& e : g.edges) m[e.target][e.source] += 1;  // N^t
  for (size_t v = 0; v < n; ++v) m[v][v] -= g.vertex_weight((int)v);
  return m;
}

AbelianGroupReport k0(const WeightedGraph& g) {
  return cokernel(k0_matrix(g), g.vertices.size());
}

// ---------------------------------------------------------------------------
// weight maps and graded presentations

WeightMap standard_weight_map(const WeightedGraph& g) {
  WeightMap w;
  w.rank = g.max_weight();
  for (size_t e = 0; e < g.edges.size(); ++e)
    for (int t = 1; t <= g.edges[e].weight; ++t) {
      std::vector<long long> alpha(w.rank, 0);
      alpha[t - 1] = 1;
      w.values[{(int)e, t}] = alpha;
    }
  return w;
}

namespace {

std::vector<long long> vec_add(std::vector<long long> a, const std::vector<long long>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
std::vector<long long> vec_sub(std::vector<long long> a, const std::vector<long long>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace

WeightMapCheck validate_weight_map(const WeightedGraph& g, const SpecialEdges& specials, const WeightMap& w) {
  WeightMapCheck check;
  for (size_t e = 0; e < g.edges.size(); ++e)
    for (int t = 1; t <= g.edges[e].weight; ++t) {
      auto it = w.values.find({(int)e, t});
      if (it == w.values.end() || (int)it->second.size() != w.rank) {
        check.ok = false;
        check.edge = (int)e;
        check.tag = t;
        return check;
      }
    }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    int sp = specials[g.edges[e].source];
    for (int t = 1; t <= g.edges[e].weight; ++t) {
      // W(e_i) = W(e^v_i) - W(e^v_1) + W(e_1) for v = s(e)
      std::vector<long long> rhs = vec_add(vec_sub(w.at(sp, t), w.at(sp, 1)), w.at((int)e, 1));
      if (w.at((int)e, t) != rhs) {
        check.ok = false;
        check.edge = (int)e;
        check.tag = t;
        return check;
      }
    }
  }
  return check;
}

bool Window::contains(const std::vector<long long>& gamma) const {
  if (gamma.size() != box.size()) return false;
  for (size_t i = 0; i < box.size(); ++i)
    if (gamma[i] < box[i].first || gamma[i] > box[i].second) return false;
  return true;
}

std::vector<std::vector<long long>> Window::points() const {
  std::vector<std::vector<long long>> out;
  for (const auto& [lo, hi] : box)
    if (lo > hi) return out;
  std::vector<long long> cur(box.size());
  auto rec = [&](auto&& self, size_t dim) -> void {
    if (dim == box.size()) {
      out.push_back(cur);
      return;
    }
    for (long long x = box[dim].first; x <= box[dim].second; ++x) {
      cur[dim] = x;
      self(self, dim + 1);
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

GradedPresentation graded_presentation_impl(const WeightedGraph& g, const SpecialEdges& specials,
                                            const WeightMap& w, const Window& window, bool keep_interstices) {
  WeightMapCheck check = validate_weight_map(g, specials, w);
  if (!check.ok)
    throw PreconditionError("graded presentation: weight map is not admissible (edge `" +
                            (check.edge >= 0 ? g.edges[check.edge].id : std::string("?")) + "`, tag " +
                            std::to_string(check.tag) + ")");
  if ((int)window.box.size() != w.rank)
    throw PreconditionError("graded presentation: window dimension does not match the weight map rank");

  GradedPresentation pres;
  for (const std::vector<long long>& gamma : window.points()) {
    for (size_t v = 0; v < g.vertices.size(); ++v) {
      std::vector<int> edges = sorted_out_edges(g, (int)v);
      std::vector<int> ws = distinct_weights(g, (int)v);
      int kv = (int)ws.size();
      if (kv == 0) continue;
      int sp = specials[v];
      if (keep_interstices) {
        for (int l = 1; l <= kv; ++l) {
          GradedRelation rel;
          rel.base = gamma;
          rel.vertex = (int)v;
          rel.level = l;
          int wl = ws[l - 1];
          int wprev = l >= 2 ? ws[l - 2] : 0;
          if (l >= 2) rel.lhs[GradedGenerator{true, (int)v, l - 1, gamma}] += 1;
          for (int i = wprev + 1; i <= wl; ++i)
            rel.lhs[GradedGenerator{false, (int)v, 0, vec_add(vec_sub(w.at(sp, i), w.at(sp, 1)), gamma)}] += 1;
          if (l <= kv - 1) rel.rhs[GradedGenerator{true, (int)v, l, gamma}] += 1;
          int nprev = 0, nl = 0;
          for (int e : edges) {
            if (g.edges[e].weight <= wprev) ++nprev;
            if (g.edges[e].weight <= wl) ++nl;
          }
          for (int j = nprev; j < nl; ++j) {
            int e = edges[j];
            rel.rhs[GradedGenerator{false, g.edges[e].target, 0, vec_sub(gamma, w.at(e, 1))}] += 1;
          }
          for (const auto& [gen, c] : rel.lhs)
            if (!gen.is_interstice && !window.contains(gen.gamma)) rel.boundary = true;
          for (const auto& [gen, c] : rel.rhs)
            if (!gen.is_interstice && !window.contains(gen.gamma)) rel.boundary = true;
          pres.relations.push_back(std::move(rel));
        }
      } else {
        GradedRelation rel;
        rel.base = gamma;
        rel.vertex = (int)v;
        rel.level = 0;
        int wv = g.vertex_weight((int)v);
        for (int i = 1; i <= wv; ++i)
          rel.lhs[GradedGenerator{false, (int)v, 0, vec_add(vec_sub(w.at(sp, i), w.at(sp, 1)), gamma)}] += 1;
        for (int e : edges)
          rel.rhs[GradedGenerator{false, g.edges[e].target, 0, vec_sub(gamma, w.at(e, 1))}] += 1;
        for (const auto& [gen, c] : rel.lhs)
          if (!window.contains(gen.gamma)) rel.boundary = true;
        for (const auto& [gen, c] : rel.rhs)
          if (!window.contains(gen.gamma)) rel.boundary = true;
        pres.relations.push_back(std::move(rel));
      }
    }
  }
  return pres;
}

}  // namespace

GradedPresentation graded_monoid_presentation(const WeightedGraph& g, const SpecialEdges& specials,
                                              const WeightMap& w, const Window& window) {
  return graded_presentation_impl(g, specials, w, window, true);
}

GradedPresentation graded_k0_presentation(const WeightedGraph& g, const SpecialEdges& specials,
                                          const WeightMap& w, const Window& window) {
  return graded_presentation_impl(g, specials, w, window, false);
}

std::string graded_generator_str(const GradedGenerator& gen, const WeightedGraph& g) {
  std::ostringstream out;
  if (gen.is_interstice) out << "I" << gen.level << "_";
  out << g.vertices[gen.vertex] << "^(";
  for (size_t i = 0; i < gen.gamma.size(); ++i) {
    if (i) out << ",";
    out << gen.gamma[i];
  }
  out << ")";
  return out.str();
}

}  // namespace wlpa
