#include "wlpa/element.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wlpa {

int letter_source(const Letter& l, const WeightedGraph& g) {
  switch (l.kind) {
    case LetterKind::vertex: return l.index;
    case LetterKind::real: return g.edges[l.index].source;
    case LetterKind::ghost: return g.edges[l.index].target;
  }
  return -1;
}

int letter_range(const Letter& l, const WeightedGraph& g) {
  switch (l.kind) {
    case LetterKind::vertex: return l.index;
    case LetterKind::real: return g.edges[l.index].target;
    case LetterKind::ghost: return g.edges[l.index].source;
  }
  return -1;
}

Letter letter_star(const Letter& l) {
  switch (l.kind) {
    case LetterKind::real: return Letter::ghost_letter(l.index, l.tag);
    case LetterKind::ghost: return Letter::real_letter(l.index, l.tag);
    default: return l;
  }
}

bool is_d_path(const Word& w, const WeightedGraph& g) {
  if (w.letters.empty()) return false;
  if (w.is_single_vertex()) return true;
  for (const Letter& l : w.letters)
    if (l.kind == LetterKind::vertex) return false;
  for (size_t i = 0; i + 1 < w.letters.size(); ++i)
    if (letter_range(w.letters[i], g) != letter_source(w.letters[i + 1], g)) return false;
  return true;
}

DegreeVector degree(const Word& w) {
  DegreeVector d;
  for (const Letter& l : w.letters) {
    if (l.kind == LetterKind::real) d.add(l.tag, 1);
    else if (l.kind == LetterKind::ghost) d.add(l.tag, -1);
  }
  return d;
}

std::string degree_str(const DegreeVector& d, int lambda) {
  std::string s = "(";
  for (int i = 1; i <= lambda; ++i) {
    if (i > 1) s += ",";
    auto it = d.entries.find(i);
    s += std::to_string(it == d.entries.end() ? 0 : it->second);
  }
  return s + ")";
}

void AlgebraElement::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
  AlgebraElement out(field_);
  if (c.is_zero()) return out;
  for (const auto& [w, k] : terms_) out.terms_.emplace(w, k * c);
  return out;
}

AlgebraElement AlgebraElement::monomial(const Word& w, const Scalar& c) {
  AlgebraElement out(c.field());
  out.add_term(w, c);
  return out;
}

AlgebraElement AlgebraElement::vertex(int v, int field) {
  return monomial(Word{{Letter::vertex_letter(v)}}, Scalar::one(field));
}

bool RewriteContext::forbidden(const Letter& a, const Letter& b) const {
  if (a.kind == LetterKind::real && b.kind == LetterKind::ghost) {
    // e^v_i (e^v_j)^*: both letters of the special edge at its source
    if (a.index != b.index) return false;
    int v = graph.edges[a.index].source;
    return specials[v] == a.index;
  }
  if (a.kind == LetterKind::ghost && b.kind == LetterKind::real) {
    // e_1^* f_1 with s(e) = s(f)
    return a.tag == 1 && b.tag == 1 && graph.edges[a.index].source == graph.edges[b.index].source;
  }
  return false;
}

bool RewriteContext::transition(const Letter& a, const Letter& b) const {
  return letter_range(a, graph) == letter_source(b, graph) && !forbidden(a, b);
}

RewriteContext make_context(const WeightedGraph& g, const SpecialEdges& specials, int field_char,
                            long long step_budget) {
  return RewriteContext{g, specials, field_char, step_budget};
}

RewriteContext make_context(const WeightedGraph& g) { return make_context(g, special_edges(g)); }

namespace {

struct Site {
  size_t pos;      // window starts at letters[pos]
  enum Kind { kVertexPair, kVertexEdge, kEdgeVertex, kZero, kSpecialPair, kGhostReal } kind;
};

// Finds all reducible sites of a word; empty result means the word is in
// normal form. Words of size 1 are always normal.
std::vector<Site> reducible_sites(const Word& w, const RewriteContext& ctx, bool first_only) {
  std::vector<Site> sites;
  const auto& g = ctx.graph;
  for (size_t i = 0; i + 1 < w.letters.size(); ++i) {
    const Letter& a = w.letters[i];
    const Letter& b = w.letters[i + 1];
    Site s{i, Site::kZero};
    if (a.kind == LetterKind::vertex && b.kind == LetterKind::vertex) {
      s.kind = Site::kVertexPair;
    } else if (a.kind == LetterKind::vertex) {
      s.kind = Site::kVertexEdge;
    } else if (b.kind == LetterKind::vertex) {
      s.kind = Site::kEdgeVertex;
    } else if (letter_range(a, g) != letter_source(b, g)) {
      s.kind = Site::kZero;
    } else if (a.kind == LetterKind::real && b.kind == LetterKind::ghost && ctx.forbidden(a, b)) {
      s.kind = Site::kSpecialPair;
    } else if (a.kind == LetterKind::ghost && b.kind == LetterKind::real && ctx.forbidden(a, b)) {
      s.kind = Site::kGhostReal;
    } else {
      continue;
    }
    sites.push_back(s);
    if (first_only) return sites;
  }
  return sites;
}

// Replacement of the 2-letter window by a (possibly empty) list of words with
// coefficients. A bare vertex produced mid-word is absorbed into the
// neighbouring letters (their composability is implied by the window's).
void expand_site(const Word& w, const Site& site, const RewriteContext& ctx,
                 std::vector<std::pair<Word, Scalar>>& out) {
  const auto& g = ctx.graph;
  const Letter a = w.letters[site.pos];
  const Letter b = w.letters[site.pos + 1];
  std::vector<Letter> prefix(w.letters.begin(), w.letters.begin() + site.pos);
  std::vector<Letter> suffix(w.letters.begin() + site.pos + 2, w.letters.end());
  const Scalar one = Scalar::one(ctx.field_char);

  auto emit = [&](std::vector<Letter> mid, const Scalar& c) {
    Word nw;
    nw.letters = prefix;
    nw.letters.insert(nw.letters.end(), mid.begin(), mid.end());
    nw.letters.insert(nw.letters.end(), suffix.begin(), suffix.end());
    if (nw.letters.empty()) return;  // annihilated entirely (cannot happen for valid input)
    out.emplace_back(std::move(nw), c);
  };
  // delta terms produce a bare vertex; emitted literally, the vertex rules
  // fold or kill it against the neighbours
  auto emit_vertex = [&](int v, const Scalar& c) { emit({Letter::vertex_letter(v)}, c); };

  switch (site.kind) {
    case Site::kVertexPair:
      if (a.index == b.index) emit({a}, one);
      break;
    case Site::kVertexEdge:
      if (a.index == letter_source(b, g)) emit({b}, one);
      break;
    case Site::kEdgeVertex:
      if (letter_range(a, g) == b.index) emit({a}, one);
      break;
    case Site::kZero:
      break;
    case Site::kSpecialPair: {
      // e^v_i (e^v_j)^* = delta_ij v - sum over non-special e in s^{-1}(v)
      int v = g.edges[a.index].source;
      if (a.tag == b.tag) emit_vertex(v, one);
      for (size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].source != v || (int)e == a.index) continue;
        if (g.edges[e].weight < a.tag || g.edges[e].weight < b.tag) continue;
        emit({Letter::real_letter((int)e, a.tag), Letter::ghost_letter((int)e, b.tag)}, -one);
      }
      break;
    }
    case Site::kGhostReal: {
      // e_1^* f_1 = delta_ef r(e) - sum over tags 2..w(v)
      int v = g.edges[a.index].source;
      if (a.index == b.index) emit_vertex(g.edges[a.index].target, one);
      int wv = g.vertex_weight(v);
      for (int i = 2; i <= wv; ++i) {
        if (g.edges[a.index].weight < i || g.edges[b.index].weight < i) continue;
        emit({Letter::ghost_letter(a.index, i), Letter::real_letter(b.index, i)}, -one);
      }
      break;
    }
  }
}

AlgebraElement reduce(const AlgebraElement& x, const RewriteContext& ctx, std::mt19937* rng) {
  AlgebraElement result(ctx.field_char);
  std::map<Word, Scalar, WordLess> pending(x.terms().begin(), x.terms().end());
  long long steps = 0;
  while (!pending.empty()) {
    Word w;
    Scalar c = Scalar::zero(ctx.field_char);
    if (!rng) {
      auto it = std::prev(pending.end());
      w = it->first;
      c = it->second;
      pending.erase(it);
    } else {
      std::uniform_int_distribution<size_t> pick(0, pending.size() - 1);
      auto it = std::next(pending.begin(), (long)pick(*rng));
      w = it->first;
      c = it->second;
      pending.erase(it);
    }
    std::vector<Site> sites = reducible_sites(w, ctx, /*first_only=*/rng == nullptr);
    if (sites.empty()) {
      result.add_term(w, c);
      continue;
    }
    const Site& site = rng ? sites[std::uniform_int_distribution<size_t>(0, sites.size() - 1)(*rng)] : sites[0];
    if (++steps > ctx.step_budget) throw StepBudgetExceeded();
    std::vector<std::pair<Word, Scalar>> repl;
    expand_site(w, site, ctx, repl);
    for (auto& [nw, k] : repl) {
      auto it = pending.find(nw);
      Scalar nc = c * k;
      if (it == pending.end()) {
        if (!nc.is_zero()) pending.emplace(std::move(nw), nc);
      } else {
        it->second = it->second + nc;
        if (it->second.is_zero()) pending.erase(it);
      }
    }
  }
  return result;
}

}  // namespace

AlgebraElement normal_form(const AlgebraElement& x, const RewriteContext& ctx) { return reduce(x, ctx, nullptr); }

AlgebraElement normal_form_randomized(const AlgebraElement& x, const RewriteContext& ctx, std::mt19937& rng) {
  return reduce(x, ctx, &rng);
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, const RewriteContext& ctx) {
  AlgebraElement prod(ctx.field_char);
  for (const auto& [wx, cx] : x.terms())
    for (const auto& [wy, cy] : y.terms()) {
      Word w;
      w.letters = wx.letters;
      w.letters.insert(w.letters.end(), wy.letters.begin(), wy.letters.end());
      prod.add_term(w, cx * cy);
    }
  return normal_form(prod, ctx);
}

AlgebraElement involution(const AlgebraElement& x) {
  AlgebraElement out(x.field());
  for (const auto& [w, c] : x.terms()) {
    Word r;
    r.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(letter_star(*it));
    out.add_term(r, c);
  }
  return out;
}

bool is_nod_path(const Word& w, const RewriteContext& ctx) {
  if (!is_d_path(w, ctx.graph)) return false;
  for (size_t i = 0; i + 1 < w.letters.size(); ++i)
    if (ctx.forbidden(w.letters[i], w.letters[i + 1])) return false;
  return true;
}

std::optional<int> local_valuation(const AlgebraElement& x, const RewriteContext& ctx) {
  AlgebraElement nf = normal_form(x, ctx);
  if (nf.is_zero()) return std::nullopt;
  int best = 0;
  for (const auto& [w, c] : nf.terms()) best = std::max(best, w.length());
  return best;
}

// ---------------------------------------------------------------------------
// parsing and printing

namespace {

struct ElementParser {
  const std::string& s;
  const WeightedGraph& g;
  int field;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg + " at column " + std::to_string(pos + 1)); }

  long long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == digits) fail("expected integer");
    return std::stoll(s.substr(start, pos - start));
  }

  std::string identifier() {
    skip_ws();
    size_t start = pos;
    if (pos >= s.size() || !std::isalpha((unsigned char)s[pos])) fail("expected identifier");
    while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
    return s.substr(start, pos - start);
  }

  // factor := vertexId | edgeId '_' nat ['^*']
  Letter factor() {
    std::string tok = identifier();
    // split at the last underscore followed by digits
    size_t us = tok.rfind('_');
    if (us != std::string::npos && us + 1 < tok.size() &&
        std::all_of(tok.begin() + us + 1, tok.end(), [](char c) { return std::isdigit((unsigned char)c); })) {
      std::string edge = tok.substr(0, us);
      int tag = std::stoi(tok.substr(us + 1));
      int e = g.edge_index(edge);
      if (e < 0) fail("unknown edge `" + edge + "`");
      if (tag < 1 || tag > g.edges[e].weight)
        fail("tag " + std::to_string(tag) + " out of range for edge `" + edge + "` of weight " +
             std::to_string(g.edges[e].weight));
      bool star = false;
      size_t save = pos;
      if (eat('^')) {
        if (eat('*')) star = true;
        else pos = save;
      }
      return star ? Letter::ghost_letter(e, tag) : Letter::real_letter(e, tag);
    }
    int v = g.vertex_index(tok);
    if (v < 0) {
      if (g.edge_index(tok) >= 0) fail("edge `" + tok + "` needs a tag (write `" + tok + "_1`)");
      fail("unknown vertex `" + tok + "`");
    }
    return Letter::vertex_letter(v);
  }

  // term := [scalar '*'] factor ('*' factor)*
  AlgebraElement term(bool negative) {
    Scalar coeff = Scalar::one(field);
    skip_ws();
    if (pos < s.size() && (std::isdigit((unsigned char)s[pos]))) {
      long long n = integer();
      long long d = 1;
      if (eat('/')) {
        d = integer();
        if (d <= 0) fail("denominator must be positive");
      }
      coeff = Scalar::of(n, d, field);
      if (!eat('*')) fail("expected `*` after scalar");
    }
    Word w;
    w.letters.push_back(factor());
    while (true) {
      size_t save = pos;
      if (!eat('*')) break;
      skip_ws();
      if (pos >= s.size() || !std::isalpha((unsigned char)s[pos])) {
        pos = save;
        break;
      }
      w.letters.push_back(factor());
    }
    if (negative) coeff = -coeff;
    return AlgebraElement::monomial(w, coeff);
  }

  AlgebraElement element() {
    skip_ws();
    AlgebraElement out(field);
    if (peek() == '0') {
      size_t save = pos;
      ++pos;
      skip_ws();
      if (pos == s.size()) return out;
      pos = save;
    }
    bool neg = eat('-');
    out += term(neg);
    while (true) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos;
        out += term(c == '-');
      } else {
        break;
      }
    }
    skip_ws();
    if (pos != s.size()) fail("trailing input");
    return out;
  }
};

}  // namespace

AlgebraElement parse_element(const std::string& text, const WeightedGraph& g, int field) {
  ElementParser p{text, g, field};
  return p.element();
}

std::string letter_str(const Letter& l, const WeightedGraph& g) {
  switch (l.kind) {
    case LetterKind::vertex: return g.vertices[l.index];
    case LetterKind::real: return g.edges[l.index].id + "_" + std::to_string(l.tag);
    case LetterKind::ghost: return g.edges[l.index].id + "_" + std::to_string(l.tag) + "^*";
  }
  return "?";
}

std::string word_str(const Word& w, const WeightedGraph& g) {
  std::string s;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += "*";
    s += letter_str(w.letters[i], g);
  }
  return s;
}

std::string element_str(const AlgebraElement& x, const WeightedGraph& g) {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    bool neg = c.field() == 0 && c.num() < 0;
    Scalar mag = neg ? -c : c;
    if (first) {
      if (neg) s += "-";
      first = false;
    } else {
      s += neg ? " - " : " + ";
    }
    if (!(mag == Scalar::one(c.field()))) s += mag.str() + "*";
    s += word_str(w, g);
  }
  return s;
}

std::vector<std::pair<std::string, AlgebraElement>> defining_relations(const WeightedGraph& g, int field) {
  std::vector<std::pair<std::string, AlgebraElement>> rels;
  const Scalar one = Scalar::one(field);
  auto vw = [&](int v) { return Word{{Letter::vertex_letter(v)}}; };

  // (i) uv = delta_uv u
  for (size_t u = 0; u < g.vertices.size(); ++u)
    for (size_t v = 0; v < g.vertices.size(); ++v) {
      AlgebraElement rel(field);
      Word w;
      w.letters = {Letter::vertex_letter((int)u), Letter::vertex_letter((int)v)};
      rel.add_term(w, one);
      if (u == v) rel.add_term(vw((int)u), -one);
      rels.emplace_back("(i) " + g.vertices[u] + "*" + g.vertices[v], rel);
    }
  // (ii) s(e)e_i = e_i = e_i r(e), and the ghost versions
  for (size_t e = 0; e < g.edges.size(); ++e)
    for (int t = 1; t <= g.edges[e].weight; ++t) {
      Letter re = Letter::real_letter((int)e, t), gh = Letter::ghost_letter((int)e, t);
      auto pair_rel = [&](const Letter& a, const Letter& b, const Letter& single, const std::string& nm) {
        AlgebraElement rel(field);
        Word w;
        w.letters = {a, b};
        rel.add_term(w, one);
        rel.add_term(Word{{single}}, -one);
        rels.emplace_back(nm, rel);
      };
      std::string n = g.edges[e].id + "_" + std::to_string(t);
      pair_rel(Letter::vertex_letter(g.edges[e].source), re, re, "(ii) s(e)*" + n);
      pair_rel(re, Letter::vertex_letter(g.edges[e].target), re, "(ii) " + n + "*r(e)");
      pair_rel(Letter::vertex_letter(g.edges[e].target), gh, gh, "(ii) r(e)*" + n + "^*");
      pair_rel(gh, Letter::vertex_letter(g.edges[e].source), gh, "(ii) " + n + "^**s(e)");
    }
  // (iii) sum_{e in s^{-1}(v)} e_i e_j^* = delta_ij v
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    int wv = g.vertex_weight((int)v);
    if (wv == 0) continue;
    for (int i = 1; i <= wv; ++i)
      for (int j = 1; j <= wv; ++j) {
        AlgebraElement rel(field);
        for (size_t e = 0; e < g.edges.size(); ++e) {
          if (g.edges[e].source != (int)v) continue;
          if (g.edges[e].weight < i || g.edges[e].weight < j) continue;
          Word w;
          w.letters = {Letter::real_letter((int)e, i), Letter::ghost_letter((int)e, j)};
          rel.add_term(w, one);
        }
        if (i == j) rel.add_term(vw((int)v), -one);
        rels.emplace_back("(iii) v=" + g.vertices[v] + " i=" + std::to_string(i) + " j=" + std::to_string(j), rel);
      }
  }
  // (iv) sum_i e_i^* f_i = delta_ef r(e)
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    int wv = g.vertex_weight((int)v);
    if (wv == 0) continue;
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].source != (int)v) continue;
      for (size_t f = 0; f < g.edges.size(); ++f) {
        if (g.edges[f].source != (int)v) continue;
        AlgebraElement rel(field);
        for (int i = 1; i <= wv; ++i) {
          if (g.edges[e].weight < i || g.edges[f].weight < i) continue;
          Word w;
          w.letters = {Letter::ghost_letter((int)e, i), Letter::real_letter((int)f, i)};
          rel.add_term(w, one);
        }
        if (e == f) rel.add_term(vw(g.edges[e].target), -one);
        rels.emplace_back("(iv) e=" + g.edges[e].id + " f=" + g.edges[f].id, rel);
      }
    }
  }
  return rels;
}

}  // namespace wlpa
