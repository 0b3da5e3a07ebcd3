#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wlpa/graph.hpp"
#include "wlpa/scalar.hpp"

namespace wlpa {

enum class LetterKind : uint8_t { vertex = 0, real = 1, ghost = 2 };

// A generator symbol: a vertex v, a real edge letter e_i, or a ghost letter
// e_i^*. Edge letters carry the edge index and a tag 1..w(e).
struct Letter {
  LetterKind kind = LetterKind::vertex;
  int index = -1;  // vertex index or edge index
  int tag = 0;     // 1..w(e) for edge letters, 0 for vertices

  static Letter vertex_letter(int v) { return {LetterKind::vertex, v, 0}; }
  static Letter real_letter(int e, int tag) { return {LetterKind::real, e, tag}; }
  static Letter ghost_letter(int e, int tag) { return {LetterKind::ghost, e, tag}; }

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Source/range in the double graph of the hat graph (s(v)=r(v)=v for vertices).
int letter_source(const Letter& l, const WeightedGraph& g);
int letter_range(const Letter& l, const WeightedGraph& g);
Letter letter_star(const Letter& l);

// A word over the generators. Well-formed d-paths are a single vertex letter
// or a nonempty sequence of edge letters with composable endpoints, but
// arbitrary letter sequences are representable (the free algebra).
struct Word {
  std::vector<Letter> letters;

  // path length: edge letters count, vertex letters do not
  int length() const {
    int n = 0;
    for (const Letter& l : letters)
      if (l.kind != LetterKind::vertex) ++n;
    return n;
  }
  bool is_single_vertex() const { return letters.size() == 1 && letters[0].kind == LetterKind::vertex; }

  friend bool operator==(const Word&, const Word&) = default;
};

// Canonical word order: path length, then letterwise (vertex < real < ghost,
// then index, then tag).
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    int la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    return a.letters < b.letters;
  }
};

bool is_d_path(const Word& w, const WeightedGraph& g);

// Sparse degree vector over Z^lambda, indexed by tag.
struct DegreeVector {
  std::map<int, long long> entries;  // tag -> coefficient, zeros removed

  void add(int tag, long long c) {
    auto it = entries.find(tag);
    if (it == entries.end()) {
      if (c != 0) entries[tag] = c;
    } else {
      it->second += c;
      if (it->second == 0) entries.erase(it);
    }
  }
  bool is_zero() const { return entries.empty(); }
  friend bool operator==(const DegreeVector&, const DegreeVector&) = default;
  friend auto operator<=>(const DegreeVector& a, const DegreeVector& b) { return a.entries <=> b.entries; }
};

DegreeVector degree(const Word& w);
std::string degree_str(const DegreeVector& d, int lambda);

// Finite formal linear combination of words with exact nonzero coefficients.
class AlgebraElement {
public:
  explicit AlgebraElement(int field = 0) : field_(field) {}

  int field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, Scalar, WordLess>& terms() const { return terms_; }

  void add_term(const Word& w, const Scalar& c);

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  AlgebraElement scaled(const Scalar& c) const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

  static AlgebraElement monomial(const Word& w, const Scalar& c);
  static AlgebraElement vertex(int v, int field = 0);

private:
  std::map<Word, Scalar, WordLess> terms_;
  int field_ = 0;
};

// Thrown when the rewriting step budget is exhausted. Signals an engine bug,
// never an expected outcome.
class StepBudgetExceeded : public std::runtime_error {
public:
  StepBudgetExceeded() : std::runtime_error("rewriting step budget exceeded") {}
};

// A weighted graph together with a special-edge choice; fixes the forbidden
// words e^v_i (e^v_j)^* and e_1^* f_1 and hence the normal form.
struct RewriteContext {
  WeightedGraph graph;
  SpecialEdges specials;
  int field_char = 0;
  long long step_budget = 1000000;

  // forbidden two-letter windows (both letters must be edge letters)
  bool forbidden(const Letter& a, const Letter& b) const;
  // composable and not forbidden
  bool transition(const Letter& a, const Letter& b) const;
};

RewriteContext make_context(const WeightedGraph& g, const SpecialEdges& specials, int field_char = 0,
                            long long step_budget = 1000000);
RewriteContext make_context(const WeightedGraph& g);

// Reduces to the nod-path basis. The deterministic strategy rewrites the
// leftmost forbidden factor of the canonically-maximal word; pass an rng to
// randomize both choices (used by the confluence checks).
AlgebraElement normal_form(const AlgebraElement& x, const RewriteContext& ctx);
AlgebraElement normal_form_randomized(const AlgebraElement& x, const RewriteContext& ctx, std::mt19937& rng);

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, const RewriteContext& ctx);
AlgebraElement involution(const AlgebraElement& x);

bool is_nod_path(const Word& w, const RewriteContext& ctx);

// Longest nod-path length in the support of the normal form; nullopt encodes
// -infinity (the zero element).
std::optional<int> local_valuation(const AlgebraElement& x, const RewriteContext& ctx);

// Element grammar: element := ['-'] term (('+'|'-') term)* | '0';
// term := [scalar '*'] factor ('*' factor)*; factor := vertexId |
// edgeId '_' nat ['^*']; scalar := int | int '/' nat.
AlgebraElement parse_element(const std::string& text, const WeightedGraph& g, int field = 0);

std::string letter_str(const Letter& l, const WeightedGraph& g);
std::string word_str(const Word& w, const WeightedGraph& g);
std::string element_str(const AlgebraElement& x, const WeightedGraph& g);

// The defining relations of the algebra instantiated on g, as elements
// (LHS - RHS); every one normalizes to zero. Used by soundness checks and
// homomorphism verification.
std::vector<std::pair<std::string, AlgebraElement>> defining_relations(const WeightedGraph& g, int field = 0);

}  // namespace wlpa
