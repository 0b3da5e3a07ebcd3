#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlpa/element.hpp"

namespace wlpa {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

// ---------------------------------------------------------------------------
// V-monoid presentation

struct MonoidGenerator {
  bool is_q = false;
  int vertex = -1;
  int level = 0;  // q^v_level, 1 <= level <= k_v - 1
  std::string name;
};

// generator index -> nonnegative multiplicity
using MonoidTerm = std::map<int, long long>;

struct MonoidRelation {
  MonoidTerm lhs, rhs;
  bool operator==(const MonoidRelation&) const = default;
};

struct MonoidPresentation {
  std::vector<MonoidGenerator> generators;
  std::vector<MonoidRelation> relations;
};

MonoidPresentation monoid_presentation(const WeightedGraph& g);

// Sufficient condition only: some vertex emits edges of two distinct weights.
bool v_monoid_infinite_hint(const WeightedGraph& g);

// ---------------------------------------------------------------------------
// theta idempotents and corner data

struct ThetaFamily {
  int vertex = -1;
  int level = 0;
  std::vector<std::vector<AlgebraElement>> matrix;  // epsilon_{v,l}
  bool verified = false;                            // NF(eps^2 - eps) == 0 entrywise
};

std::vector<ThetaFamily> theta_idempotents(const WeightedGraph& g, const RewriteContext& ctx);

struct CornerData {
  int tag = 0;
  std::vector<AlgebraElement> row;     // T_i
  std::vector<AlgebraElement> column;  // T_{-i}
  bool verified = false;               // NF(T_i T_{-i}) == sum of vertices
};

// Requires a sink-free graph; one entry per tag 1..max weight.
std::vector<CornerData> corner_data(const WeightedGraph& g, const RewriteContext& ctx);

// ---------------------------------------------------------------------------
// K_0 via Smith normal form

struct SnfResult {
  IntMatrix u, d, v;  // u*m*v == d, u/v unimodular, diagonal divisibility chain
};

SnfResult smith_normal_form(const IntMatrix& m);

struct AbelianGroupReport {
  long long rank = 0;
  std::vector<BigInt> torsion;  // invariant factors >= 2, each dividing the next
};

// coker(N^t - I_w) where N is the adjacency matrix and I_w the weighted
// identity matrix.
AbelianGroupReport k0(const WeightedGraph& g);
IntMatrix k0_matrix(const WeightedGraph& g);
AbelianGroupReport cokernel(const IntMatrix& m, size_t columns);

// ---------------------------------------------------------------------------
// admissible weight maps and graded presentations (free abelian Z^rank)

struct WeightMap {
  int rank = 0;
  std::map<std::pair<int, int>, std::vector<long long>> values;  // (edge, tag) -> group element

  const std::vector<long long>& at(int edge, int tag) const { return values.at({edge, tag}); }
};

WeightMap standard_weight_map(const WeightedGraph& g);

struct WeightMapCheck {
  bool ok = true;
  int edge = -1;
  int tag = 0;
};

WeightMapCheck validate_weight_map(const WeightedGraph& g, const SpecialEdges& specials, const WeightMap& w);

struct Window {
  std::vector<std::pair<long long, long long>> box;  // inclusive lo..hi per dimension
  bool contains(const std::vector<long long>& gamma) const;
  std::vector<std::vector<long long>> points() const;
};

struct GradedGenerator {
  bool is_interstice = false;  // the I^{v,gamma}_l generators
  int vertex = -1;
  int level = 0;
  std::vector<long long> gamma;
  friend auto operator<=>(const GradedGenerator&, const GradedGenerator&) = default;
};

using GradedTerm = std::map<GradedGenerator, long long>;

struct GradedRelation {
  GradedTerm lhs, rhs;
  std::vector<long long> base;  // the gamma the relation is instantiated at
  int vertex = -1;
  int level = 0;
  bool boundary = false;  // mentions a generator outside the window
  bool operator==(const GradedRelation&) const = default;
};

struct GradedPresentation {
  std::vector<GradedRelation> relations;
};

GradedPresentation graded_monoid_presentation(const WeightedGraph& g, const SpecialEdges& specials,
                                              const WeightMap& w, const Window& window);
GradedPresentation graded_k0_presentation(const WeightedGraph& g, const SpecialEdges& specials,
                                          const WeightMap& w, const Window& window);

std::string graded_generator_str(const GradedGenerator& gen, const WeightedGraph& g);

}  // namespace wlpa
