#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "wlpa/element.hpp"

namespace wlpa {

using BigInt = boost::multiprecision::cpp_int;

// All edge letters (reals then ghosts, canonical order).
std::vector<Letter> letter_alphabet(const WeightedGraph& g);

struct Quasicycle {
  Word word;
  int class_id = 0;  // shift-equivalence class
};

struct QuasicycleSet {
  std::vector<Quasicycle> all;  // sorted by (class_id, canonical word order)
  int num_classes = 0;

  std::vector<Word> class_representatives() const;
};

// Enumerates every quasicycle (all shifts, grouped into shift classes).
// The default entry point runs one search per start letter in parallel;
// the serial variant is the reference kernel the tests compare against.
QuasicycleSet enumerate_quasicycles(const RewriteContext& ctx);
QuasicycleSet enumerate_quasicycles_serial(const RewriteContext& ctx);

// p ==>nod q: some nod-path o with p not a prefix of o makes p o q a
// nod-path. Decided by reachability over (last letter, prefix-match) states.
bool implies_nod(const Word& p, const Word& q, const RewriteContext& ctx);

// p ==> q: p q is a nod-path, or p ==>nod q.
bool implies(const Word& p, const Word& q, const RewriteContext& ctx);

bool is_selfconnected(const Word& q, const RewriteContext& ctx);

// Longest chain of pairwise non-equivalent quasicycles, maximizing over
// shift representatives. Throws PreconditionError if a selfconnected
// quasicycle exists.
int max_chain_length(const RewriteContext& ctx);

struct GkDimension {
  bool infinite = false;
  int value = 0;
  std::optional<Word> selfconnected_witness;
};

GkDimension gk_dimension(const RewriteContext& ctx);

// Exact number of nod-paths of length <= n, including the trivial ones.
BigInt count_nod_paths(const RewriteContext& ctx, int n);

// Count at saturation (only terminates when the set of nod-paths is finite,
// i.e. the graph is aquasicyclic); the cap guards against misuse.
BigInt count_nod_paths_saturated(const RewriteContext& ctx, int cap = 10000);

}  // namespace wlpa
