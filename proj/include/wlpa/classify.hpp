#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlpa/element.hpp"
#include "wlpa/growth.hpp"

namespace wlpa {

// Decides the graph-theoretic conditions. Each failed condition carries a
// textual witness naming the offending vertices/edges/paths.
struct ConditionReport {
  bool lpa1 = true, lpa2 = true, lpa3 = true, lpa4 = true;
  bool w1 = true, w2 = true;
  bool lv = true;
  bool acyclic = true;
  bool aquasicyclic = true;

  bool lpa() const { return lpa1 && lpa2 && lpa3 && lpa4; }
  bool well_behaved() const { return lpa1 && lpa2 && lpa3 && w1 && w2; }

  std::map<std::string, std::string> witnesses;  // condition name -> description
  std::string witness(const std::string& cond) const {
    auto it = witnesses.find(cond);
    return it == witnesses.end() ? "" : it->second;
  }

  // When Condition (LPA) fails: a nod-path starting with e_2 and ending with
  // e_2^* for a weighted edge e.
  std::optional<Word> lpa_failure_nod_path;
};

ConditionReport check_conditions(const WeightedGraph& g);

// Matrix-block decompositions are given by their sizes.
struct NoetherianDecomposition {
  std::vector<long long> field_blocks;    // sizes over K
  std::vector<long long> laurent_blocks;  // sizes over K[x,x^-1]
};

struct Classification {
  std::optional<std::vector<long long>> finite_dimensional;  // matrix sizes when finite-dimensional
  std::optional<NoetherianDecomposition> noetherian;
  bool von_neumann_regular = false;
  bool domain = false;
  bool locally_finite = false;
  GkDimension gk;
  // Known only in the negative direction (failure of Condition (LPA));
  // nullopt means the verdict is outside this classifier's scope.
  std::optional<bool> simple;
  std::optional<bool> graded_simple;
};

Classification classify(const WeightedGraph& g);

// "No cycle in (E,w) has an exit" (every vertex lying on a cycle emits
// exactly one edge).
bool no_cycle_has_exit(const WeightedGraph& g);

}  // namespace wlpa
