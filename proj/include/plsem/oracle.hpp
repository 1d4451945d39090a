#pragma once

// Population-level answers for a known model: fixed causal-order pairs,
// the maximally oriented PDAG of the class, and the class itself by
// breadth-first covered linear edge reversal.
//
// fixed_pairs and oracle_gdpx assume faithfulness and linearly independent
// nonlinear effects out of each node. oracle_enumerate assumes neither.

#include <cstddef>
#include <vector>

#include "plsem/estimators.hpp"
#include "plsem/graph.hpp"
#include "plsem/model.hpp"

namespace plsem {

// Children j of i whose edge function is nonlinear.
std::vector<int> nonlinear_children(const Plsem& m, int i);

// Pairs (i, k) ordered the same way in every DAG of the class.
class FixedPairSet {
 public:
  FixedPairSet() = default;
  explicit FixedPairSet(std::vector<Edge> pairs);

  const std::vector<Edge>& pairs() const noexcept { return pairs_; }
  bool contains(int i, int k) const;
  std::size_t size() const noexcept { return pairs_.size(); }

 private:
  std::vector<Edge> pairs_;
};

// (i, k) for every k that descends from a nonlinear child of i.
FixedPairSet fixed_pairs(const Plsem& m);

// +infinity for pairs in `v`, 0 otherwise.
ReversalScorer oracle_scorer(FixedPairSet v);

Pdag oracle_gdpx(const Plsem& m);

// Every distribution-equivalent model reachable by covered linear edge
// reversals, sorted by DAG. Throws CapExceeded.
std::vector<Plsem> oracle_enumerate_models(const Plsem& m, std::size_t cap);
std::vector<Dag> oracle_enumerate(const Plsem& m, std::size_t cap);

}  // namespace plsem
