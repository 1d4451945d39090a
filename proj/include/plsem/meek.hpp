#pragma once

// Orientation closure under background knowledge: the four Meek rules,
// maximally oriented PDAGs, implied-orientation tests and enumeration of
// consistent DAG extensions.

#include <cstddef>
#include <vector>

#include "plsem/graph.hpp"

namespace plsem {

// Each rule orients an undirected edge a -- b as a -> b:
//   R1: k -> a, k and b non-adjacent
//   R2: a -> k -> b
//   R3: a -- k, a -- l, k -> b, l -> b, k and l non-adjacent
//   R4: a -- k, a -- l, k -> l, l -> b, k and b non-adjacent
enum class MeekRule { R1, R2, R3, R4 };

bool rule_applies(const Pdag& g, MeekRule rule, int a, int b);
// True iff some rule orients a -- b as a -> b in one step.
bool any_rule_applies(const Pdag& g, int a, int b);

// Set of imposed orientations. Throws InconsistentKnowledge when a pair is
// listed in both orientations.
class BackgroundKnowledge {
 public:
  BackgroundKnowledge() = default;
  explicit BackgroundKnowledge(std::vector<Edge> oriented);

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool empty() const noexcept { return edges_.empty(); }
  bool contains(int from, int to) const;

 private:
  std::vector<Edge> edges_;
};

// Applies R1-R4 to fixpoint. Throws InconsistentOrientation when both
// orientations of an edge are forced or the result has a directed cycle.
Pdag meek_closure(Pdag g);

// Imposes `knowledge` on `pattern` and closes the result (G_{P,K}).
// Throws UnknownAdjacency for pairs that are not adjacencies of the pattern,
// InconsistentKnowledge for conflicting orientations.
Pdag maximally_oriented(const Pdag& pattern, const BackgroundKnowledge& knowledge);

// Undirects i -> j, re-closes, and reports whether i -> j comes back.
// Throws NoSuchEdge.
bool orientation_implied(const Pdag& g, int i, int j);

// Same question for a PDAG already closed under R1-R4. Works in place with
// a local closure seeded at i and j and restores `g` before returning.
bool orientation_implied_in_closed(Pdag& g, int i, int j);

// Restores closure after the edge between i and j was undirected in a PDAG
// that was closed before the change. Throws InconsistentOrientation.
void meek_closure_around(Pdag& g, int i, int j);

// pa(j) \ {i}; by construction some consistent extension has this cover for
// i -> j. Throws NoSuchEdge, NotRemovable if the orientation is implied.
std::vector<int> cover_for_edge(const Pdag& g, int i, int j);

// All consistent DAG extensions, sorted. Returns an empty list when none
// exists. Throws CapExceeded when more than `cap` would be returned.
std::vector<Dag> consistent_extensions(const Pdag& g, std::size_t cap);

}  // namespace plsem
