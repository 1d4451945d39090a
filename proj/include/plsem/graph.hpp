#pragma once

// Directed and partially directed acyclic graphs over nodes 1..p.
//
// Node ids are 1-based everywhere in the public interface. Adjacency is kept
// as sorted per-node lists so membership tests are O(log deg) and iteration
// is in ascending node order.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace plsem {

// Ordered pair; `from -> to` for directed edges, `from -- to` with from < to
// for undirected ones.
struct Edge {
  int from = 0;
  int to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Collider `first -> collider <- second` with first < second and the two
// parents non-adjacent.
struct VStructure {
  int first = 0;
  int second = 0;
  int collider = 0;

  friend auto operator<=>(const VStructure&, const VStructure&) = default;
};

class Pdag;

class Dag {
 public:
  Dag() = default;
  // Throws CyclicGraph, InvalidArgument (bad index, self-loop, duplicate pair).
  Dag(int p, std::span<const Edge> edges);
  Dag(int p, std::initializer_list<Edge> edges)
      : Dag(p, std::span<const Edge>(edges.begin(), edges.size())) {}

  int node_count() const noexcept { return p_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  // Sorted lexicographically.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const int> parents(int v) const { return parents_[index(v)]; }
  std::span<const int> children(int v) const { return children_[index(v)]; }

  bool has_edge(int from, int to) const;
  bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }
  bool contains_node(int v) const noexcept { return v >= 1 && v <= p_; }

  friend bool operator==(const Dag& a, const Dag& b) { return a.p_ == b.p_ && a.edges_ == b.edges_; }
  friend bool operator<(const Dag& a, const Dag& b) {
    return a.p_ != b.p_ ? a.p_ < b.p_ : a.edges_ < b.edges_;
  }

 private:
  std::size_t index(int v) const;

  int p_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
};

class Pdag {
 public:
  Pdag() = default;
  // Throws CyclicGraph if the directed part has a cycle, InvalidArgument on
  // bad indices, self-loops or pairs listed twice.
  Pdag(int p, std::span<const Edge> directed, std::span<const Edge> undirected);
  Pdag(int p, std::initializer_list<Edge> directed, std::initializer_list<Edge> undirected)
      : Pdag(p, std::span<const Edge>(directed.begin(), directed.size()),
             std::span<const Edge>(undirected.begin(), undirected.size())) {}

  static Pdag from_dag(const Dag& d);

  int node_count() const noexcept { return p_; }
  std::size_t directed_count() const noexcept { return n_directed_; }
  std::size_t undirected_count() const noexcept { return n_undirected_; }
  bool is_fully_directed() const noexcept { return n_undirected_ == 0; }

  std::span<const int> parents(int v) const { return parents_[index(v)]; }
  std::span<const int> children(int v) const { return children_[index(v)]; }
  std::span<const int> neighbors(int v) const { return neighbors_[index(v)]; }

  bool has_directed(int from, int to) const;
  bool has_undirected(int a, int b) const;
  bool adjacent(int a, int b) const {
    return has_undirected(a, b) || has_directed(a, b) || has_directed(b, a);
  }
  bool contains_node(int v) const noexcept { return v >= 1 && v <= p_; }

  std::vector<Edge> directed_edges() const;
  // Each pair once, as (min, max).
  std::vector<Edge> undirected_edges() const;

  // `a -- b` becomes `a -> b`. Throws NoSuchEdge if a -- b is absent. Does not
  // check acyclicity; callers that can create cycles validate afterwards.
  void orient(int from, int to);
  // `a -> b` becomes `a -- b`. Throws NoSuchEdge.
  void unorient(int from, int to);

  bool has_directed_cycle() const;
  // Throws InvalidArgument unless fully directed.
  Dag to_dag() const;

  friend bool operator==(const Pdag& a, const Pdag& b) {
    return a.p_ == b.p_ && a.parents_ == b.parents_ && a.neighbors_ == b.neighbors_;
  }

 private:
  std::size_t index(int v) const;

  int p_ = 0;
  std::size_t n_directed_ = 0;
  std::size_t n_undirected_ = 0;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> neighbors_;
};

// Smallest-index-first Kahn ordering; the returned vector lists nodes in
// causal order.
std::vector<int> topological_order(const Dag& d);

std::vector<VStructure> v_structures(const Dag& d);
// V-structures formed by the directed part of a PDAG.
std::vector<VStructure> v_structures(const Pdag& g);

// Skeleton as sorted (min, max) pairs.
std::vector<Edge> skeleton(const Dag& d);
std::vector<Edge> skeleton(const Pdag& g);

Pdag pattern(const Dag& d);

// pa(i) == pa(j) \ {i}. Throws NoSuchEdge if i -> j is absent.
bool is_covered(const Dag& d, int i, int j);

// Throws NoSuchEdge, or CyclicGraph if the reversal closes a cycle.
Dag reverse_edge(const Dag& d, int i, int j);

// Reflexive: always contains i. Sorted ascending.
std::vector<int> descendants(const Dag& d, int i);

// Throws DimensionMismatch if node counts differ.
bool markov_equivalent(const Dag& a, const Dag& b);

}  // namespace plsem
