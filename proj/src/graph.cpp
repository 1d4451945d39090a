#include "plsem/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "plsem/error.hpp"

namespace plsem {

namespace {

bool sorted_contains(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

void sorted_insert(std::vector<int>& v, int x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); }

void sorted_erase(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

std::string edge_str(int a, const char* op, int b) { return std::to_string(a) + op + std::to_string(b); }

void check_node(int p, int v) {
  if (v < 1 || v > p)
    throw Error(ErrorKind::InvalidArgument,
                "node " + std::to_string(v) + " out of range [1, " + std::to_string(p) + "]");
}

// Kahn's algorithm over 1-based children lists; returns the order, which is
// shorter than p iff the graph has a cycle.
std::vector<int> kahn(int p, const std::vector<std::vector<int>>& parents,
                      const std::vector<std::vector<int>>& children) {
  std::vector<std::size_t> indegree(p);
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 1; v <= p; ++v) {
    indegree[v - 1] = parents[v - 1].size();
    if (indegree[v - 1] == 0) ready.push(v);
  }
  std::vector<int> order;
  order.reserve(p);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : children[v - 1])
      if (--indegree[c - 1] == 0) ready.push(c);
  }
  return order;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dag

Dag::Dag(int p, std::span<const Edge> edges) : p_(p), parents_(p), children_(p) {
  if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative node count");
  edges_.assign(edges.begin(), edges.end());
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    check_node(p, e.from);
    check_node(p, e.to);
    if (e.from == e.to) throw Error(ErrorKind::InvalidArgument, "self-loop at node " + std::to_string(e.from));
    if (k > 0 && edges_[k - 1] == e)
      throw Error(ErrorKind::InvalidArgument, "duplicate edge " + edge_str(e.from, " -> ", e.to));
  }
  for (const Edge& e : edges_) {
    if (std::binary_search(edges_.begin(), edges_.end(), Edge{e.to, e.from}))
      throw Error(ErrorKind::InvalidArgument, "edge listed in both orientations: " + edge_str(e.from, " -- ", e.to));
    parents_[e.to - 1].push_back(e.from);
    children_[e.from - 1].push_back(e.to);
  }
  for (auto& v : parents_) std::sort(v.begin(), v.end());
  for (auto& v : children_) std::sort(v.begin(), v.end());
  if (kahn(p_, parents_, children_).size() != static_cast<std::size_t>(p_))
    throw Error(ErrorKind::CyclicGraph, "edge set contains a directed cycle");
}

std::size_t Dag::index(int v) const {
  check_node(p_, v);
  return static_cast<std::size_t>(v - 1);
}

bool Dag::has_edge(int from, int to) const {
  if (!contains_node(from) || !contains_node(to)) return false;
  return sorted_contains(children_[from - 1], to);
}

// ---------------------------------------------------------------------------
// Pdag

Pdag::Pdag(int p, std::span<const Edge> directed, std::span<const Edge> undirected)
    : p_(p), parents_(p), children_(p), neighbors_(p) {
  if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative node count");
  std::vector<Edge> seen;
  auto claim = [&](int a, int b) {
    check_node(p, a);
    check_node(p, b);
    if (a == b) throw Error(ErrorKind::InvalidArgument, "self-loop at node " + std::to_string(a));
    seen.push_back({std::min(a, b), std::max(a, b)});
  };
  for (const Edge& e : directed) {
    claim(e.from, e.to);
    parents_[e.to - 1].push_back(e.from);
    children_[e.from - 1].push_back(e.to);
  }
  for (const Edge& e : undirected) {
    claim(e.from, e.to);
    neighbors_[e.from - 1].push_back(e.to);
    neighbors_[e.to - 1].push_back(e.from);
  }
  std::sort(seen.begin(), seen.end());
  auto dup = std::adjacent_find(seen.begin(), seen.end());
  if (dup != seen.end())
    throw Error(ErrorKind::InvalidArgument, "pair listed more than once: " + edge_str(dup->from, " -- ", dup->to));
  n_directed_ = directed.size();
  n_undirected_ = undirected.size();
  for (auto& v : parents_) std::sort(v.begin(), v.end());
  for (auto& v : children_) std::sort(v.begin(), v.end());
  for (auto& v : neighbors_) std::sort(v.begin(), v.end());
  if (has_directed_cycle()) throw Error(ErrorKind::CyclicGraph, "directed part contains a cycle");
}

Pdag Pdag::from_dag(const Dag& d) { return Pdag(d.node_count(), d.edges(), {}); }

std::size_t Pdag::index(int v) const {
  check_node(p_, v);
  return static_cast<std::size_t>(v - 1);
}

bool Pdag::has_directed(int from, int to) const {
  if (!contains_node(from) || !contains_node(to)) return false;
  return sorted_contains(children_[from - 1], to);
}

bool Pdag::has_undirected(int a, int b) const {
  if (!contains_node(a) || !contains_node(b)) return false;
  return sorted_contains(neighbors_[a - 1], b);
}

std::vector<Edge> Pdag::directed_edges() const {
  std::vector<Edge> out;
  out.reserve(n_directed_);
  for (int v = 1; v <= p_; ++v)
    for (int c : children_[v - 1]) out.push_back({v, c});
  return out;
}

std::vector<Edge> Pdag::undirected_edges() const {
  std::vector<Edge> out;
  out.reserve(n_undirected_);
  for (int v = 1; v <= p_; ++v)
    for (int w : neighbors_[v - 1])
      if (v < w) out.push_back({v, w});
  return out;
}

void Pdag::orient(int from, int to) {
  if (!has_undirected(from, to))
    throw Error(ErrorKind::NoSuchEdge, "no undirected edge " + edge_str(from, " -- ", to));
  sorted_erase(neighbors_[from - 1], to);
  sorted_erase(neighbors_[to - 1], from);
  sorted_insert(children_[from - 1], to);
  sorted_insert(parents_[to - 1], from);
  --n_undirected_;
  ++n_directed_;
}

void Pdag::unorient(int from, int to) {
  if (!has_directed(from, to)) throw Error(ErrorKind::NoSuchEdge, "no directed edge " + edge_str(from, " -> ", to));
  sorted_erase(children_[from - 1], to);
  sorted_erase(parents_[to - 1], from);
  sorted_insert(neighbors_[from - 1], to);
  sorted_insert(neighbors_[to - 1], from);
  ++n_undirected_;
  --n_directed_;
}

bool Pdag::has_directed_cycle() const {
  return kahn(p_, parents_, children_).size() != static_cast<std::size_t>(p_);
}

Dag Pdag::to_dag() const {
  if (!is_fully_directed()) throw Error(ErrorKind::InvalidArgument, "PDAG has undirected edges");
  auto edges = directed_edges();
  return Dag(p_, edges);
}

// ---------------------------------------------------------------------------
// Free functions

std::vector<int> topological_order(const Dag& d) {
  std::vector<std::vector<int>> parents(d.node_count()), children(d.node_count());
  for (int v = 1; v <= d.node_count(); ++v) {
    parents[v - 1].assign(d.parents(v).begin(), d.parents(v).end());
    children[v - 1].assign(d.children(v).begin(), d.children(v).end());
  }
  return kahn(d.node_count(), parents, children);
}

namespace {

template <class Graph>
std::vector<VStructure> colliders(const Graph& g) {
  std::vector<VStructure> out;
  for (int k = 1; k <= g.node_count(); ++k) {
    auto pa = g.parents(k);
    for (std::size_t a = 0; a < pa.size(); ++a)
      for (std::size_t b = a + 1; b < pa.size(); ++b)
        if (!g.adjacent(pa[a], pa[b])) out.push_back({pa[a], pa[b], k});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<VStructure> v_structures(const Dag& d) { return colliders(d); }
std::vector<VStructure> v_structures(const Pdag& g) { return colliders(g); }

std::vector<Edge> skeleton(const Dag& d) {
  std::vector<Edge> out;
  out.reserve(d.edge_count());
  for (const Edge& e : d.edges()) out.push_back({std::min(e.from, e.to), std::max(e.from, e.to)});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> skeleton(const Pdag& g) {
  std::vector<Edge> out = g.undirected_edges();
  for (const Edge& e : g.directed_edges()) out.push_back({std::min(e.from, e.to), std::max(e.from, e.to)});
  std::sort(out.begin(), out.end());
  return out;
}

Pdag pattern(const Dag& d) {
  std::vector<Edge> compelled;
  for (const VStructure& v : v_structures(d)) {
    compelled.push_back({v.first, v.collider});
    compelled.push_back({v.second, v.collider});
  }
  std::sort(compelled.begin(), compelled.end());
  compelled.erase(std::unique(compelled.begin(), compelled.end()), compelled.end());
  std::vector<Edge> rest;
  for (const Edge& e : d.edges())
    if (!std::binary_search(compelled.begin(), compelled.end(), e))
      rest.push_back({std::min(e.from, e.to), std::max(e.from, e.to)});
  return Pdag(d.node_count(), compelled, rest);
}

bool is_covered(const Dag& d, int i, int j) {
  if (!d.has_edge(i, j)) throw Error(ErrorKind::NoSuchEdge, "no edge " + edge_str(i, " -> ", j));
  auto pi = d.parents(i);
  auto pj = d.parents(j);
  if (pj.size() != pi.size() + 1) return false;
  std::vector<int> rest;
  rest.reserve(pi.size());
  for (int v : pj)
    if (v != i) rest.push_back(v);
  return std::equal(rest.begin(), rest.end(), pi.begin(), pi.end());
}

Dag reverse_edge(const Dag& d, int i, int j) {
  if (!d.has_edge(i, j)) throw Error(ErrorKind::NoSuchEdge, "no edge " + edge_str(i, " -> ", j));
  std::vector<Edge> edges = d.edges();
  for (Edge& e : edges)
    if (e.from == i && e.to == j) e = {j, i};
  return Dag(d.node_count(), edges);
}

std::vector<int> descendants(const Dag& d, int i) {
  if (!d.contains_node(i)) throw Error(ErrorKind::InvalidArgument, "node out of range");
  std::vector<char> seen(d.node_count(), 0);
  std::vector<int> stack{i};
  seen[i - 1] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int c : d.children(v))
      if (!seen[c - 1]) {
        seen[c - 1] = 1;
        stack.push_back(c);
      }
  }
  std::vector<int> out;
  for (int v = 1; v <= d.node_count(); ++v)
    if (seen[v - 1]) out.push_back(v);
  return out;
}

bool markov_equivalent(const Dag& a, const Dag& b) {
  if (a.node_count() != b.node_count())
    throw Error(ErrorKind::DimensionMismatch, "graphs have different node counts");
  return skeleton(a) == skeleton(b) && v_structures(a) == v_structures(b);
}

}  // namespace plsem
