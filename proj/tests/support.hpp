#pragma once

// Shared helpers for the test binaries: fixture loading and brute-force
// reference implementations that deliberately avoid the library's own
// search code.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "plsem/error.hpp"
#include "plsem/graph.hpp"
#include "plsem/io.hpp"
#include "plsem/model.hpp"
#include "plsem/random.hpp"

namespace testing {

using namespace plsem;

inline std::string fixture_path(const std::string& name) { return std::string(PLSEM_FIXTURE_DIR) + "/" + name; }

inline Plsem load_model(const std::string& name) { return parse_model(read_file(fixture_path(name))); }
inline Pdag load_graph(const std::string& name) { return parse_graph(read_file(fixture_path(name))); }

inline bool acyclic(int p, const std::vector<Edge>& edges) {
  try {
    Dag d(p, edges);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Every orientation of g's undirected edges that is acyclic and keeps g's
// v-structures exactly (2^m candidates).
inline std::set<Dag> naive_extensions(const Pdag& g) {
  const std::vector<Edge> und = g.undirected_edges();
  const std::vector<Edge> dir = g.directed_edges();
  const auto target = v_structures(g);
  std::set<Dag> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << und.size()); ++mask) {
    std::vector<Edge> edges = dir;
    for (std::size_t k = 0; k < und.size(); ++k)
      edges.push_back((mask >> k) & 1 ? Edge{und[k].to, und[k].from} : und[k]);
    if (!acyclic(g.node_count(), edges)) continue;
    Dag d(g.node_count(), edges);
    if (v_structures(d) == target) out.insert(d);
  }
  return out;
}

// All DAGs with the skeleton and v-structures of d.
inline std::set<Dag> markov_class(const Dag& d) {
  std::vector<Edge> skel = skeleton(d);
  std::set<Dag> out;
  const auto target = v_structures(d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << skel.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < skel.size(); ++k)
      edges.push_back((mask >> k) & 1 ? Edge{skel[k].to, skel[k].from} : skel[k]);
    if (!acyclic(d.node_count(), edges)) continue;
    Dag c(d.node_count(), edges);
    if (v_structures(c) == target) out.insert(c);
  }
  return out;
}

// Rule checks written directly from the rule statements; orient a -- b as
// a -> b.
inline bool naive_rule(const Pdag& g, int rule, int a, int b) {
  if (!g.has_undirected(a, b)) return false;
  const int p = g.node_count();
  for (int k = 1; k <= p; ++k) {
    if (k == a || k == b) continue;
    switch (rule) {
      case 1:
        if (g.has_directed(k, a) && !g.adjacent(k, b)) return true;
        break;
      case 2:
        if (g.has_directed(a, k) && g.has_directed(k, b)) return true;
        break;
      case 3:
        for (int l = k + 1; l <= p; ++l)
          if (l != a && l != b && g.has_undirected(a, k) && g.has_undirected(a, l) && g.has_directed(k, b) &&
              g.has_directed(l, b) && !g.adjacent(k, l))
            return true;
        break;
      case 4:
        for (int l = 1; l <= p; ++l)
          if (l != a && l != b && l != k && g.has_undirected(a, k) && g.has_undirected(a, l) && g.has_directed(k, l) &&
              g.has_directed(l, b) && !g.adjacent(k, b))
            return true;
        break;
    }
  }
  return false;
}

// Applies one randomly chosen applicable (rule, edge, direction) at a time
// until none applies.
inline Pdag random_order_closure(Pdag g, Rng& rng) {
  for (;;) {
    std::vector<Edge> moves;
    for (const Edge& e : g.undirected_edges())
      for (Edge dir : {e, Edge{e.to, e.from}})
        for (int r = 1; r <= 4; ++r)
          if (naive_rule(g, r, dir.from, dir.to)) {
            moves.push_back(dir);
            break;
          }
    if (moves.empty()) return g;
    const Edge pick = moves[rng.next_u64() % moves.size()];
    g.orient(pick.from, pick.to);
  }
}

// Pattern of d with a random subset of its undirected edges oriented as in d.
inline Pdag random_knowledge_pdag(const Dag& d, double prob, Rng& rng) {
  Pdag g = pattern(d);
  for (const Edge& e : d.edges())
    if (g.has_undirected(e.from, e.to) && rng.bernoulli(prob)) g.orient(e.from, e.to);
  return g;
}

}  // namespace testing
