#include "plsem/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <string>

#include "plsem/error.hpp"

namespace plsem {

std::vector<int> nonlinear_children(const Plsem& m, int i) {
  std::vector<int> out;
  for (int j : m.dag().children(i))
    if (!is_edge_linear(m, i, j)) out.push_back(j);
  return out;
}

FixedPairSet::FixedPairSet(std::vector<Edge> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool FixedPairSet::contains(int i, int k) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Edge{i, k});
}

FixedPairSet fixed_pairs(const Plsem& m) {
  std::vector<Edge> pairs;
  for (int i = 1; i <= m.node_count(); ++i) {
    for (int j : nonlinear_children(m, i))
      for (int k : descendants(m.dag(), j)) pairs.push_back({i, k});
  }
  return FixedPairSet(std::move(pairs));
}

ReversalScorer oracle_scorer(FixedPairSet v) {
  return [v = std::move(v)](int i, int j, std::span<const int>) {
    return v.contains(i, j) ? std::numeric_limits<double>::infinity() : 0.0;
  };
}

Pdag oracle_gdpx(const Plsem& m) { return *compute_gdpx(m.dag(), oracle_scorer(fixed_pairs(m)), 1.0).gdpx; }

std::vector<Plsem> oracle_enumerate_models(const Plsem& m, std::size_t cap) {
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "cap must be at least 1");
  std::map<Dag, Plsem> visited;
  std::deque<const Plsem*> frontier;
  auto add = [&](Plsem model) {
    Dag key = model.dag();
    auto [it, fresh] = visited.emplace(std::move(key), std::move(model));
    if (!fresh) return;
    if (visited.size() > cap)
      throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " DAGs in the class");
    frontier.push_back(&it->second);
  };
  add(m);
  while (!frontier.empty()) {
    const Plsem& cur = *frontier.front();
    frontier.pop_front();
    for (const Edge& e : cur.dag().edges()) {
      if (!is_covered(cur.dag(), e.from, e.to)) continue;
      const EdgeFunction& f = cur.function(e.from, e.to);
      if (!f.is_linear() || f.linear_coefficient() == 0.0) continue;
      add(reverse_covered_linear_edge(cur, e.from, e.to));
    }
  }
  std::vector<Plsem> out;
  out.reserve(visited.size());
  for (auto& kv : visited) out.push_back(std::move(kv.second));
  return out;
}

std::vector<Dag> oracle_enumerate(const Plsem& m, std::size_t cap) {
  std::vector<Dag> out;
  for (const Plsem& model : oracle_enumerate_models(m, cap)) out.push_back(model.dag());
  return out;
}

}  // namespace plsem
