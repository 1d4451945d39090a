#include "plsem/meek.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "plsem/error.hpp"

namespace plsem {

namespace {

bool r1(const Pdag& g, int a, int b) {
  for (int k : g.parents(a))
    if (!g.adjacent(k, b)) return true;
  return false;
}

bool r2(const Pdag& g, int a, int b) {
  for (int k : g.children(a))
    if (g.has_directed(k, b)) return true;
  return false;
}

bool r3(const Pdag& g, int a, int b) {
  auto nb = g.neighbors(a);
  std::vector<int> into_b;
  for (int k : nb)
    if (k != b && g.has_directed(k, b)) into_b.push_back(k);
  for (std::size_t x = 0; x < into_b.size(); ++x)
    for (std::size_t y = x + 1; y < into_b.size(); ++y)
      if (!g.adjacent(into_b[x], into_b[y])) return true;
  return false;
}

bool r4(const Pdag& g, int a, int b) {
  for (int k : g.neighbors(a)) {
    if (k == b || g.adjacent(k, b)) continue;
    for (int l : g.children(k))
      if (l != b && g.has_directed(l, b) && g.has_undirected(a, l)) return true;
  }
  return false;
}

// Worklist closure. Every time an edge u -> v gets oriented, undirected edges
// incident to u, v and their adjacent nodes are re-examined; those are the
// only places where a rule antecedent can newly hold.
class ClosureRun {
 public:
  ClosureRun(Pdag& g, std::vector<Edge>* log) : g_(g), log_(log) {}

  void seed(int a, int b) {
    Edge key{std::min(a, b), std::max(a, b)};
    if (queued_.insert(key).second) queue_.push_back(key);
  }

  void seed_incident(int v) {
    for (int w : g_.neighbors(v)) seed(v, w);
  }

  void seed_all() {
    for (const Edge& e : g_.undirected_edges()) seed(e.from, e.to);
  }

  void run() {
    while (!queue_.empty()) {
      Edge e = queue_.front();
      queue_.pop_front();
      queued_.erase(e);
      if (!g_.has_undirected(e.from, e.to)) continue;
      bool forward = any_rule_applies(g_, e.from, e.to);
      bool backward = any_rule_applies(g_, e.to, e.from);
      if (forward && backward)
        throw Error(ErrorKind::InconsistentOrientation, "both orientations of " + std::to_string(e.from) + " -- " +
                                                            std::to_string(e.to) + " are forced");
      if (!forward && !backward) continue;
      int u = forward ? e.from : e.to;
      int v = forward ? e.to : e.from;
      g_.orient(u, v);
      if (log_) log_->push_back({u, v});
      touch(u);
      touch(v);
    }
  }

 private:
  void touch(int v) {
    seed_incident(v);
    for (int w : g_.parents(v)) seed_incident(w);
    for (int w : g_.children(v)) seed_incident(w);
    for (int w : g_.neighbors(v)) seed_incident(w);
  }

  Pdag& g_;
  std::vector<Edge>* log_;
  std::deque<Edge> queue_;
  std::set<Edge> queued_;
};

void check_directed(const Pdag& g, int i, int j) {
  if (!g.has_directed(i, j))
    throw Error(ErrorKind::NoSuchEdge, "no directed edge " + std::to_string(i) + " -> " + std::to_string(j));
}

}  // namespace

bool rule_applies(const Pdag& g, MeekRule rule, int a, int b) {
  if (!g.has_undirected(a, b)) return false;
  switch (rule) {
    case MeekRule::R1: return r1(g, a, b);
    case MeekRule::R2: return r2(g, a, b);
    case MeekRule::R3: return r3(g, a, b);
    case MeekRule::R4: return r4(g, a, b);
  }
  return false;
}

bool any_rule_applies(const Pdag& g, int a, int b) {
  if (!g.has_undirected(a, b)) return false;
  return r1(g, a, b) || r2(g, a, b) || r3(g, a, b) || r4(g, a, b);
}

BackgroundKnowledge::BackgroundKnowledge(std::vector<Edge> oriented) : edges_(std::move(oriented)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    if (e.from == e.to) throw Error(ErrorKind::InvalidArgument, "self-loop in background knowledge");
    if (contains(e.to, e.from))
      throw Error(ErrorKind::InconsistentKnowledge, "pair " + std::to_string(e.from) + " -- " +
                                                        std::to_string(e.to) + " imposed in both orientations");
  }
}

bool BackgroundKnowledge::contains(int from, int to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

Pdag meek_closure(Pdag g) {
  ClosureRun run(g, nullptr);
  run.seed_all();
  run.run();
  if (g.has_directed_cycle()) throw Error(ErrorKind::InconsistentOrientation, "closure produced a directed cycle");
  return g;
}

Pdag maximally_oriented(const Pdag& pattern, const BackgroundKnowledge& knowledge) {
  Pdag g = pattern;
  for (const Edge& e : knowledge.edges()) {
    if (g.has_directed(e.from, e.to)) continue;
    if (g.has_directed(e.to, e.from))
      throw Error(ErrorKind::InconsistentKnowledge, "knowledge " + std::to_string(e.from) + " -> " +
                                                        std::to_string(e.to) + " contradicts the pattern");
    if (!g.has_undirected(e.from, e.to))
      throw Error(ErrorKind::UnknownAdjacency, "knowledge " + std::to_string(e.from) + " -> " + std::to_string(e.to) +
                                                   " is not an adjacency of the pattern");
    g.orient(e.from, e.to);
  }
  if (g.has_directed_cycle()) throw Error(ErrorKind::InconsistentKnowledge, "knowledge creates a directed cycle");
  try {
    return meek_closure(std::move(g));
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::InconsistentOrientation) throw Error(ErrorKind::InconsistentKnowledge, err.what());
    throw;
  }
}

bool orientation_implied(const Pdag& g, int i, int j) {
  check_directed(g, i, j);
  Pdag h = g;
  h.unorient(i, j);
  h = meek_closure(std::move(h));
  return h.has_directed(i, j);
}

bool orientation_implied_in_closed(Pdag& g, int i, int j) {
  check_directed(g, i, j);
  g.unorient(i, j);
  std::vector<Edge> log;
  bool implied = false;
  try {
    ClosureRun run(g, &log);
    run.seed_incident(i);
    run.seed_incident(j);
    run.run();
    implied = g.has_directed(i, j);
  } catch (...) {
    for (auto it = log.rbegin(); it != log.rend(); ++it) g.unorient(it->from, it->to);
    g.orient(i, j);
    throw;
  }
  for (auto it = log.rbegin(); it != log.rend(); ++it) g.unorient(it->from, it->to);
  g.orient(i, j);
  return implied;
}

void meek_closure_around(Pdag& g, int i, int j) {
  ClosureRun run(g, nullptr);
  run.seed_incident(i);
  run.seed_incident(j);
  run.run();
}

std::vector<int> cover_for_edge(const Pdag& g, int i, int j) {
  check_directed(g, i, j);
  if (orientation_implied(g, i, j))
    throw Error(ErrorKind::NotRemovable, "orientation " + std::to_string(i) + " -> " + std::to_string(j) +
                                             " is implied by R1-R4");
  std::vector<int> cover;
  for (int v : g.parents(j))
    if (v != i) cover.push_back(v);
  return cover;
}

namespace {

struct Extender {
  std::vector<VStructure> target;
  std::size_t cap;
  std::set<Dag> found;

  void extend(const Pdag& g) {
    if (g.is_fully_directed()) {
      if (g.has_directed_cycle()) return;
      Dag d = g.to_dag();
      if (v_structures(d) != target) return;
      found.insert(std::move(d));
      if (found.size() > cap)
        throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " consistent extensions");
      return;
    }
    Edge e = g.undirected_edges().front();
    for (Edge dir : {e, Edge{e.to, e.from}}) {
      Pdag h = g;
      h.orient(dir.from, dir.to);
      if (h.has_directed_cycle()) continue;
      try {
        h = meek_closure(std::move(h));
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::InconsistentOrientation) continue;
        throw;
      }
      extend(h);
    }
  }
};

}  // namespace

std::vector<Dag> consistent_extensions(const Pdag& g, std::size_t cap) {
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "cap must be at least 1");
  Extender ext{v_structures(g), cap, {}};
  ext.extend(g);
  return {ext.found.begin(), ext.found.end()};
}

}  // namespace plsem
