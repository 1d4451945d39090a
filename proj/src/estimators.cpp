#include "plsem/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <tuple>

#include "plsem/error.hpp"
#include "plsem/meek.hpp"

namespace plsem {

const char* verdict_name(Verdict v) noexcept { return v == Verdict::Keep ? "keep" : "undirect"; }

namespace {

void check_data(const DataMatrix& data, const Dag& d0) {
  if (data.cols() != d0.node_count())
    throw Error(ErrorKind::DimensionMismatch, "data has " + std::to_string(data.cols()) + " columns, DAG has " +
                                                  std::to_string(d0.node_count()) + " nodes");
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be non-negative");
}

}  // namespace

std::vector<Edge> initial_knowledge(const Dag& d0) {
  const Pdag pat = pattern(d0);
  std::vector<int> pos(d0.node_count() + 1);
  const std::vector<int> order = topological_order(d0);
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
  std::vector<Edge> k;
  for (const Edge& e : d0.edges())
    if (pat.has_undirected(e.from, e.to)) k.push_back(e);
  std::sort(k.begin(), k.end(), [&](const Edge& a, const Edge& b) {
    if (pos[a.to] != pos[b.to]) return pos[a.to] < pos[b.to];
    return pos[a.from] > pos[b.from];
  });
  return k;
}

EquivResult compute_gdpx(const Dag& d0, const ReversalScorer& scorer, double alpha) {
  check_alpha(alpha);
  EquivResult result;
  std::vector<Edge> knowledge = initial_knowledge(d0);
  Pdag g = Pdag::from_dag(d0);
  result.knowledge_history.push_back(knowledge);

  // Edges before `pos` were found implied in the current g. A kept edge
  // leaves g unchanged, so the scan resumes; an undirected one restarts it.
  std::size_t pos = 0;
  while (pos < knowledge.size()) {
    const Edge e = knowledge[pos];
    if (orientation_implied_in_closed(g, e.from, e.to)) {
      ++pos;
      continue;
    }
    DecisionRecord rec;
    rec.edge = e;
    for (int v : g.parents(e.to))
      if (v != e.from) rec.cover.push_back(v);
    rec.delta = scorer(e.from, e.to, rec.cover);
    rec.alpha = alpha;
    rec.verdict = std::abs(rec.delta) < alpha ? Verdict::Undirect : Verdict::Keep;
    knowledge.erase(knowledge.begin() + static_cast<std::ptrdiff_t>(pos));
    if (rec.verdict == Verdict::Undirect) {
      g.unorient(e.from, e.to);
      meek_closure_around(g, e.from, e.to);
      pos = 0;
    }
    result.trace.push_back(std::move(rec));
    result.knowledge_history.push_back(knowledge);
  }
  result.gdpx = std::move(g);
  return result;
}

EquivResult compute_gdpx(NodeScoreCache& cache, const Dag& d0, double alpha) {
  check_data(cache.data(), d0);
  return compute_gdpx(
      d0, [&cache](int i, int j, std::span<const int> s) { return cache.delta(i, j, s); }, alpha);
}

EquivResult compute_gdpx(const DataMatrix& data, const Dag& d0, const EstimationConfig& cfg) {
  check_data(data, d0);
  NodeScoreCache cache(data, cfg.basis);
  return compute_gdpx(cache, d0, cfg.alpha);
}

namespace {

class Lister {
 public:
  Lister(const ReversalScorer& scorer, std::size_t cap, EquivResult& out) : scorer_(scorer), cap_(cap), out_(out) {}

  void visit(const Dag& d, const std::vector<Edge>& fixed, double alpha) {
    if (!seen_.emplace(d, fixed, alpha).second) return;
    const Edge* pick = nullptr;
    for (const Edge& e : d.edges())
      if (!std::binary_search(fixed.begin(), fixed.end(), e) && is_covered(d, e.from, e.to)) {
        pick = &e;
        break;
      }
    if (pick == nullptr) {
      found_.insert(d);
      if (found_.size() > cap_)
        throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap_) + " DAGs in the estimated class");
      return;
    }
    const Edge e = *pick;
    DecisionRecord rec;
    rec.edge = e;
    rec.cover.assign(d.parents(e.from).begin(), d.parents(e.from).end());
    rec.delta = scorer_(e.from, e.to, rec.cover);
    rec.alpha = alpha;
    const bool branch = rec.delta < alpha;
    rec.verdict = branch ? Verdict::Undirect : Verdict::Keep;
    rec.budget_grew = branch && rec.delta < 0.0;
    const double delta = rec.delta;
    out_.trace.push_back(std::move(rec));

    visit(d, with(fixed, e), alpha);
    if (branch) visit(reverse_edge(d, e.from, e.to), with(fixed, {e.to, e.from}), alpha - delta);
  }

  std::vector<Dag> dags() const { return {found_.begin(), found_.end()}; }

 private:
  static std::vector<Edge> with(std::vector<Edge> fixed, Edge e) {
    fixed.insert(std::lower_bound(fixed.begin(), fixed.end(), e), e);
    return fixed;
  }

  const ReversalScorer& scorer_;
  std::size_t cap_;
  EquivResult& out_;
  std::set<std::tuple<Dag, std::vector<Edge>, double>> seen_;
  std::set<Dag> found_;
};

}  // namespace

EquivResult list_all_dags_plsem(const Dag& d0, const ReversalScorer& scorer, double alpha, std::size_t cap) {
  check_alpha(alpha);
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "cap must be at least 1");
  EquivResult result;
  Lister lister(scorer, cap, result);
  lister.visit(d0, {}, alpha);
  result.dags = lister.dags();
  return result;
}

EquivResult list_all_dags_plsem(const DataMatrix& data, const Dag& d0, const EstimationConfig& cfg) {
  check_data(data, d0);
  NodeScoreCache cache(data, cfg.basis);
  return list_all_dags_plsem(
      d0, [&cache](int i, int j, std::span<const int> s) { return cache.delta(i, j, s); }, cfg.alpha, cfg.cap);
}

OrientationMetrics orientation_metrics(const Pdag& estimated, const Pdag& truth, const Pdag& cpdag) {
  const std::vector<Edge> skel = skeleton(truth);
  if (skeleton(estimated) != skel || skeleton(cpdag) != skel)
    throw Error(ErrorKind::SkeletonMismatch, "graphs do not share a skeleton");
  OrientationMetrics m;
  for (const Edge& e : skel) {
    const bool est = !estimated.has_undirected(e.from, e.to);
    const bool tru = !truth.has_undirected(e.from, e.to);
    if (est && !tru) ++m.falsely_kept;
    if (!est && tru) ++m.falsely_removed;
  }
  m.denom = static_cast<int>(cpdag.undirected_count());
  return m;
}

}  // namespace plsem
