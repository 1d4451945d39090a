#pragma once

// Score-based estimation of the distribution equivalence class from a DAG
// D0 in the class: the recursive DAG lister and the PDAG construction
// computeGDPX, plus orientation error metrics.
//
// Both estimators take a ReversalScorer so the combinatorial layer can be
// driven either by data (NodeScoreCache::delta) or by an oracle.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "plsem/graph.hpp"
#include "plsem/model.hpp"
#include "plsem/scoring.hpp"

namespace plsem {

// Score difference for reversing the covered edge i -> j with cover S.
using ReversalScorer = std::function<double(int i, int j, std::span<const int> cover)>;

struct EstimationConfig {
  double alpha = 0.05;
  BasisConfig basis;
  std::size_t cap = 100000;
};

enum class Verdict { Keep, Undirect };

const char* verdict_name(Verdict v) noexcept;

struct DecisionRecord {
  Edge edge;
  std::vector<int> cover;
  double delta = 0.0;
  Verdict verdict = Verdict::Keep;
  double alpha = 0.0;        // threshold the test was run against
  bool budget_grew = false;  // lister only: alpha - delta > alpha
};

struct EquivResult {
  std::optional<std::vector<Dag>> dags;
  std::optional<Pdag> gdpx;
  std::vector<DecisionRecord> trace;
  // computeGDPX only: the remaining initial knowledge before each test and
  // after the last one.
  std::vector<std::vector<Edge>> knowledge_history;
};

// Orientations of d0 that its pattern leaves undirected, in processing
// order: by topological position of the head ascending, then of the tail
// descending.
std::vector<Edge> initial_knowledge(const Dag& d0);

// computeGDPX. An edge is kept iff |delta| >= alpha. Throws InvalidArgument
// if alpha < 0.
EquivResult compute_gdpx(const Dag& d0, const ReversalScorer& scorer, double alpha);
// Throws DimensionMismatch if data columns differ from d0's node count.
EquivResult compute_gdpx(const DataMatrix& data, const Dag& d0, const EstimationConfig& cfg);
// Reuses the fits already stored in `cache`.
EquivResult compute_gdpx(NodeScoreCache& cache, const Dag& d0, double alpha);

// listAllDAGsPLSEM. Picks the lexicographically smallest unfixed covered
// edge; branches iff delta < alpha with budgets alpha and alpha - delta.
// Throws CapExceeded when more than `cap` DAGs are emitted.
EquivResult list_all_dags_plsem(const Dag& d0, const ReversalScorer& scorer, double alpha, std::size_t cap);
EquivResult list_all_dags_plsem(const DataMatrix& data, const Dag& d0, const EstimationConfig& cfg);

struct OrientationMetrics {
  int falsely_kept = 0;     // undirected in truth, directed in estimate
  int falsely_removed = 0;  // directed in truth, undirected in estimate
  int denom = 0;            // undirected edges of the CPDAG
};

// Throws SkeletonMismatch unless all three graphs share a skeleton.
OrientationMetrics orientation_metrics(const Pdag& estimated, const Pdag& truth, const Pdag& cpdag);

}  // namespace plsem
