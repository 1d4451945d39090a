#include <map>

#include "doctest.h"
#include "plsem/error.hpp"
#include "plsem/estimators.hpp"
#include "plsem/meek.hpp"
#include "plsem/oracle.hpp"
#include "plsem/simulation.hpp"
#include "support.hpp"

using namespace plsem;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

const Dag kFig1D1(3, {{1, 2}, {1, 3}, {2, 3}});
const Dag kFig1D2(3, {{1, 2}, {1, 3}, {3, 2}});

std::vector<Edge> sorted(std::vector<Edge> e) {
  std::sort(e.begin(), e.end());
  return e;
}

Plsem random_model(std::uint64_t seed, int max_p) {
  Rng rng(seed);
  int p = 2 + static_cast<int>(rng.next_u64() % (max_p - 1));
  Dag d = random_dag(p, rng.uniform(0.2, 0.8), derive_seed(seed, 1));
  return random_plsem(d, rng.uniform(0.2, 0.8), derive_seed(seed, 2));
}

// PDAG directing exactly the edges whose orientation is shared by all DAGs.
Pdag common_orientations(const std::vector<Dag>& dags) {
  const Dag& first = dags.front();
  std::vector<Edge> dir, und;
  for (const Edge& e : first.edges()) {
    bool shared = std::all_of(dags.begin(), dags.end(), [&](const Dag& d) { return d.has_edge(e.from, e.to); });
    (shared ? dir : und).push_back(e);
  }
  return Pdag(first.node_count(), dir, und);
}

bool is_trace(const DecisionRecord& r, Edge e, std::vector<int> cover, Verdict v) {
  return r.edge == e && r.cover == cover && r.verdict == v;
}

}  // namespace

TEST_SUITE("estimators") {
  TEST_CASE("initial_knowledge") {
    Dag d0 = testing::load_graph("fig9_d0.txt").to_dag();
    CHECK(sorted(initial_knowledge(d0)) == sorted({{2, 3}, {6, 4}, {4, 5}, {6, 5}, {5, 7}}));
    CHECK(initial_knowledge(Dag(3, {{1, 3}, {2, 3}})).empty());
  }

  TEST_CASE("Figure 9 trace with oracle decisions") {
    Plsem m = testing::load_model("fig9.json");
    Dag d0 = testing::load_graph("fig9_d0.txt").to_dag();
    CHECK(m.dag() == d0);
    EquivResult r = compute_gdpx(d0, oracle_scorer(fixed_pairs(m)), 1.0);
    REQUIRE(r.trace.size() == 3);
    CHECK(is_trace(r.trace[0], {6, 4}, {}, Verdict::Undirect));
    CHECK(is_trace(r.trace[1], {4, 5}, {6}, Verdict::Keep));
    CHECK(is_trace(r.trace[2], {6, 5}, {4}, Verdict::Undirect));
    REQUIRE(r.knowledge_history.size() == 4);
    CHECK(sorted(r.knowledge_history[0]) == sorted({{2, 3}, {6, 4}, {4, 5}, {6, 5}, {5, 7}}));
    CHECK(sorted(r.knowledge_history[1]) == sorted({{2, 3}, {4, 5}, {6, 5}, {5, 7}}));
    CHECK(sorted(r.knowledge_history[2]) == sorted({{2, 3}, {6, 5}, {5, 7}}));
    CHECK(sorted(r.knowledge_history[3]) == sorted({{2, 3}, {5, 7}}));
    CHECK(*r.gdpx == testing::load_graph("fig9_final.txt"));
    CHECK_FALSE(r.dags.has_value());
  }

  TEST_CASE("compute_gdpx degenerate inputs") {
    Dag collider(3, {{1, 3}, {2, 3}});
    int calls = 0;
    ReversalScorer count = [&](int, int, std::span<const int>) {
      ++calls;
      return 0.0;
    };
    EquivResult r = compute_gdpx(collider, count, 0.05);
    CHECK(*r.gdpx == Pdag::from_dag(collider));
    CHECK(calls == 0);
    CHECK(r.trace.empty());

    Dag d(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
    CHECK(*compute_gdpx(d, oracle_scorer(FixedPairSet()), 1.0).gdpx == maximally_oriented(pattern(d), {}));
    CHECK(kind_of([&] { compute_gdpx(d, count, -1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { compute_gdpx(DataMatrix::Zero(20, 3), d, EstimationConfig{}); }) ==
          ErrorKind::DimensionMismatch);
  }

  TEST_CASE("lister with injected decisions") {
    Plsem fig1 = testing::load_model("fig1_d1.json");
    EquivResult r = list_all_dags_plsem(kFig1D1, oracle_scorer(fixed_pairs(fig1)), 1.0, 100);
    CHECK(*r.dags == std::vector<Dag>{kFig1D1, kFig1D2});
    CHECK_FALSE(r.gdpx.has_value());
    CHECK(r.trace.front().edge == Edge{1, 2});
    CHECK(r.trace.front().verdict == Verdict::Keep);

    // A negative delta grows the reversed branch's budget.
    ReversalScorer negative = [](int, int, std::span<const int>) { return -0.5; };
    EquivResult g = list_all_dags_plsem(kFig1D1, negative, 0.1, 10);
    CHECK(g.dags->size() == 6);
    CHECK(g.trace.front().budget_grew);
    CHECK(std::any_of(g.trace.begin(), g.trace.end(), [](const DecisionRecord& t) { return t.alpha == 0.6; }));

    ReversalScorer zero = [](int, int, std::span<const int>) { return 0.0; };
    CHECK(kind_of([&] { list_all_dags_plsem(kFig1D1, zero, 1.0, 5); }) == ErrorKind::CapExceeded);
    CHECK(list_all_dags_plsem(kFig1D1, zero, 1.0, 6).dags->size() == 6);
  }

  TEST_CASE("oracle decisions reproduce the population class") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      Plsem m = random_model(seed, 8);
      std::vector<Dag> listed = oracle_enumerate(m, 1000000);
      ReversalScorer oracle = oracle_scorer(fixed_pairs(m));
      EquivResult g = compute_gdpx(m.dag(), oracle, 1.0);
      CHECK(*g.gdpx == common_orientations(listed));
      CHECK(g.trace.size() <= initial_knowledge(m.dag()).size());
      CHECK(*list_all_dags_plsem(m.dag(), oracle, 1.0, 1000000).dags == listed);
    }
  }

  TEST_CASE("score tests never exceed the initial knowledge size") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      Rng rng(seed);
      Dag d = random_dag(3 + static_cast<int>(rng.next_u64() % 10), rng.uniform(0.1, 0.6), derive_seed(seed, 4));
      ReversalScorer coin = [&rng](int, int, std::span<const int>) { return rng.uniform(); };
      EquivResult r = compute_gdpx(d, coin, 0.5);
      CHECK(r.trace.size() <= initial_knowledge(d).size());
      CHECK(r.knowledge_history.size() == r.trace.size() + 1);
      std::set<Edge> tested;
      for (const DecisionRecord& t : r.trace) CHECK(tested.insert(t.edge).second);
    }
  }

  TEST_CASE("orientation_metrics") {
    Plsem m = testing::load_model("fig9.json");
    Pdag truth = testing::load_graph("fig9_final.txt");
    Pdag cpdag = maximally_oriented(pattern(m.dag()), {});
    OrientationMetrics same = orientation_metrics(truth, truth, cpdag);
    CHECK(same.falsely_kept == 0);
    CHECK(same.falsely_removed == 0);
    CHECK(same.denom == 4);

    Pdag extra = truth;
    extra.orient(6, 5);
    OrientationMetrics one = orientation_metrics(extra, truth, cpdag);
    CHECK(one.falsely_kept == 1);
    CHECK(one.falsely_removed == 0);

    Pdag directed = Pdag::from_dag(m.dag());
    OrientationMetrics removed = orientation_metrics(cpdag, directed, cpdag);
    CHECK(removed.falsely_kept == 0);
    CHECK(removed.falsely_removed == 4);
    CHECK(removed.denom == 4);

    CHECK(kind_of([&] { orientation_metrics(Pdag(7, {}, {}), truth, cpdag); }) == ErrorKind::SkeletonMismatch);
  }

  TEST_CASE("data: Figure 1 class") {
    Plsem m = testing::load_model("fig1_d1.json");
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      EquivResult r = list_all_dags_plsem(sample(m, 2000, seed), kFig1D1, EstimationConfig{0.1, {}, 100});
      hits += *r.dags == std::vector<Dag>{kFig1D1, kFig1D2};
    }
    CHECK(hits >= 18);
  }

  TEST_CASE("data: all-nonlinear models give a singleton class") {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      Dag d = random_dag(5, 0.5, derive_seed(seed, 1));
      Plsem m = random_plsem(d, 0.0, derive_seed(seed, 2));
      EquivResult r = list_all_dags_plsem(sample(m, 2000, derive_seed(seed, 3)), d, EstimationConfig{0.05, {}, 1000});
      hits += *r.dags == std::vector<Dag>{d};
    }
    CHECK(hits >= 48);
  }

  TEST_CASE("data: all-linear complete DAG gives the Markov class") {
    Dag d(3, {{1, 2}, {1, 3}, {2, 3}});
    Plsem m(d, {0, 0, 0}, {1, 1, 1},
            {{{1, 2}, EdgeFunction::linear(0.9)}, {{1, 3}, EdgeFunction::linear(-0.7)}, {{2, 3}, EdgeFunction::linear(1.1)}});
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      EquivResult r = list_all_dags_plsem(sample(m, 2000, seed), d, EstimationConfig{0.3, {}, 100});
      hits += r.dags->size() == 6;
    }
    CHECK(hits >= 19);
  }

  TEST_CASE("data: Figure 9 decisions") {
    Plsem m = testing::load_model("fig9.json");
    Pdag expected = testing::load_graph("fig9_final.txt");
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      EquivResult r = compute_gdpx(sample(m, 2000, seed), m.dag(), EstimationConfig{});
      bool trace_ok = r.trace.size() == 3 && r.trace[0].edge == Edge{6, 4} && r.trace[1].edge == Edge{4, 5} &&
                      r.trace[2].edge == Edge{6, 5};
      hits += trace_ok && *r.gdpx == expected;
    }
    CHECK(hits >= 18);
  }

  TEST_CASE("data: all-linear model gives the CPDAG") {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Dag d = random_dag(6, 0.4, derive_seed(seed, 1));
      Plsem m = random_plsem(d, 1.0, derive_seed(seed, 2));
      EquivResult r = compute_gdpx(sample(m, 2000, derive_seed(seed, 3)), d, EstimationConfig{});
      hits += *r.gdpx == maximally_oriented(pattern(d), {});
    }
    CHECK(hits >= 18);
  }

  TEST_CASE("data: error rates shrink with the sample size") {
    std::vector<double> total;
    for (int n : {200, 500, 1000, 2000}) {
      SimConfig cfg;
      cfg.n = n;
      cfg.nrep = 50;
      std::vector<ExperimentRow> rows = run_experiment(cfg);
      total.push_back(rows.front().falsely_kept_pct + rows.front().falsely_removed_pct);
      MESSAGE("n=" << n << " kept%=" << rows.front().falsely_kept_pct << " removed%=" << rows.front().falsely_removed_pct);
    }
    for (std::size_t k = 1; k < total.size(); ++k) CHECK(total[k] <= total[k - 1] + 3.0);
    CHECK(total.back() < total.front());
  }
}
