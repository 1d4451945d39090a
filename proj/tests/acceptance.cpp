// Acceptance checks AC1-AC10. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "plsem/estimators.hpp"
#include "plsem/meek.hpp"
#include "plsem/oracle.hpp"
#include "plsem/scoring.hpp"
#include "plsem/simulation.hpp"
#include "support.hpp"

using namespace plsem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

double weight(const EdgeFunction& f, const FunctionAtom& atom) {
  for (const Term& t : f.terms())
    if (t.atom == atom) return t.weight;
  return 0.0;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<Edge> sorted(std::vector<Edge> e) {
  std::sort(e.begin(), e.end());
  return e;
}

const FunctionAtom kId = FunctionAtom::identity();
const FunctionAtom kSq = FunctionAtom::power(2);

Outcome ac1() {
  auto t0 = Clock::now();
  Plsem m = testing::load_model("fig4.json");
  Plsem r = reverse_covered_linear_edge(reverse_covered_linear_edge(m, 2, 3), 1, 3);
  const double tol = 1e-12;
  bool ok = r.dag() == Dag(3, {{3, 1}, {1, 2}, {3, 2}});
  ok = ok && near(r.sigma2(1), 2.0 / 3.0, tol) && near(r.sigma2(2), 0.5, tol) && near(r.sigma2(3), 3.0, tol);
  ok = ok && near(weight(r.function(3, 1), kId), 1.0 / 3.0, tol) && r.function(3, 1).terms().size() == 1;
  ok = ok && near(weight(r.function(1, 2), kId), 0.5, tol) && near(weight(r.function(1, 2), kSq), 1.0, tol) &&
       r.function(1, 2).terms().size() == 2;
  ok = ok && near(weight(r.function(3, 2), kId), 0.5, tol) && r.function(3, 2).terms().size() == 1;
  double gap = max_log_density_gap(m, r, 1000, 1);
  ok = ok && gap <= 1e-9;
  double secs = seconds_since(t0);
  ok = ok && secs < 1.0;
  return {ok, "max log-density gap " + fmt("%.2e", gap) + ", " + fmt("%.3f", secs) + " s"};
}

Outcome ac2() {
  Plsem m = testing::load_model("fig5.json");
  Plsem r = reverse_covered_linear_edge(m, 3, 4);
  const double tol = 1e-12;
  bool ok = r.dag() == Dag(4, {{1, 2}, {2, 3}, {4, 3}});
  ok = ok && r.dag().parents(4).empty() && near(r.sigma2(4), 2.0, tol);
  ok = ok && near(weight(r.function(2, 3), kId), 1.0, tol) && near(weight(r.function(4, 3), kId), 0.5, tol) &&
       near(r.sigma2(3), 0.5, tol);
  ok = ok && densities_equal(m, r, 1000, 2, 1e-9);
  return {ok, "edge 2->4 dropped, Var(X4) = " + fmt("%.15g", r.sigma2(4))};
}

Outcome ac3() {
  Plsem m = testing::load_model("fig1_d1.json");
  const Dag d1(3, {{1, 2}, {1, 3}, {2, 3}});
  const Dag d2(3, {{1, 2}, {1, 3}, {3, 2}});
  bool ok = oracle_enumerate(m, 100) == std::vector<Dag>{d1, d2};
  bool nonlinear = false;
  for (const Plsem& x : oracle_enumerate_models(m, 100))
    if (x.dag() == d2) nonlinear = !is_edge_linear(x, 1, 3);
  ok = ok && is_edge_linear(m, 1, 3) && nonlinear;
  return {ok, std::string("1->3 nonlinear in D2: ") + (nonlinear ? "yes" : "no")};
}

Outcome ac4() {
  Plsem m = testing::load_model("example4.json");
  Pdag g = oracle_gdpx(m);
  bool ok = g == Pdag(4, {{1, 2}, {2, 4}}, {{1, 3}, {2, 3}});
  std::vector<Dag> ext = consistent_extensions(g, 100);
  std::vector<Dag> expected{Dag(4, {{1, 2}, {2, 4}, {3, 1}, {3, 2}}), Dag(4, {{1, 2}, {2, 4}, {1, 3}, {3, 2}}),
                            Dag(4, {{1, 2}, {2, 4}, {1, 3}, {2, 3}})};
  std::sort(expected.begin(), expected.end());
  ok = ok && ext == expected;
  // The remaining orientation 2 -> 3 -> 1 closes the cycle 1 -> 2 -> 3 -> 1.
  ok = ok && !testing::acyclic(4, {{1, 2}, {2, 4}, {2, 3}, {3, 1}});
  ok = ok && oracle_enumerate(m, 100) == expected;
  return {ok, std::to_string(ext.size()) + " extensions"};
}

Outcome ac5() {
  Plsem m = testing::load_model("fig9.json");
  EquivResult r = compute_gdpx(m.dag(), oracle_scorer(fixed_pairs(m)), 1.0);
  const std::vector<std::vector<Edge>> expected{{{2, 3}, {6, 4}, {4, 5}, {6, 5}, {5, 7}},
                                                {{2, 3}, {4, 5}, {6, 5}, {5, 7}},
                                                {{2, 3}, {6, 5}, {5, 7}},
                                                {{2, 3}, {5, 7}}};
  bool ok = r.knowledge_history.size() == expected.size();
  for (std::size_t k = 0; ok && k < expected.size(); ++k) ok = sorted(r.knowledge_history[k]) == sorted(expected[k]);
  ok = ok && r.trace.size() == 3 && r.trace[0].edge == Edge{6, 4} && r.trace[0].verdict == Verdict::Undirect &&
       r.trace[1].edge == Edge{4, 5} && r.trace[1].verdict == Verdict::Keep && r.trace[2].edge == Edge{6, 5} &&
       r.trace[2].verdict == Verdict::Undirect;
  for (const DecisionRecord& t : r.trace) ok = ok && !(t.edge == Edge{2, 3}) && !(t.edge == Edge{5, 7});
  ok = ok && *r.gdpx == testing::load_graph("fig9_final.txt");
  return {ok, std::to_string(r.trace.size()) + " score tests, " + std::to_string(r.knowledge_history.size()) +
                  " knowledge sets"};
}

Outcome ac6() {
  auto t0 = Clock::now();
  int agree = 0, steps = 0, density_ok = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    int p = 2 + static_cast<int>(rng.next_u64() % 6);
    Dag d = random_dag(p, rng.uniform(0.3, 0.9), derive_seed(seed, 1));
    Plsem m = random_plsem(d, rng.uniform(0.3, 0.8), derive_seed(seed, 2));
    agree += oracle_enumerate(m, 100000) == consistent_extensions(oracle_gdpx(m), 100000);
    for (const Plsem& x : oracle_enumerate_models(m, 100000)) {
      ++steps;
      density_ok += densities_equal(m, x, 1000, seed, 1e-9);
    }
  }
  double secs = seconds_since(t0);
  bool ok = agree == 200 && density_ok == steps && secs < 120.0;
  return {ok, std::to_string(agree) + "/200 classes agree, " + std::to_string(density_ok) + "/" +
                  std::to_string(steps) + " models density-equal, " + fmt("%.1f", secs) + " s"};
}

Outcome ac7() {
  int confluent = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    Rng rng(seed);
    int p = 3 + static_cast<int>(rng.next_u64() % 6);
    Dag d = random_dag(p, rng.uniform(0.2, 0.8), derive_seed(seed, 11));
    Pdag g = testing::random_knowledge_pdag(d, rng.uniform(0.0, 0.6), rng);
    Pdag closed = meek_closure(g);
    bool same = true;
    for (int trial = 0; trial < 3; ++trial) same = same && testing::random_order_closure(g, rng) == closed;
    confluent += same;
  }
  int classes = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    int p = 2 + static_cast<int>(rng.next_u64() % 5);
    Dag d = random_dag(p, rng.uniform(0.2, 1.0), derive_seed(seed, 3));
    std::vector<Dag> ext = consistent_extensions(maximally_oriented(pattern(d), {}), 100000);
    std::set<Dag> brute = testing::markov_class(d);
    classes += std::vector<Dag>(brute.begin(), brute.end()) == ext;
  }
  return {confluent == 500 && classes == 200,
          std::to_string(confluent) + "/500 confluent, " + std::to_string(classes) + "/200 CPDAG classes"};
}

Outcome ac8() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (double plin : {0.2, 0.5, 0.8}) {
    SimConfig cfg;
    cfg.p = 10;
    cfg.pc = 2.0 / 9.0;
    cfg.plin = plin;
    cfg.n = 1000;
    cfg.nrep = 50;
    cfg.alpha_grid = {0.05};
    ExperimentRow row = run_experiment(cfg).front();
    ok = ok && row.falsely_kept_pct <= 10.0 && row.falsely_removed_pct <= 10.0;
    detail += "plin " + fmt("%.1f", plin) + ": kept " + fmt("%.2f", row.falsely_kept_pct) + "% removed " +
              fmt("%.2f", row.falsely_removed_pct) + "%; ";
  }
  double secs = seconds_since(t0);
  ok = ok && secs < 600.0;
  return {ok, detail + fmt("%.1f", secs) + " s"};
}

Outcome ac9() {
  std::string detail;
  bool ok = true;
  for (auto [p, limit] : {std::pair{1000, 60.0}, std::pair{5000, 600.0}}) {
    Dag d = random_dag(p, 2.0 / (p - 1), derive_seed(9, p));
    Plsem m = random_plsem(d, 1.0, derive_seed(10, p));
    DataMatrix x = sample(m, 400, derive_seed(11, p));
    auto t0 = Clock::now();
    EquivResult r = compute_gdpx(x, d, EstimationConfig{});
    double secs = seconds_since(t0);
    ok = ok && secs < limit && r.gdpx.has_value();
    detail += "p=" + std::to_string(p) + " (" + std::to_string(d.edge_count()) + " edges) " + fmt("%.2f", secs) + " s; ";
  }
  return {ok, detail};
}

Outcome ac10() {
  Plsem fig9 = testing::load_model("fig9.json");
  Plsem linear(Dag(2, {{1, 2}}), {0, 0}, {1.0, 0.5}, {{{1, 2}, EdgeFunction::linear(0.8)}});
  Plsem wave(Dag(2, {{1, 2}}), {0, 0}, {1.0, 0.1},
             {{{1, 2}, EdgeFunction({{2.0, FunctionAtom::cos_wave(1.5, 0.0)}})}});
  int sigma_ok = 0, linear_ok = 0, wave_ok = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    DataMatrix x = sample(fig9, 5000, seed);
    bool all = true;
    for (int j = 1; j <= fig9.node_count(); ++j)
      all = all && std::abs(fit_additive_node(x, j, fig9.dag().parents(j), {}).sigma_hat -
                            std::sqrt(fig9.sigma2(j))) <= 0.05;
    sigma_ok += all;
    linear_ok += std::abs(covered_reversal_delta(sample(linear, 5000, seed), 1, 2, {}, {})) <= 0.05;
    wave_ok += covered_reversal_delta(sample(wave, 5000, seed), 1, 2, {}, {}) > 0.2;
  }
  bool ok = sigma_ok >= 45 && linear_ok >= 45 && wave_ok >= 45;
  return {ok, "sigma " + std::to_string(sigma_ok) + "/50, linear delta " + std::to_string(linear_ok) +
                  "/50, nonlinear delta " + std::to_string(wave_ok) + "/50"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 Figure 4 exact equivalence", ac1},
      {"AC2 Figure 5 exact equivalence", ac2},
      {"AC3 Figure 1 enumeration", ac3},
      {"AC4 four-node class and extensions", ac4},
      {"AC5 Figure 9 trace", ac5},
      {"AC6 enumeration equals consistent extensions", ac6},
      {"AC7 Meek confluence and CPDAG classes", ac7},
      {"AC8 statistical recovery", ac8},
      {"AC9 scale", ac9},
      {"AC10 score layer", ac10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
