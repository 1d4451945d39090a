#include "plsem/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "plsem/error.hpp"
#include "plsem/estimators.hpp"
#include "plsem/meek.hpp"
#include "plsem/oracle.hpp"
#include "plsem/random.hpp"

namespace plsem {

namespace {

void check_prob(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must lie in [0, 1]");
}

double signed_uniform(Rng& rng, double lo, double hi) {
  double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
  return sign * rng.uniform(lo, hi);
}

// Runs body(k) for k in [0, count) on up to worker_threads() threads and
// rethrows the first failure.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t nthreads = std::min<std::size_t>(worker_threads(), count);
  if (nthreads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct Replicate {
  Dag dag;
  Plsem model;
  DataMatrix data;
};

Replicate make_replicate(int p, double pc, double plin, int n, std::uint64_t seed) {
  Dag d = random_dag(p, pc, derive_seed(seed, 1));
  Plsem m = random_plsem(d, plin, derive_seed(seed, 2));
  DataMatrix x = sample(m, n, derive_seed(seed, 3));
  return {std::move(d), std::move(m), std::move(x)};
}

}  // namespace

unsigned worker_threads() {
  if (const char* env = std::getenv("PLSEM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Dag random_dag(int p, double pc, std::uint64_t seed) {
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "p must be at least 1");
  check_prob(pc, "pc");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int i = 1; i <= p; ++i)
    for (int j = i + 1; j <= p; ++j)
      if (rng.bernoulli(pc)) edges.push_back({i, j});
  return Dag(p, edges);
}

Plsem random_plsem(const Dag& d, double plin, std::uint64_t seed) {
  check_prob(plin, "plin");
  Rng rng(seed);
  std::map<Edge, EdgeFunction> fns;
  for (const Edge& e : d.edges()) {
    if (rng.bernoulli(plin)) {
      fns.emplace(e, EdgeFunction::linear(signed_uniform(rng, 0.5, 1.5)));
      continue;
    }
    const bool use_cos = rng.bernoulli(0.5);
    const double c0 = signed_uniform(rng, 1.0, 2.0);
    const double c1 = rng.uniform(1.0, 2.0);
    const double c2 = rng.uniform(-std::numbers::pi / 3.0, std::numbers::pi / 3.0);
    FunctionAtom atom = use_cos ? FunctionAtom::cos_wave(c1, c2) : FunctionAtom::tanh_wave(c1, c2);
    fns.emplace(e, EdgeFunction({Term{c0, atom}}));
  }
  std::vector<double> mu(d.node_count(), 0.0);
  std::vector<double> sigma2(d.node_count());
  for (int j = 1; j <= d.node_count(); ++j)
    sigma2[j - 1] = d.parents(j).empty() ? rng.uniform(1.0, 2.0) : rng.uniform(0.25, 0.5);
  return Plsem(d, std::move(mu), std::move(sigma2), std::move(fns));
}

std::vector<ExperimentRow> run_experiment(const SimConfig& cfg) {
  if (cfg.p < 1 || cfg.n < 1 || cfg.nrep < 1) throw Error(ErrorKind::InvalidArgument, "p, n and nrep must be positive");
  check_prob(cfg.pc, "pc");
  check_prob(cfg.plin, "plin");
  if (cfg.alpha_grid.empty()) throw Error(ErrorKind::InvalidArgument, "alpha grid is empty");
  for (double a : cfg.alpha_grid)
    if (!(a >= 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be non-negative");

  const std::size_t na = cfg.alpha_grid.size();
  // metrics[rep][alpha]
  std::vector<std::vector<OrientationMetrics>> metrics(cfg.nrep, std::vector<OrientationMetrics>(na));
  parallel_for(static_cast<std::size_t>(cfg.nrep), [&](std::size_t rep) {
    Replicate r = make_replicate(cfg.p, cfg.pc, cfg.plin, cfg.n, derive_seed(cfg.seed, rep));
    const Pdag truth = oracle_gdpx(r.model);
    const Pdag cpdag = maximally_oriented(pattern(r.dag), {});
    NodeScoreCache cache(r.data, cfg.basis);
    for (std::size_t a = 0; a < na; ++a) {
      EquivResult est = compute_gdpx(cache, r.dag, cfg.alpha_grid[a]);
      metrics[rep][a] = orientation_metrics(*est.gdpx, truth, cpdag);
    }
  });

  std::vector<ExperimentRow> rows;
  for (std::size_t a = 0; a < na; ++a) {
    ExperimentRow row{cfg.alpha_grid[a], cfg.n, cfg.p, cfg.plin, cfg.pc, 0.0, 0.0, cfg.nrep, 0};
    for (int rep = 0; rep < cfg.nrep; ++rep) {
      const OrientationMetrics& m = metrics[rep][a];
      if (m.denom == 0) continue;
      row.falsely_kept_pct += 100.0 * m.falsely_kept / m.denom;
      row.falsely_removed_pct += 100.0 * m.falsely_removed / m.denom;
      ++row.nrep_scored;
    }
    if (row.nrep_scored > 0) {
      row.falsely_kept_pct /= row.nrep_scored;
      row.falsely_removed_pct /= row.nrep_scored;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TimingRow> benchmark_timing(const BenchmarkConfig& cfg) {
  if (cfg.reps < 5) throw Error(ErrorKind::InvalidArgument, "benchmark needs at least 5 repetitions");
  if (cfg.n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  std::vector<TimingRow> rows;
  for (int p : cfg.p_list) {
    if (p < 1) throw Error(ErrorKind::InvalidArgument, "p must be at least 1");
    double pc = cfg.pc >= 0.0 ? cfg.pc : (p > 1 ? std::min(1.0, 2.0 * cfg.edges_per_node / (p - 1)) : 0.0);
    std::vector<double> secs;
    for (int rep = 0; rep < cfg.reps; ++rep) {
      Replicate r = make_replicate(p, pc, cfg.plin, cfg.n, derive_seed(derive_seed(cfg.seed, p), rep));
      EstimationConfig ec{cfg.alpha, cfg.basis, 1};
      auto t0 = std::chrono::steady_clock::now();
      compute_gdpx(r.data, r.dag, ec);
      auto t1 = std::chrono::steady_clock::now();
      secs.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(secs.begin(), secs.end());
    const std::size_t h = secs.size() / 2;
    double median = secs.size() % 2 ? secs[h] : 0.5 * (secs[h - 1] + secs[h]);
    rows.push_back({p, pc * p * (p - 1) / 2.0, cfg.plin, median});
  }
  return rows;
}

}  // namespace plsem
