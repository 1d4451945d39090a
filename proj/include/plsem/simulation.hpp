#pragma once

// Random DAGs and PLSEMs, replicate experiments and timing runs.

#include <cstdint>
#include <vector>

#include "plsem/graph.hpp"
#include "plsem/model.hpp"
#include "plsem/scoring.hpp"

namespace plsem {

// Edge i -> j for i < j, each independently with probability pc.
// Throws InvalidArgument.
Dag random_dag(int p, double pc, std::uint64_t seed);

// Per edge (in sorted order): linear with probability plin and coefficient
// +-U[0.5, 1.5]; otherwise c0 * cos(c1 (x - c2)) or c0 * tanh(c1 (x - c2))
// with equal probability, c0 = +-U[1, 2], c1 = U[1, 2], c2 = U[-pi/3, pi/3].
// Noise variances U[1, 2] at sources and U[1/4, 1/2] elsewhere; mu = 0.
Plsem random_plsem(const Dag& d, double plin, std::uint64_t seed);

struct SimConfig {
  int p = 10;
  double pc = 2.0 / 9.0;
  double plin = 0.5;
  int n = 1000;
  int nrep = 50;
  std::vector<double> alpha_grid{0.05};
  std::uint64_t seed = 1;
  BasisConfig basis;
};

struct ExperimentRow {
  double alpha = 0.0;
  int n = 0;
  int p = 0;
  double plin = 0.0;
  double pc = 0.0;
  double falsely_kept_pct = 0.0;
  double falsely_removed_pct = 0.0;
  int nrep = 0;
  int nrep_scored = 0;  // replicates whose CPDAG has an undirected edge
};

// Percentages are per-replicate rates averaged over replicates with at
// least one undirected CPDAG edge. Replicates run on up to
// worker_threads() threads; results do not depend on the thread count.
std::vector<ExperimentRow> run_experiment(const SimConfig& cfg);

struct TimingRow {
  int p = 0;
  double expected_edges = 0.0;
  double plin = 0.0;
  double median_seconds = 0.0;
};

struct BenchmarkConfig {
  std::vector<int> p_list{10, 100};
  double pc = -1.0;              // used when >= 0
  double edges_per_node = 1.0;   // otherwise pc = 2 * edges_per_node / (p - 1)
  double plin = 1.0;
  int n = 400;
  double alpha = 0.05;
  int reps = 5;
  std::uint64_t seed = 1;
  BasisConfig basis;
};

// Median wall time of compute_gdpx (scoring included, data generation
// excluded) over cfg.reps runs per p. Throws InvalidArgument if reps < 5.
std::vector<TimingRow> benchmark_timing(const BenchmarkConfig& cfg);

// PLSEM_THREADS if set to a positive integer, else hardware concurrency.
unsigned worker_threads();

}  // namespace plsem
