// plsem command-line front end. Talks to the library only through the C
// interface in plsem/plsem.h.
//
// Exit codes: 0 success, 1 usage error, 2 data or model error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plsem/plsem.h"

namespace {

constexpr int kDomainError = 2;

struct DomainError {
  plsem_status status;
  std::string message;
};

void check(plsem_status s) {
  if (s != PLSEM_OK) throw DomainError{s, plsem_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Graph = std::unique_ptr<plsem_graph, Deleter<plsem_graph, plsem_graph_free>>;
using Model = std::unique_ptr<plsem_model, Deleter<plsem_model, plsem_model_free>>;
using Data = std::unique_ptr<plsem_data, Deleter<plsem_data, plsem_data_free>>;
using Result = std::unique_ptr<plsem_result, Deleter<plsem_result, plsem_result_free>>;
using CString = std::unique_ptr<char, Deleter<char, plsem_string_free>>;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw DomainError{PLSEM_IO_ERROR, "cannot open '" + path + "' for writing"};
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

void emit_result(const plsem_result* r, const std::string& out, const std::string& trace) {
  char* text = nullptr;
  check(plsem_result_to_string(r, &text));
  CString owned(text);
  emit(text, out);
  if (!trace.empty()) {
    char* lines = nullptr;
    check(plsem_result_trace(r, &lines));
    CString owned_lines(lines);
    emit(lines, trace);
  }
}

plsem_mode parse_mode(const std::string& m) { return m == "enumerate" ? PLSEM_MODE_ENUMERATE : PLSEM_MODE_GDPX; }

struct SimulateArgs {
  int p = 10;
  double pc = 2.0 / 9.0;
  double plin = 0.5;
  int n = 1000;
  uint64_t seed = 1;
  std::string out_model, out_data, out_dag;
};

struct EstimateArgs {
  std::string data, dag, out, trace;
  double alpha = 0.0;
  std::string mode = "gdpx";
  int basis_dim = 6;
  size_t cap = 100000;
};

struct OracleArgs {
  std::string model, out;
  std::string mode = "gdpx";
  size_t cap = 100000;
};

struct BenchmarkArgs {
  std::vector<int> p_list{10, 100, 1000};
  double pc = -1.0;
  double edges_per_node = 1.0;
  double plin = 1.0;
  int n = 400;
  double alpha = 0.05;
  int reps = 5;
  uint64_t seed = 1;
  std::string out;
};

struct ExperimentArgs {
  int p = 10;
  double pc = 2.0 / 9.0;
  double plin = 0.5;
  int n = 1000;
  int nrep = 50;
  std::vector<double> alphas{0.05};
  uint64_t seed = 1;
  int basis_dim = 6;
  std::string out;
};

void run_simulate(const SimulateArgs& a) {
  plsem_model* m = nullptr;
  plsem_data* x = nullptr;
  check(plsem_simulate(a.p, a.pc, a.plin, a.n, a.seed, &m, &x));
  Model model(m);
  Data data(x);
  check(plsem_model_write(model.get(), a.out_model.c_str()));
  check(plsem_data_write_csv(data.get(), a.out_data.c_str()));
  if (!a.out_dag.empty()) {
    plsem_graph* g = nullptr;
    check(plsem_model_graph(model.get(), &g));
    Graph graph(g);
    check(plsem_graph_write(graph.get(), a.out_dag.c_str()));
  }
}

void run_estimate(const EstimateArgs& a, plsem_mode mode) {
  plsem_data* x = nullptr;
  check(plsem_data_read_csv(a.data.c_str(), &x));
  Data data(x);
  plsem_graph* g = nullptr;
  check(plsem_graph_read(a.dag.c_str(), &g));
  Graph dag(g);
  plsem_estimate_options opt{a.alpha, a.basis_dim, a.cap};
  plsem_result* r = nullptr;
  check(plsem_estimate(data.get(), dag.get(), mode, &opt, &r));
  Result result(r);
  emit_result(result.get(), a.out, a.trace);
}

void run_oracle(const OracleArgs& a) {
  plsem_model* m = nullptr;
  check(plsem_model_read(a.model.c_str(), &m));
  Model model(m);
  plsem_result* r = nullptr;
  check(plsem_oracle(model.get(), parse_mode(a.mode), a.cap, &r));
  Result result(r);
  emit_result(result.get(), a.out, "");
}

void run_benchmark(const BenchmarkArgs& a) {
  plsem_benchmark_options opt{a.p_list.data(), a.p_list.size(), a.pc,    a.edges_per_node,
                              a.plin,          a.n,             a.alpha, a.reps,
                              a.seed};
  char* csv = nullptr;
  check(plsem_benchmark(&opt, &csv));
  CString owned(csv);
  emit(csv, a.out);
}

void run_experiment(const ExperimentArgs& a) {
  plsem_experiment_options opt{a.p, a.pc, a.plin, a.n, a.nrep, a.alphas.data(), a.alphas.size(), a.seed, a.basis_dim};
  char* csv = nullptr;
  check(plsem_experiment(&opt, &csv));
  CString owned(csv);
  emit(csv, a.out);
}

void add_estimate_flags(CLI::App* cmd, EstimateArgs& a, bool with_mode) {
  cmd->add_option("--data", a.data, "CSV data with header X1..Xp")->required()->check(CLI::ExistingFile);
  cmd->add_option("--dag", a.dag, "graph file holding the starting DAG")->required()->check(CLI::ExistingFile);
  cmd->add_option("--alpha", a.alpha, "score-gap threshold")->required()->check(CLI::NonNegativeNumber);
  if (with_mode)
    cmd->add_option("--mode", a.mode, "gdpx (PDAG) or enumerate (DAG list)")
        ->capture_default_str()
        ->check(CLI::IsMember({"gdpx", "enumerate"}));
  cmd->add_option("--basis-dim", a.basis_dim, "spline basis functions per smooth term")
      ->capture_default_str()
      ->check(CLI::Range(3, 1000));
  cmd->add_option("--cap", a.cap, "maximum number of listed DAGs")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--out", a.out, "output file (default: stdout)");
  cmd->add_option("--trace", a.trace, "write one line per score test to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution equivalence classes of partially linear additive Gaussian SEMs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");
  app.failure_message(CLI::FailureMessage::help);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "draw a random DAG, PLSEM and data set");
  simulate->add_option("--p", sim.p, "number of nodes")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--pc", sim.pc, "edge probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--plin", sim.plin, "probability that an edge is linear")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--n", sim.n, "sample size")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "random seed")->capture_default_str();
  simulate->add_option("--out-model", sim.out_model, "model JSON output")->required();
  simulate->add_option("--out-data", sim.out_data, "CSV data output")->required();
  simulate->add_option("--out-dag", sim.out_dag, "graph file output for the true DAG");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "estimate the class from data and a DAG in it");
  add_estimate_flags(estimate, est, true);

  EstimateArgs enu;
  auto* enumerate = app.add_subcommand("enumerate", "same as estimate --mode enumerate");
  add_estimate_flags(enumerate, enu, false);

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "exact class of a known model");
  oracle->add_option("--model", orc.model, "model JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--mode", orc.mode, "gdpx (PDAG) or enumerate (DAG list)")
      ->capture_default_str()
      ->check(CLI::IsMember({"gdpx", "enumerate"}));
  oracle->add_option("--cap", orc.cap, "maximum number of listed DAGs")->capture_default_str()->check(CLI::PositiveNumber);
  oracle->add_option("--out", orc.out, "output file (default: stdout)");

  BenchmarkArgs bench;
  auto* benchmark = app.add_subcommand("benchmark", "median computeGDPX wall time per p");
  benchmark->add_option("--p-list", bench.p_list, "node counts")->capture_default_str()->delimiter(',');
  auto* pc_opt =
      benchmark->add_option("--pc", bench.pc, "edge probability")->check(CLI::Range(0.0, 1.0));
  benchmark->add_option("--edges-per-node", bench.edges_per_node, "expected edges divided by p (when --pc is absent)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber)
      ->excludes(pc_opt);
  benchmark->add_option("--plin", bench.plin, "probability that an edge is linear")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  benchmark->add_option("--n", bench.n, "sample size")->capture_default_str()->check(CLI::PositiveNumber);
  benchmark->add_option("--alpha", bench.alpha, "score-gap threshold")->capture_default_str()->check(CLI::NonNegativeNumber);
  benchmark->add_option("--reps", bench.reps, "runs per p (at least 5)")->capture_default_str()->check(CLI::Range(5, 1000000));
  benchmark->add_option("--seed", bench.seed, "random seed")->capture_default_str();
  benchmark->add_option("--out", bench.out, "CSV output (default: stdout)");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "orientation error rates over simulated replicates");
  experiment->add_option("--p", exp.p, "number of nodes")->capture_default_str()->check(CLI::PositiveNumber);
  experiment->add_option("--pc", exp.pc, "edge probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  experiment->add_option("--plin", exp.plin, "probability that an edge is linear")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  experiment->add_option("--n", exp.n, "sample size")->capture_default_str()->check(CLI::PositiveNumber);
  experiment->add_option("--nrep", exp.nrep, "replicates")->capture_default_str()->check(CLI::PositiveNumber);
  experiment->add_option("--alpha", exp.alphas, "alpha grid")->capture_default_str()->delimiter(',');
  experiment->add_option("--seed", exp.seed, "random seed")->capture_default_str();
  experiment->add_option("--basis-dim", exp.basis_dim, "spline basis functions per smooth term")
      ->capture_default_str()
      ->check(CLI::Range(3, 1000));
  experiment->add_option("--out", exp.out, "CSV output (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*simulate) run_simulate(sim);
    if (*estimate) run_estimate(est, parse_mode(est.mode));
    if (*enumerate) run_estimate(enu, PLSEM_MODE_ENUMERATE);
    if (*oracle) run_oracle(orc);
    if (*benchmark) run_benchmark(bench);
    if (*experiment) run_experiment(exp);
  } catch (const DomainError& e) {
    std::cerr << "error: " << plsem_status_name(e.status) << ": " << e.message << "\n";
    return kDomainError;
  }
  return 0;
}
