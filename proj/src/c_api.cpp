#include "plsem/plsem.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "plsem/error.hpp"
#include "plsem/estimators.hpp"
#include "plsem/io.hpp"
#include "plsem/meek.hpp"
#include "plsem/oracle.hpp"
#include "plsem/random.hpp"
#include "plsem/simulation.hpp"

struct plsem_graph {
  plsem::Pdag g;
};

struct plsem_model {
  plsem::Plsem m;
};

struct plsem_data {
  plsem::DataMatrix x;
};

struct plsem_result {
  std::optional<plsem::Pdag> gdpx;
  std::vector<plsem::Dag> dags;
  std::vector<plsem::DecisionRecord> trace;
};

namespace {

thread_local std::string last_error;

plsem_status to_status(plsem::ErrorKind k) {
  using plsem::ErrorKind;
  switch (k) {
    case ErrorKind::CyclicGraph: return PLSEM_CYCLIC_GRAPH;
    case ErrorKind::NoSuchEdge: return PLSEM_NO_SUCH_EDGE;
    case ErrorKind::DimensionMismatch: return PLSEM_DIMENSION_MISMATCH;
    case ErrorKind::InconsistentOrientation: return PLSEM_INCONSISTENT_ORIENTATION;
    case ErrorKind::InconsistentKnowledge: return PLSEM_INCONSISTENT_KNOWLEDGE;
    case ErrorKind::UnknownAdjacency: return PLSEM_UNKNOWN_ADJACENCY;
    case ErrorKind::CapExceeded: return PLSEM_CAP_EXCEEDED;
    case ErrorKind::NotRemovable: return PLSEM_NOT_REMOVABLE;
    case ErrorKind::NotCovered: return PLSEM_NOT_COVERED;
    case ErrorKind::NotLinear: return PLSEM_NOT_LINEAR;
    case ErrorKind::ZeroCoefficient: return PLSEM_ZERO_COEFFICIENT;
    case ErrorKind::DegenerateInput: return PLSEM_DEGENERATE_INPUT;
    case ErrorKind::SkeletonMismatch: return PLSEM_SKELETON_MISMATCH;
    case ErrorKind::InvalidArgument: return PLSEM_INVALID_ARGUMENT;
    case ErrorKind::ParseError: return PLSEM_PARSE_ERROR;
    case ErrorKind::IoError: return PLSEM_IO_ERROR;
  }
  return PLSEM_INTERNAL_ERROR;
}

plsem_status fail(plsem_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs body() and converts exceptions into status codes.
template <class Body>
plsem_status guard(Body body) {
  try {
    body();
    last_error.clear();
    return PLSEM_OK;
  } catch (const plsem::Error& e) {
    return fail(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PLSEM_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(PLSEM_INTERNAL_ERROR, e.what());
  }
}

#define PLSEM_REQUIRE(cond, what) \
  if (!(cond)) return fail(PLSEM_INVALID_ARGUMENT, what)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

plsem::Dag as_dag(const plsem_graph* g) {
  if (!g->g.is_fully_directed()) throw plsem::Error(plsem::ErrorKind::InvalidArgument, "graph is not a DAG");
  return g->g.to_dag();
}

template <class Row>
std::string csv_number(Row v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", static_cast<double>(v));
  return buf;
}

}  // namespace

extern "C" {

const char* plsem_status_name(plsem_status status) {
  switch (status) {
    case PLSEM_OK: return "Ok";
    case PLSEM_CYCLIC_GRAPH: return "CyclicGraph";
    case PLSEM_NO_SUCH_EDGE: return "NoSuchEdge";
    case PLSEM_DIMENSION_MISMATCH: return "DimensionMismatch";
    case PLSEM_INCONSISTENT_ORIENTATION: return "InconsistentOrientation";
    case PLSEM_INCONSISTENT_KNOWLEDGE: return "InconsistentKnowledge";
    case PLSEM_UNKNOWN_ADJACENCY: return "UnknownAdjacency";
    case PLSEM_CAP_EXCEEDED: return "CapExceeded";
    case PLSEM_NOT_REMOVABLE: return "NotRemovable";
    case PLSEM_NOT_COVERED: return "NotCovered";
    case PLSEM_NOT_LINEAR: return "NotLinear";
    case PLSEM_ZERO_COEFFICIENT: return "ZeroCoefficient";
    case PLSEM_DEGENERATE_INPUT: return "DegenerateInput";
    case PLSEM_SKELETON_MISMATCH: return "SkeletonMismatch";
    case PLSEM_INVALID_ARGUMENT: return "InvalidArgument";
    case PLSEM_PARSE_ERROR: return "ParseError";
    case PLSEM_IO_ERROR: return "IoError";
    case PLSEM_INTERNAL_ERROR: return "InternalError";
  }
  return "Unknown";
}

const char* plsem_last_error(void) { return last_error.c_str(); }

void plsem_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------------
// Graphs

plsem_status plsem_graph_parse(const char* text, plsem_graph** out) {
  PLSEM_REQUIRE(text && out, "null argument");
  return guard([&] { *out = new plsem_graph{plsem::parse_graph(text)}; });
}

plsem_status plsem_graph_read(const char* path, plsem_graph** out) {
  PLSEM_REQUIRE(path && out, "null argument");
  return guard([&] { *out = new plsem_graph{plsem::parse_graph(plsem::read_file(path))}; });
}

plsem_status plsem_graph_write(const plsem_graph* g, const char* path) {
  PLSEM_REQUIRE(g && path, "null argument");
  return guard([&] { plsem::write_file(path, plsem::format_graph(g->g)); });
}

plsem_status plsem_graph_to_string(const plsem_graph* g, char** out) {
  PLSEM_REQUIRE(g && out, "null argument");
  return guard([&] { *out = dup_string(plsem::format_graph(g->g)); });
}

int plsem_graph_node_count(const plsem_graph* g) { return g ? g->g.node_count() : 0; }
size_t plsem_graph_directed_count(const plsem_graph* g) { return g ? g->g.directed_count() : 0; }
size_t plsem_graph_undirected_count(const plsem_graph* g) { return g ? g->g.undirected_count() : 0; }

plsem_status plsem_graph_cpdag(const plsem_graph* dag, plsem_graph** out) {
  PLSEM_REQUIRE(dag && out, "null argument");
  return guard([&] { *out = new plsem_graph{plsem::maximally_oriented(plsem::pattern(as_dag(dag)), {})}; });
}

void plsem_graph_free(plsem_graph* g) { delete g; }

// ---------------------------------------------------------------------------
// Models

plsem_status plsem_model_parse(const char* text, plsem_model** out) {
  PLSEM_REQUIRE(text && out, "null argument");
  return guard([&] { *out = new plsem_model{plsem::parse_model(text)}; });
}

plsem_status plsem_model_read(const char* path, plsem_model** out) {
  PLSEM_REQUIRE(path && out, "null argument");
  return guard([&] { *out = new plsem_model{plsem::parse_model(plsem::read_file(path))}; });
}

plsem_status plsem_model_write(const plsem_model* m, const char* path) {
  PLSEM_REQUIRE(m && path, "null argument");
  return guard([&] { plsem::write_file(path, plsem::format_model(m->m)); });
}

plsem_status plsem_model_to_string(const plsem_model* m, char** out) {
  PLSEM_REQUIRE(m && out, "null argument");
  return guard([&] { *out = dup_string(plsem::format_model(m->m)); });
}

plsem_status plsem_model_graph(const plsem_model* m, plsem_graph** out) {
  PLSEM_REQUIRE(m && out, "null argument");
  return guard([&] { *out = new plsem_graph{plsem::Pdag::from_dag(m->m.dag())}; });
}

plsem_status plsem_model_sample(const plsem_model* m, int n, uint64_t seed, plsem_data** out) {
  PLSEM_REQUIRE(m && out, "null argument");
  return guard([&] { *out = new plsem_data{plsem::sample(m->m, n, seed)}; });
}

void plsem_model_free(plsem_model* m) { delete m; }

// ---------------------------------------------------------------------------
// Data

plsem_status plsem_data_read_csv(const char* path, plsem_data** out) {
  PLSEM_REQUIRE(path && out, "null argument");
  return guard([&] { *out = new plsem_data{plsem::parse_csv(plsem::read_file(path))}; });
}

plsem_status plsem_data_write_csv(const plsem_data* x, const char* path) {
  PLSEM_REQUIRE(x && path, "null argument");
  return guard([&] { plsem::write_file(path, plsem::format_csv(x->x)); });
}

size_t plsem_data_rows(const plsem_data* x) { return x ? static_cast<size_t>(x->x.rows()) : 0; }
size_t plsem_data_cols(const plsem_data* x) { return x ? static_cast<size_t>(x->x.cols()) : 0; }

plsem_status plsem_data_copy(const plsem_data* x, double* out, size_t capacity) {
  PLSEM_REQUIRE(x && out, "null argument");
  PLSEM_REQUIRE(capacity >= static_cast<size_t>(x->x.size()), "output buffer too small");
  for (Eigen::Index r = 0; r < x->x.rows(); ++r)
    for (Eigen::Index c = 0; c < x->x.cols(); ++c) *out++ = x->x(r, c);
  return PLSEM_OK;
}

void plsem_data_free(plsem_data* x) { delete x; }

plsem_status plsem_simulate(int p, double pc, double plin, int n, uint64_t seed, plsem_model** model,
                            plsem_data** data) {
  PLSEM_REQUIRE(model && data, "null argument");
  return guard([&] {
    plsem::Dag d = plsem::random_dag(p, pc, plsem::derive_seed(seed, 1));
    plsem::Plsem m = plsem::random_plsem(d, plin, plsem::derive_seed(seed, 2));
    plsem::DataMatrix x = plsem::sample(m, n, plsem::derive_seed(seed, 3));
    auto* mh = new plsem_model{std::move(m)};
    try {
      *data = new plsem_data{std::move(x)};
    } catch (...) {
      delete mh;
      throw;
    }
    *model = mh;
  });
}

// ---------------------------------------------------------------------------
// Estimation

plsem_estimate_options plsem_estimate_defaults(void) {
  plsem::EstimationConfig cfg;
  return {cfg.alpha, cfg.basis.dim, cfg.cap};
}

plsem_status plsem_estimate(const plsem_data* x, const plsem_graph* dag, plsem_mode mode,
                            const plsem_estimate_options* options, plsem_result** out) {
  PLSEM_REQUIRE(x && dag && out, "null argument");
  return guard([&] {
    plsem_estimate_options opt = options ? *options : plsem_estimate_defaults();
    plsem::EstimationConfig cfg{opt.alpha, plsem::BasisConfig{opt.basis_dim}, opt.cap};
    plsem::Dag d0 = as_dag(dag);
    auto* r = new plsem_result;
    try {
      plsem::EquivResult res = mode == PLSEM_MODE_ENUMERATE ? plsem::list_all_dags_plsem(x->x, d0, cfg)
                                                            : plsem::compute_gdpx(x->x, d0, cfg);
      r->gdpx = std::move(res.gdpx);
      if (res.dags) r->dags = std::move(*res.dags);
      r->trace = std::move(res.trace);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

plsem_status plsem_oracle(const plsem_model* m, plsem_mode mode, size_t cap, plsem_result** out) {
  PLSEM_REQUIRE(m && out, "null argument");
  return guard([&] {
    auto* r = new plsem_result;
    try {
      if (mode == PLSEM_MODE_ENUMERATE)
        r->dags = plsem::oracle_enumerate(m->m, cap);
      else
        r->gdpx = plsem::oracle_gdpx(m->m);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

plsem_status plsem_result_to_string(const plsem_result* r, char** out) {
  PLSEM_REQUIRE(r && out, "null argument");
  return guard([&] {
    *out = dup_string(r->gdpx ? plsem::format_graph(*r->gdpx) : plsem::format_dag_list(r->dags));
  });
}

plsem_status plsem_result_trace(const plsem_result* r, char** out) {
  PLSEM_REQUIRE(r && out, "null argument");
  return guard([&] { *out = dup_string(plsem::format_trace(r->trace)); });
}

size_t plsem_result_dag_count(const plsem_result* r) { return r ? r->dags.size() : 0; }

plsem_status plsem_result_graph(const plsem_result* r, plsem_graph** out) {
  PLSEM_REQUIRE(r && out, "null argument");
  PLSEM_REQUIRE(r->gdpx.has_value(), "result holds a DAG list, not a PDAG");
  return guard([&] { *out = new plsem_graph{*r->gdpx}; });
}

void plsem_result_free(plsem_result* r) { delete r; }

// ---------------------------------------------------------------------------
// Experiments

plsem_status plsem_benchmark(const plsem_benchmark_options* options, char** csv_out) {
  PLSEM_REQUIRE(options && csv_out, "null argument");
  PLSEM_REQUIRE(options->p_list && options->p_count > 0, "empty p list");
  return guard([&] {
    plsem::BenchmarkConfig cfg;
    cfg.p_list.assign(options->p_list, options->p_list + options->p_count);
    cfg.pc = options->pc;
    cfg.edges_per_node = options->edges_per_node;
    cfg.plin = options->plin;
    cfg.n = options->n;
    cfg.alpha = options->alpha;
    cfg.reps = options->reps;
    cfg.seed = options->seed;
    std::string csv = "p,expected_edges,plin,median_seconds\n";
    for (const auto& row : plsem::benchmark_timing(cfg))
      csv += std::to_string(row.p) + "," + csv_number(row.expected_edges) + "," + csv_number(row.plin) + "," +
             csv_number(row.median_seconds) + "\n";
    *csv_out = dup_string(csv);
  });
}

plsem_status plsem_experiment(const plsem_experiment_options* options, char** csv_out) {
  PLSEM_REQUIRE(options && csv_out, "null argument");
  PLSEM_REQUIRE(options->alphas && options->alpha_count > 0, "empty alpha grid");
  return guard([&] {
    plsem::SimConfig cfg;
    cfg.p = options->p;
    cfg.pc = options->pc;
    cfg.plin = options->plin;
    cfg.n = options->n;
    cfg.nrep = options->nrep;
    cfg.alpha_grid.assign(options->alphas, options->alphas + options->alpha_count);
    cfg.seed = options->seed;
    cfg.basis.dim = options->basis_dim;
    std::string csv = "alpha,n,p,plin,pc,falsely_kept_pct,falsely_removed_pct,nrep\n";
    for (const auto& row : plsem::run_experiment(cfg))
      csv += csv_number(row.alpha) + "," + std::to_string(row.n) + "," + std::to_string(row.p) + "," +
             csv_number(row.plin) + "," + csv_number(row.pc) + "," + csv_number(row.falsely_kept_pct) + "," +
             csv_number(row.falsely_removed_pct) + "," + std::to_string(row.nrep) + "\n";
    *csv_out = dup_string(csv);
  });
}

}  // extern "C"
