/* C interface to the plsem library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a plsem_status; on failure, plsem_last_error()
 * describes the problem for the calling thread and output handles are left
 * untouched. Strings returned through char** are released with
 * plsem_string_free. Node indices are 1-based.
 */
#ifndef PLSEM_PLSEM_H
#define PLSEM_PLSEM_H

#include <stddef.h>
#include <stdint.h>

#if defined(PLSEM_BUILDING_LIBRARY)
#define PLSEM_API __attribute__((visibility("default")))
#else
#define PLSEM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plsem_status {
  PLSEM_OK = 0,
  PLSEM_CYCLIC_GRAPH,
  PLSEM_NO_SUCH_EDGE,
  PLSEM_DIMENSION_MISMATCH,
  PLSEM_INCONSISTENT_ORIENTATION,
  PLSEM_INCONSISTENT_KNOWLEDGE,
  PLSEM_UNKNOWN_ADJACENCY,
  PLSEM_CAP_EXCEEDED,
  PLSEM_NOT_REMOVABLE,
  PLSEM_NOT_COVERED,
  PLSEM_NOT_LINEAR,
  PLSEM_ZERO_COEFFICIENT,
  PLSEM_DEGENERATE_INPUT,
  PLSEM_SKELETON_MISMATCH,
  PLSEM_INVALID_ARGUMENT,
  PLSEM_PARSE_ERROR,
  PLSEM_IO_ERROR,
  PLSEM_INTERNAL_ERROR
} plsem_status;

typedef enum plsem_mode { PLSEM_MODE_GDPX = 0, PLSEM_MODE_ENUMERATE = 1 } plsem_mode;

typedef struct plsem_graph plsem_graph;   /* DAG or PDAG */
typedef struct plsem_model plsem_model;   /* PLSEM */
typedef struct plsem_data plsem_data;     /* n x p observations */
typedef struct plsem_result plsem_result; /* PDAG or DAG list, plus trace */

/* Error-kind name such as "CyclicGraph"; "Ok" for PLSEM_OK. */
PLSEM_API const char* plsem_status_name(plsem_status status);
PLSEM_API const char* plsem_last_error(void);
PLSEM_API void plsem_string_free(char* s);

/* Graphs (text format "p N" / "i -> j" / "i -- j"). */
PLSEM_API plsem_status plsem_graph_parse(const char* text, plsem_graph** out);
PLSEM_API plsem_status plsem_graph_read(const char* path, plsem_graph** out);
PLSEM_API plsem_status plsem_graph_write(const plsem_graph* g, const char* path);
PLSEM_API plsem_status plsem_graph_to_string(const plsem_graph* g, char** out);
PLSEM_API int plsem_graph_node_count(const plsem_graph* g);
PLSEM_API size_t plsem_graph_directed_count(const plsem_graph* g);
PLSEM_API size_t plsem_graph_undirected_count(const plsem_graph* g);
/* CPDAG of a DAG. */
PLSEM_API plsem_status plsem_graph_cpdag(const plsem_graph* dag, plsem_graph** out);
PLSEM_API void plsem_graph_free(plsem_graph* g);

/* Models (JSON). */
PLSEM_API plsem_status plsem_model_parse(const char* text, plsem_model** out);
PLSEM_API plsem_status plsem_model_read(const char* path, plsem_model** out);
PLSEM_API plsem_status plsem_model_write(const plsem_model* m, const char* path);
PLSEM_API plsem_status plsem_model_to_string(const plsem_model* m, char** out);
PLSEM_API plsem_status plsem_model_graph(const plsem_model* m, plsem_graph** out);
PLSEM_API plsem_status plsem_model_sample(const plsem_model* m, int n, uint64_t seed, plsem_data** out);
PLSEM_API void plsem_model_free(plsem_model* m);

/* Data (CSV with header X1..Xp). */
PLSEM_API plsem_status plsem_data_read_csv(const char* path, plsem_data** out);
PLSEM_API plsem_status plsem_data_write_csv(const plsem_data* x, const char* path);
PLSEM_API size_t plsem_data_rows(const plsem_data* x);
PLSEM_API size_t plsem_data_cols(const plsem_data* x);
/* Row-major copy of rows * cols values into `out`. */
PLSEM_API plsem_status plsem_data_copy(const plsem_data* x, double* out, size_t capacity);
PLSEM_API void plsem_data_free(plsem_data* x);

/* Random DAG (edge i -> j, i < j, with probability pc), random model and a
 * sample of size n. */
PLSEM_API plsem_status plsem_simulate(int p, double pc, double plin, int n, uint64_t seed, plsem_model** model,
                                      plsem_data** data);

typedef struct plsem_estimate_options {
  double alpha;  /* >= 0 */
  int basis_dim; /* >= 3 */
  size_t cap;    /* enumerate mode: maximum number of DAGs */
} plsem_estimate_options;

PLSEM_API plsem_estimate_options plsem_estimate_defaults(void);
PLSEM_API plsem_status plsem_estimate(const plsem_data* x, const plsem_graph* dag, plsem_mode mode,
                                      const plsem_estimate_options* options, plsem_result** out);
PLSEM_API plsem_status plsem_oracle(const plsem_model* m, plsem_mode mode, size_t cap, plsem_result** out);

/* Graph text (gdpx) or DAG list (enumerate). */
PLSEM_API plsem_status plsem_result_to_string(const plsem_result* r, char** out);
/* One line per score test; empty for oracle results. */
PLSEM_API plsem_status plsem_result_trace(const plsem_result* r, char** out);
PLSEM_API size_t plsem_result_dag_count(const plsem_result* r);
/* gdpx results only. */
PLSEM_API plsem_status plsem_result_graph(const plsem_result* r, plsem_graph** out);
PLSEM_API void plsem_result_free(plsem_result* r);

typedef struct plsem_benchmark_options {
  const int* p_list;
  size_t p_count;
  double pc;             /* used when >= 0 */
  double edges_per_node; /* otherwise pc = 2 * edges_per_node / (p - 1) */
  double plin;
  int n;
  double alpha;
  int reps; /* >= 5 */
  uint64_t seed;
} plsem_benchmark_options;

/* CSV: p,expected_edges,plin,median_seconds */
PLSEM_API plsem_status plsem_benchmark(const plsem_benchmark_options* options, char** csv_out);

typedef struct plsem_experiment_options {
  int p;
  double pc;
  double plin;
  int n;
  int nrep;
  const double* alphas;
  size_t alpha_count;
  uint64_t seed;
  int basis_dim;
} plsem_experiment_options;

/* CSV: alpha,n,p,plin,pc,falsely_kept_pct,falsely_removed_pct,nrep */
PLSEM_API plsem_status plsem_experiment(const plsem_experiment_options* options, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* PLSEM_PLSEM_H */
