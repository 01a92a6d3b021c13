/* C interface to librsym. Every function returns an rsym_status; on failure
   rsym_last_error() holds a message for the calling thread. Handles are
   opaque and must be released with the matching _free function. */
#ifndef RSYM_RSYM_H
#define RSYM_RSYM_H

#include <stddef.h>
#include <stdint.h>

#if defined(RSYM_BUILDING)
#define RSYM_API __attribute__((visibility("default")))
#else
#define RSYM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsym_status {
  RSYM_OK = 0,
  RSYM_INVALID_ARGUMENT = 1,
  RSYM_DOMAIN_MISMATCH = 2,
  RSYM_CUTOFF_TOO_SMALL = 3,
  RSYM_NOT_CONVERGED = 4,
  RSYM_NON_MONOTONE = 5,
  RSYM_TOO_LARGE = 6,
  RSYM_INFEASIBLE = 7,
  RSYM_NOT_A_TREE = 8,
  RSYM_PARSE = 9,
  RSYM_INTERNAL = 10
} rsym_status;

typedef enum rsym_problem { RSYM_MATCHING = 0, RSYM_TSP = 1, RSYM_EDGE_COVER = 2 } rsym_problem;

/* Finite games; RSYM_GAME_FLOW uses the per-vertex capacities. */
typedef enum rsym_game { RSYM_GAME_MATCHING = 0, RSYM_GAME_FLOW = 1, RSYM_GAME_TSP = 2, RSYM_GAME_EDGE_COVER = 3 } rsym_game;

typedef enum rsym_boundary { RSYM_FAVOR_BOB = 0, RSYM_FAVOR_ALICE = 1 } rsym_boundary;

typedef struct rsym_grid rsym_grid;
typedef struct rsym_beta rsym_beta;
typedef struct rsym_graph rsym_graph;
typedef struct rsym_checks rsym_checks;
typedef struct rsym_gap_table rsym_gap_table;

RSYM_API const char* rsym_version(void);
RSYM_API const char* rsym_last_error(void);
RSYM_API const char* rsym_status_name(rsym_status s);
RSYM_API rsym_status rsym_parse_problem(const char* name, rsym_problem* out);
RSYM_API rsym_status rsym_parse_game(const char* name, rsym_game* out);
RSYM_API size_t rsym_default_jobs(void);

/* ---- survival grids ---- */

RSYM_API rsym_status rsym_grid_create(double lo, double hi, size_t cells, const double* values, double below,
                                      double above, rsym_grid** out);
RSYM_API void rsym_grid_free(rsym_grid* g);
RSYM_API size_t rsym_grid_size(const rsym_grid* g); /* number of nodes */
RSYM_API double rsym_grid_lo(const rsym_grid* g);
RSYM_API double rsym_grid_hi(const rsym_grid* g);
RSYM_API double rsym_grid_step(const rsym_grid* g);
RSYM_API rsym_status rsym_grid_values(const rsym_grid* g, double* out, size_t capacity);
RSYM_API double rsym_grid_eval(const rsym_grid* g, double x);
RSYM_API rsym_status rsym_grid_sup_distance(const rsym_grid* a, const rsym_grid* b, double* out);

/* theta = INFINITY selects the untruncated edge cover operator. */
RSYM_API rsym_status rsym_apply_operator(rsym_problem p, const rsym_grid* f, double d, double theta, rsym_grid** out);

typedef struct rsym_fixed_point_options {
  double tol;
  size_t max_iter;
  size_t cells;
  int averaged; /* 0: plain iteration, 1: (F + V F)/2 */
} rsym_fixed_point_options;

typedef struct rsym_fixed_point_info {
  size_t iterations;
  double even_odd_gap;
  double even_drift;
  int converged;
  int period_two;
} rsym_fixed_point_info;

RSYM_API void rsym_fixed_point_options_default(rsym_fixed_point_options* o);
/* Starts from the zero function. A run that does not converge still
   returns RSYM_OK with info->converged = 0. */
RSYM_API rsym_status rsym_fixed_point(rsym_problem p, double d, double theta, const rsym_fixed_point_options* o,
                                      rsym_grid** out, rsym_fixed_point_info* info);

RSYM_API rsym_status rsym_beta_theta(const rsym_grid* f, double d, double* out);
RSYM_API rsym_status rsym_beta_theta_convolution(const rsym_grid* f, double d, double* out);

/* ---- limit constants ---- */

typedef struct rsym_beta_options {
  double tol;
  double fixed_point_tol;
  size_t max_iter;
  size_t cells;
  double step; /* > 0 overrides cells */
  int richardson;
  size_t jobs;
} rsym_beta_options;

typedef struct rsym_beta_row {
  double theta;
  double beta;
  double q;
  size_t iterations;
  double residual;
  int converged;
} rsym_beta_row;

RSYM_API void rsym_beta_options_default(rsym_beta_options* o);
/* schedule may be NULL for the default schedule. */
RSYM_API rsym_status rsym_beta_limit(rsym_problem p, double d, const double* schedule, size_t n,
                                     const rsym_beta_options* o, rsym_beta** out);
RSYM_API void rsym_beta_free(rsym_beta* b);
RSYM_API size_t rsym_beta_rows(const rsym_beta* b);
RSYM_API rsym_status rsym_beta_row_get(const rsym_beta* b, size_t i, rsym_beta_row* out);
RSYM_API double rsym_beta_value(const rsym_beta* b);
RSYM_API double rsym_beta_extrapolation_gap(const rsym_beta* b);
RSYM_API int rsym_beta_converged(const rsym_beta* b);

typedef struct rsym_bounds {
  double lower;
  double upper;
  double greedy;
  int has_greedy;
} rsym_bounds;

RSYM_API rsym_status rsym_rigorous_bounds(double d, rsym_bounds* out);
RSYM_API rsym_status rsym_matching_d1_closed_form(double q, double* theta, double* beta);
RSYM_API rsym_status rsym_tsp_d1_reference(double* out);
RSYM_API rsym_status rsym_lambert_w(double x, double* out);
RSYM_API rsym_status rsym_erf(double x, double* out);
RSYM_API rsym_status rsym_edgecover_d1(double* w, double* cost);

typedef struct rsym_edgecover_d2_result {
  double A;
  double B;
  double cost;
  double residual;
} rsym_edgecover_d2_result;

RSYM_API rsym_status rsym_edgecover_d2(rsym_edgecover_d2_result* out);

/* ---- PWIT simulation ---- */

typedef struct rsym_sim_options {
  size_t samples;
  uint64_t seed;
  size_t jobs;
  uint64_t visit_budget; /* per sample, 0 = unlimited */
} rsym_sim_options;

typedef struct rsym_gap_row {
  size_t k;
  double mean_gap;
  double ci_halfwidth;
  double mean_fa;
  double mean_fb;
  double zero_fraction;
} rsym_gap_row;

RSYM_API void rsym_sim_options_default(rsym_sim_options* o);
RSYM_API rsym_status rsym_replica_gap_profile(rsym_problem p, double d, double theta, size_t k_max,
                                              const rsym_sim_options* o, rsym_gap_table** out);
RSYM_API void rsym_gap_table_free(rsym_gap_table* t);
RSYM_API size_t rsym_gap_table_rows(const rsym_gap_table* t);
RSYM_API rsym_status rsym_gap_table_get(const rsym_gap_table* t, size_t i, rsym_gap_row* out);

/* Empirical law of the depth-k root value against k operator steps applied
   to the boundary law. */
typedef struct rsym_law_check {
  double ks;
  double dkw_epsilon;
  size_t samples;
} rsym_law_check;

RSYM_API rsym_status rsym_simulate_law(rsym_problem p, double d, double theta, size_t k, rsym_boundary mode,
                                       const rsym_sim_options* o, size_t cells, double alpha,
                                       rsym_grid** empirical, rsym_grid** law, rsym_law_check* out);

/* ---- finite instances ---- */

RSYM_API rsym_status rsym_graph_parse(const char* text, rsym_graph** out);
RSYM_API rsym_status rsym_graph_sample_meanfield(int n, double d, uint64_t seed, rsym_graph** out);
RSYM_API void rsym_graph_free(rsym_graph* g);
RSYM_API int rsym_graph_vertices(const rsym_graph* g);
RSYM_API size_t rsym_graph_edges(const rsym_graph* g);
/* Writes the interchange text; *out is released with rsym_string_free. */
RSYM_API rsym_status rsym_graph_format(const rsym_graph* g, char** out);
RSYM_API void rsym_string_free(char* s);

typedef struct rsym_solution {
  double cost;
  double edge_cost;
  int deficiency;
  size_t edge_count;
  double runner_up; /* INFINITY when not computed */
} rsym_solution;

/* Diluted optimum; theta = INFINITY gives the undiluted problem. Chosen edge
   indices are written to edges (up to capacity entries) when it is not NULL. */
RSYM_API rsym_status rsym_solve(const rsym_graph* g, rsym_game game, double theta, rsym_solution* out, int* edges,
                                size_t capacity);
RSYM_API rsym_status rsym_game_value(const rsym_graph* g, int start, double theta, double* out);
RSYM_API rsym_status rsym_tree_game_value(const rsym_graph* g, int start, double theta, rsym_game game, double* out);

typedef struct rsym_payoff {
  double game_value;
  double optimization_difference;
  int equal;
} rsym_payoff;

RSYM_API rsym_status rsym_payoff_identity(const rsym_graph* g, int start, double theta, rsym_game game,
                                          rsym_payoff* out);

typedef struct rsym_estimate {
  double mean;
  double std_error;
  double ci_halfwidth;
} rsym_estimate;

typedef struct rsym_finite_n {
  rsym_estimate diluted;   /* M_n(theta)/n */
  rsym_estimate unmatched; /* q_n */
  rsym_estimate perfect;   /* M_n/n, when has_perfect */
  int has_perfect;
} rsym_finite_n;

RSYM_API rsym_status rsym_finite_n_stats(int n, double d, double theta, size_t trials, uint64_t seed, size_t jobs,
                                         rsym_finite_n* out);

typedef struct rsym_coupling {
  double mean_kn;
  double mean_pwit;
  double expected_pwit;
  double z_score;
} rsym_coupling;

RSYM_API rsym_status rsym_coupling_stat(int n, double d, double theta, size_t k, size_t trials, uint64_t seed,
                                        size_t jobs, rsym_coupling* out);

/* ---- verification suites ---- */

typedef struct rsym_verify_options {
  uint64_t seed;
  size_t graphs;
  size_t trees;
  size_t samples;
  double d;
  double theta;
  size_t k;
  double alpha;
  size_t jobs;
} rsym_verify_options;

/* Strings point into the rsym_checks handle and live as long as it does. */
typedef struct rsym_check {
  const char* name;
  int passed;
  double value;
  double bound;
  const char* detail;
  const char* replay;
} rsym_check;

RSYM_API void rsym_verify_options_default(rsym_verify_options* o);
RSYM_API size_t rsym_suite_count(void);
RSYM_API const char* rsym_suite_name(size_t i);
RSYM_API rsym_status rsym_verify(const char* suite, const rsym_verify_options* o, rsym_checks** out);
RSYM_API void rsym_checks_free(rsym_checks* c);
RSYM_API size_t rsym_checks_count(const rsym_checks* c);
RSYM_API rsym_status rsym_checks_get(const rsym_checks* c, size_t i, rsym_check* out);

#ifdef __cplusplus
}
#endif

#endif
