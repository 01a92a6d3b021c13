#include "rsym/rsym.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "rsym/cavity.hpp"
#include "rsym/error.hpp"
#include "rsym/games.hpp"
#include "rsym/graph.hpp"
#include "rsym/limits.hpp"
#include "rsym/parallel.hpp"
#include "rsym/pwit.hpp"
#include "rsym/special.hpp"
#include "rsym/stats.hpp"
#include "rsym/verify.hpp"

struct rsym_grid {
  rsym::SurvivalGrid g;
};
struct rsym_beta {
  rsym::BetaEstimate e;
};
struct rsym_graph {
  rsym::WeightedGraph g;
};
struct rsym_checks {
  std::vector<rsym::Check> checks;
};
struct rsym_gap_table {
  std::vector<rsym::GapRow> rows;
};

namespace {

thread_local std::string last_error;

template <class F>
rsym_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return RSYM_OK;
  } catch (const rsym::Error& e) {
    last_error = e.what();
    return static_cast<rsym_status>(e.status());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return RSYM_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) rsym::fail(rsym::Status::invalid_argument, std::string(what) + " must not be NULL");
}

rsym::Problem to_problem(rsym_problem p) {
  switch (p) {
    case RSYM_MATCHING: return rsym::Problem::matching;
    case RSYM_TSP: return rsym::Problem::tsp;
    case RSYM_EDGE_COVER: return rsym::Problem::edge_cover;
  }
  rsym::fail(rsym::Status::invalid_argument, "unknown problem code");
}

rsym::GameKind to_game(rsym_game g) {
  switch (g) {
    case RSYM_GAME_MATCHING: return rsym::GameKind::matching;
    case RSYM_GAME_FLOW: return rsym::GameKind::flow;
    case RSYM_GAME_TSP: return rsym::GameKind::tsp;
    case RSYM_GAME_EDGE_COVER: return rsym::GameKind::edge_cover;
  }
  rsym::fail(rsym::Status::invalid_argument, "unknown game code");
}

rsym::SimOptions to_sim(const rsym_sim_options* o) {
  rsym::SimOptions s;
  if (o) {
    s.samples = o->samples;
    s.seed = o->seed;
    s.jobs = o->jobs;
    s.visit_budget = o->visit_budget;
  }
  return s;
}

rsym_estimate to_estimate(const rsym::MeanEstimate& m) { return {m.mean, m.std_error, m.ci_halfwidth}; }

}  // namespace

extern "C" {

const char* rsym_version(void) { return "1.0.0"; }
const char* rsym_last_error(void) { return last_error.c_str(); }
const char* rsym_status_name(rsym_status s) { return rsym::status_name(static_cast<rsym::Status>(s)); }
size_t rsym_default_jobs(void) { return rsym::default_jobs(); }

rsym_status rsym_parse_problem(const char* name, rsym_problem* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = static_cast<rsym_problem>(rsym::parse_problem(name));
  });
}

rsym_status rsym_parse_game(const char* name, rsym_game* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = static_cast<rsym_game>(rsym::parse_game_kind(name));
  });
}

rsym_status rsym_grid_create(double lo, double hi, size_t cells, const double* values, double below, double above,
                             rsym_grid** out) {
  return guarded([&] {
    need(out, "out");
    rsym::require(cells >= 1 && hi > lo, "grid needs hi > lo and at least one cell");
    auto g = rsym::make_grid(lo, hi, cells, 0.0, below, above);
    if (values) g.values.assign(values, values + cells + 1);
    rsym::validate(g);
    *out = new rsym_grid{std::move(g)};
  });
}

void rsym_grid_free(rsym_grid* g) { delete g; }
size_t rsym_grid_size(const rsym_grid* g) { return g ? g->g.values.size() : 0; }
double rsym_grid_lo(const rsym_grid* g) { return g ? g->g.lo : std::nan(""); }
double rsym_grid_hi(const rsym_grid* g) { return g ? g->g.hi : std::nan(""); }
double rsym_grid_step(const rsym_grid* g) { return g ? g->g.step : std::nan(""); }
double rsym_grid_eval(const rsym_grid* g, double x) { return g ? rsym::eval(g->g, x) : std::nan(""); }

rsym_status rsym_grid_values(const rsym_grid* g, double* out, size_t capacity) {
  return guarded([&] {
    need(g, "grid");
    need(out, "out");
    rsym::require(capacity >= g->g.values.size(), "output buffer too small");
    std::memcpy(out, g->g.values.data(), g->g.values.size() * sizeof(double));
  });
}

rsym_status rsym_grid_sup_distance(const rsym_grid* a, const rsym_grid* b, double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = rsym::sup_distance(a->g, b->g);
  });
}

rsym_status rsym_apply_operator(rsym_problem p, const rsym_grid* f, double d, double theta, rsym_grid** out) {
  return guarded([&] {
    need(f, "grid");
    need(out, "out");
    rsym::ModelParams mp{d, theta};
    rsym::SurvivalGrid r;
    switch (to_problem(p)) {
      case rsym::Problem::matching: r = rsym::apply_matching_operator(f->g, mp); break;
      case rsym::Problem::tsp: r = rsym::apply_tsp_operator(f->g, mp); break;
      case rsym::Problem::edge_cover: r = rsym::apply_edgecover_operator(f->g, mp); break;
    }
    *out = new rsym_grid{std::move(r)};
  });
}

void rsym_fixed_point_options_default(rsym_fixed_point_options* o) {
  if (!o) return;
  rsym::FixedPointOptions d;
  *o = {d.tol, d.max_iter, d.cells, 0};
}

rsym_status rsym_fixed_point(rsym_problem p, double d, double theta, const rsym_fixed_point_options* o,
                             rsym_grid** out, rsym_fixed_point_info* info) {
  return guarded([&] {
    need(out, "out");
    rsym::FixedPointOptions fo;
    if (o) {
      fo.tol = o->tol;
      fo.max_iter = o->max_iter;
      fo.cells = o->cells;
      fo.scheme = o->averaged ? rsym::Scheme::averaged : rsym::Scheme::plain;
    }
    auto rep = rsym::iterate_to_fixed_point(to_problem(p), {d, theta}, fo);
    if (info) *info = {rep.iterations, rep.even_odd_gap, rep.even_drift, rep.converged, rep.period_two};
    *out = new rsym_grid{std::move(rep.fixed_point)};
  });
}

rsym_status rsym_beta_theta(const rsym_grid* f, double d, double* out) {
  return guarded([&] {
    need(f, "grid");
    need(out, "out");
    *out = rsym::beta_theta(f->g, {d, 2.0 * f->g.hi});
  });
}

rsym_status rsym_beta_theta_convolution(const rsym_grid* f, double d, double* out) {
  return guarded([&] {
    need(f, "grid");
    need(out, "out");
    *out = rsym::beta_theta_convolution(f->g, {d, 2.0 * f->g.hi});
  });
}

void rsym_beta_options_default(rsym_beta_options* o) {
  if (!o) return;
  rsym::BetaOptions d;
  *o = {d.tol, d.fixed_point_tol, d.max_iter, d.cells, d.step, d.richardson, d.jobs};
}

rsym_status rsym_beta_limit(rsym_problem p, double d, const double* schedule, size_t n, const rsym_beta_options* o,
                            rsym_beta** out) {
  return guarded([&] {
    need(out, "out");
    rsym::Problem prob = to_problem(p);
    rsym::BetaOptions bo;
    if (o) {
      bo.tol = o->tol;
      bo.fixed_point_tol = o->fixed_point_tol;
      bo.max_iter = o->max_iter;
      bo.cells = o->cells;
      bo.step = o->step;
      bo.richardson = o->richardson != 0;
      bo.jobs = o->jobs;
    }
    std::vector<double> sched = schedule ? std::vector<double>(schedule, schedule + n) : rsym::default_schedule(prob, d);
    *out = new rsym_beta{rsym::beta_limit(prob, d, sched, bo)};
  });
}

void rsym_beta_free(rsym_beta* b) { delete b; }
size_t rsym_beta_rows(const rsym_beta* b) { return b ? b->e.rows.size() : 0; }
double rsym_beta_value(const rsym_beta* b) { return b ? b->e.beta_limit : std::nan(""); }
double rsym_beta_extrapolation_gap(const rsym_beta* b) { return b ? b->e.extrapolation_gap : std::nan(""); }
int rsym_beta_converged(const rsym_beta* b) { return b ? b->e.converged : 0; }

rsym_status rsym_beta_row_get(const rsym_beta* b, size_t i, rsym_beta_row* out) {
  return guarded([&] {
    need(b, "estimate");
    need(out, "out");
    rsym::require(i < b->e.rows.size(), "row index out of range");
    const auto& r = b->e.rows[i];
    *out = {r.theta, r.beta, r.q, r.iterations, r.residual, r.converged};
  });
}

rsym_status rsym_rigorous_bounds(double d, rsym_bounds* out) {
  return guarded([&] {
    need(out, "out");
    auto b = rsym::rigorous_bounds(d);
    *out = {b.lower, b.upper, b.greedy.value_or(std::nan("")), b.greedy.has_value()};
  });
}

rsym_status rsym_matching_d1_closed_form(double q, double* theta, double* beta) {
  return guarded([&] {
    auto c = rsym::matching_d1_closed_form(q, 16);
    if (theta) *theta = c.theta;
    if (beta) *beta = c.beta;
  });
}

rsym_status rsym_tsp_d1_reference(double* out) {
  return guarded([&] {
    need(out, "out");
    *out = rsym::tsp_d1_reference();
  });
}

rsym_status rsym_lambert_w(double x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = rsym::lambert_w(x);
  });
}

rsym_status rsym_erf(double x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = rsym::erf(x);
  });
}

rsym_status rsym_edgecover_d1(double* w, double* cost) {
  return guarded([&] {
    auto r = rsym::edgecover_d1();
    if (w) *w = r.w;
    if (cost) *cost = r.cost;
  });
}

rsym_status rsym_edgecover_d2(rsym_edgecover_d2_result* out) {
  return guarded([&] {
    need(out, "out");
    auto r = rsym::edgecover_d2();
    *out = {r.A, r.B, r.cost, r.residual};
  });
}

void rsym_sim_options_default(rsym_sim_options* o) {
  if (!o) return;
  rsym::SimOptions s;
  *o = {s.samples, s.seed, s.jobs, s.visit_budget};
}

rsym_status rsym_replica_gap_profile(rsym_problem p, double d, double theta, size_t k_max, const rsym_sim_options* o,
                                     rsym_gap_table** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rsym_gap_table{rsym::replica_gap_profile({d, theta}, k_max, to_problem(p), to_sim(o))};
  });
}

void rsym_gap_table_free(rsym_gap_table* t) { delete t; }
size_t rsym_gap_table_rows(const rsym_gap_table* t) { return t ? t->rows.size() : 0; }

rsym_status rsym_gap_table_get(const rsym_gap_table* t, size_t i, rsym_gap_row* out) {
  return guarded([&] {
    need(t, "table");
    need(out, "out");
    rsym::require(i < t->rows.size(), "row index out of range");
    const auto& r = t->rows[i];
    *out = {r.k, r.mean_gap, r.ci_halfwidth, r.mean_fa, r.mean_fb, r.zero_fraction};
  });
}

rsym_status rsym_simulate_law(rsym_problem p, double d, double theta, size_t k, rsym_boundary mode,
                              const rsym_sim_options* o, size_t cells, double alpha, rsym_grid** empirical,
                              rsym_grid** law, rsym_law_check* out) {
  return guarded([&] {
    need(out, "out");
    rsym::require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    rsym::ModelParams mp{d, theta};
    auto b = mode == RSYM_FAVOR_ALICE ? rsym::Boundary::favor_alice : rsym::Boundary::favor_bob;
    auto prob = to_problem(p);
    auto so = to_sim(o);
    auto values = rsym::sample_root_values(mp, k, b, prob, so);
    auto exact = rsym::partial_law(prob, mp, k, b);
    out->ks = rsym::ks_distance(values, exact);
    out->dkw_epsilon = rsym::dkw_epsilon(values.size(), alpha);
    out->samples = values.size();
    if (empirical) *empirical = new rsym_grid{rsym::empirical_survival(mp, k, b, prob, so, cells)};
    if (law) *law = new rsym_grid{rsym::partial_law(prob, mp, k, b, cells)};
  });
}

rsym_status rsym_graph_parse(const char* text, rsym_graph** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new rsym_graph{rsym::parse_graph(text)};
  });
}

rsym_status rsym_graph_sample_meanfield(int n, double d, uint64_t seed, rsym_graph** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rsym_graph{rsym::sample_meanfield(n, d, seed)};
  });
}

void rsym_graph_free(rsym_graph* g) { delete g; }
int rsym_graph_vertices(const rsym_graph* g) { return g ? g->g.n : 0; }
size_t rsym_graph_edges(const rsym_graph* g) { return g ? g->g.edges.size() : 0; }

rsym_status rsym_graph_format(const rsym_graph* g, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    std::string s = rsym::format_graph(g->g);
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

void rsym_string_free(char* s) { delete[] s; }

rsym_status rsym_solve(const rsym_graph* g, rsym_game game, double theta, rsym_solution* out, int* edges,
                       size_t capacity) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    rsym::DilutedSolution s;
    switch (to_game(game)) {
      case rsym::GameKind::matching: s = rsym::diluted_matching(g->g, theta); break;
      case rsym::GameKind::flow: s = rsym::diluted_flow(g->g, theta); break;
      case rsym::GameKind::tsp: {
        rsym::WeightedGraph h = g->g;
        h.capacity.assign(h.n, 2);
        s = rsym::diluted_flow(h, theta);
        break;
      }
      case rsym::GameKind::edge_cover: s = rsym::diluted_edge_cover(g->g, theta); break;
    }
    *out = {s.cost, s.edge_cost, s.deficiency, s.chosen_edges.size(), s.runner_up};
    if (edges)
      for (std::size_t i = 0; i < s.chosen_edges.size() && i < capacity; ++i) edges[i] = s.chosen_edges[i];
  });
}

rsym_status rsym_game_value(const rsym_graph* g, int start, double theta, double* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = rsym::game_value(g->g, start, theta);
  });
}

rsym_status rsym_tree_game_value(const rsym_graph* g, int start, double theta, rsym_game game, double* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = rsym::tree_game_value(g->g, start, theta, to_game(game));
  });
}

rsym_status rsym_payoff_identity(const rsym_graph* g, int start, double theta, rsym_game game, rsym_payoff* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    auto r = rsym::verify_payoff_identity(g->g, start, theta, to_game(game));
    *out = {r.game_value, r.optimization_difference, r.equal};
  });
}

rsym_status rsym_finite_n_stats(int n, double d, double theta, size_t trials, uint64_t seed, size_t jobs,
                                rsym_finite_n* out) {
  return guarded([&] {
    need(out, "out");
    auto s = rsym::empirical_statistics(n, d, theta, trials, seed, jobs);
    *out = {to_estimate(s.diluted), to_estimate(s.unmatched), to_estimate(s.perfect), s.has_perfect};
  });
}

rsym_status rsym_coupling_stat(int n, double d, double theta, size_t k, size_t trials, uint64_t seed, size_t jobs,
                               rsym_coupling* out) {
  return guarded([&] {
    need(out, "out");
    auto c = rsym::neighborhood_coupling_stat(n, d, theta, k, trials, seed, jobs);
    *out = {c.mean_kn, c.mean_pwit, c.expected_pwit, c.z_score};
  });
}

void rsym_verify_options_default(rsym_verify_options* o) {
  if (!o) return;
  rsym::VerifyOptions v;
  *o = {v.seed, v.graphs, v.trees, v.samples, v.d, v.theta, v.k, v.alpha, v.jobs};
}

size_t rsym_suite_count(void) { return rsym::suite_names().size(); }

const char* rsym_suite_name(size_t i) {
  const auto& names = rsym::suite_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

rsym_status rsym_verify(const char* suite, const rsym_verify_options* o, rsym_checks** out) {
  return guarded([&] {
    need(suite, "suite");
    need(out, "out");
    rsym::VerifyOptions v;
    if (o) {
      v.seed = o->seed;
      v.graphs = o->graphs;
      v.trees = o->trees;
      v.samples = o->samples;
      v.d = o->d;
      v.theta = o->theta;
      v.k = o->k;
      v.alpha = o->alpha;
      v.jobs = o->jobs;
    }
    *out = new rsym_checks{rsym::run_suite(suite, v)};
  });
}

void rsym_checks_free(rsym_checks* c) { delete c; }
size_t rsym_checks_count(const rsym_checks* c) { return c ? c->checks.size() : 0; }

rsym_status rsym_checks_get(const rsym_checks* c, size_t i, rsym_check* out) {
  return guarded([&] {
    need(c, "checks");
    need(out, "out");
    rsym::require(i < c->checks.size(), "check index out of range");
    const auto& k = c->checks[i];
    *out = {k.name.c_str(), k.passed, k.value, k.bound, k.detail.c_str(), k.replay.c_str()};
  });
}

}  // extern "C"
