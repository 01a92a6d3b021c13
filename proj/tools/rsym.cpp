// rsym: command-line front end. Talks to the library only through rsym.h.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "output.hpp"
#include "rsym/rsym.h"

namespace {

using out::json;

constexpr int kExitVerify = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitConfig = 4;

struct Failure {
  int code;
  std::string status;
  std::string message;
};

int exit_code(rsym_status s) {
  switch (s) {
    case RSYM_OK: return 0;
    case RSYM_NOT_CONVERGED:
    case RSYM_NON_MONOTONE: return kExitNumeric;
    case RSYM_INTERNAL: return 1;
    default: return kExitConfig;
  }
}

void check(rsym_status s) {
  if (s != RSYM_OK) throw Failure{exit_code(s), rsym_status_name(s), rsym_last_error()};
}

[[noreturn]] void bad_config(const std::string& msg) { throw Failure{kExitConfig, "invalid_argument", msg}; }

double parse_real(const std::string& s) {
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  bad_config("not a number: '" + s + "'");
}

std::vector<double> parse_reals(const std::vector<std::string>& v) {
  std::vector<double> r;
  for (const auto& s : v) r.push_back(parse_real(s));
  return r;
}

json real(double x) { return json(x); }

struct Sink {
  std::string format = "json";
  std::string output;

  void write(const std::string& base, const json& doc, const out::Table& table) const {
    std::string path = out::resolve_path(output, base + "." + format);
    out::emit(format == "csv" ? out::to_csv(table) : out::dump(doc, 2) + "\n", path);
  }
};

void add_sink(CLI::App* app, Sink& s) {
  app->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("-o,--output", s.output, "output file ('-' for stdout); relative paths go under $RSYM_OUTPUT_DIR");
}

rsym_problem problem_of(const std::string& name) {
  rsym_problem p;
  check(rsym_parse_problem(name.c_str(), &p));
  return p;
}

std::string canonical(std::string name) {
  for (char& c : name)
    if (c == '_') c = '-';
  return name;
}

// ---- beta ----

struct BetaArgs {
  std::string problem = "matching";
  double d = 1.0;
  std::vector<std::string> schedule;
  double step = 0.0;
  std::size_t cells = 0;
  double tol = 0.0;
  std::size_t max_iter = 0;
  bool no_richardson = false;
  std::size_t jobs = 0;
  Sink sink;
};

int run_beta(const BetaArgs& a) {
  rsym_problem prob = problem_of(a.problem);
  rsym_beta_options o;
  rsym_beta_options_default(&o);
  if (a.step > 0.0) o.step = a.step;
  if (a.cells > 0) o.cells = a.cells;
  if (a.tol > 0.0) o.tol = a.tol;
  if (a.max_iter > 0) o.max_iter = a.max_iter;
  o.richardson = !a.no_richardson;
  o.jobs = a.jobs;
  std::vector<double> sched = parse_reals(a.schedule);
  rsym_beta* est = nullptr;
  check(rsym_beta_limit(prob, a.d, sched.empty() ? nullptr : sched.data(), sched.size(), &o, &est));
  std::unique_ptr<rsym_beta, void (*)(rsym_beta*)> hold(est, rsym_beta_free);

  json doc;
  doc["command"] = "beta";
  doc["problem"] = canonical(a.problem);
  doc["d"] = real(a.d);
  doc["step"] = real(o.step);
  doc["cells"] = o.cells;
  doc["richardson"] = o.richardson != 0;
  json rows = json::array();
  out::Table t{{"theta", "beta", "q", "iterations", "residual", "converged"}, {}};
  for (std::size_t i = 0; i < rsym_beta_rows(est); ++i) {
    rsym_beta_row r;
    check(rsym_beta_row_get(est, i, &r));
    rows.push_back({{"theta", real(r.theta)},
                    {"beta", real(r.beta)},
                    {"q", real(r.q)},
                    {"iterations", r.iterations},
                    {"residual", real(r.residual)},
                    {"converged", r.converged != 0}});
    t.rows.push_back({real(r.theta), real(r.beta), real(r.q), r.iterations, real(r.residual), r.converged != 0});
  }
  doc["rows"] = rows;
  doc["beta_limit"] = real(rsym_beta_value(est));
  doc["extrapolation_gap"] = real(rsym_beta_extrapolation_gap(est));
  bool converged = rsym_beta_converged(est) != 0;
  doc["converged"] = converged;
  t.rows.push_back({"limit", real(rsym_beta_value(est)), nullptr, nullptr, real(rsym_beta_extrapolation_gap(est)),
                    converged});

  json bounds = nullptr;
  if (prob == RSYM_MATCHING) {
    rsym_bounds b;
    check(rsym_rigorous_bounds(a.d, &b));
    bounds = {{"lower", real(b.lower)}, {"upper", real(b.upper)}, {"greedy", b.has_greedy ? real(b.greedy) : nullptr}};
  }
  doc["bounds"] = bounds;

  json refs = json::array();
  auto ref = [&](const char* name, double v) { refs.push_back({{"name", name}, {"value", real(v)}}); };
  if (a.d == 1.0 && prob == RSYM_MATCHING) ref("pi^2/12", M_PI * M_PI / 12.0);
  if (a.d == 1.0 && prob == RSYM_TSP) {
    double v;
    check(rsym_tsp_d1_reference(&v));
    ref("parametric-curve", v);
  }
  if (a.d == 1.0 && prob == RSYM_EDGE_COVER) {
    double w, cost;
    check(rsym_edgecover_d1(&w, &cost));
    ref("W(1)", w);
    ref("W(1)+W(1)^2/2", cost);
  }
  if (a.d == 2.0 && prob == RSYM_EDGE_COVER) {
    rsym_edgecover_d2_result r;
    check(rsym_edgecover_d2(&r));
    ref("A", r.A);
    ref("B", r.B);
    ref("moment-map-cost", r.cost);
    ref("moment-map-residual", r.residual);
  }
  doc["references"] = refs;

  a.sink.write("beta", doc, t);
  if (!converged) {
    std::cerr << "rsym: fixed-point iteration did not converge on every row\n";
    return kExitNumeric;
  }
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite;
  rsym_verify_options o{};
  Sink sink;
};

int run_verify(const VerifyArgs& a) {
  rsym_checks* checks = nullptr;
  check(rsym_verify(a.suite.c_str(), &a.o, &checks));
  std::unique_ptr<rsym_checks, void (*)(rsym_checks*)> hold(checks, rsym_checks_free);
  std::string lines;
  out::Table t{{"suite", "check", "passed", "value", "bound", "detail"}, {}};
  std::size_t failures = 0, n = rsym_checks_count(checks);
  for (std::size_t i = 0; i < n; ++i) {
    rsym_check c;
    check(rsym_checks_get(checks, i, &c));
    if (!c.passed) ++failures;
    json j{{"record", "check"},   {"suite", a.suite},        {"check", c.name},
           {"passed", c.passed != 0}, {"value", real(c.value)}, {"bound", real(c.bound)},
           {"detail", c.detail}};
    if (!c.passed && c.replay[0] != '\0') j["replay"] = c.replay;
    lines += out::dump(j) + "\n";
    t.rows.push_back({a.suite, c.name, c.passed != 0, real(c.value), real(c.bound), c.detail});
  }
  json summary{{"record", "summary"}, {"suite", a.suite}, {"seed", a.o.seed}, {"checks", n},
               {"failures", failures},  {"passed", failures == 0}};
  lines += out::dump(summary) + "\n";
  std::string path = out::resolve_path(a.sink.output, "verify-" + a.suite + "." + a.sink.format);
  out::emit(a.sink.format == "csv" ? out::to_csv(t) : lines, path);
  return failures == 0 ? 0 : kExitVerify;
}

// ---- simulate ----

struct SimArgs {
  std::string problem = "matching";
  double d = 1.0;
  std::string theta = "4";
  std::size_t k_min = 0, k_max = 20, k = 6;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::size_t jobs = 0;
  std::string mode = "favor_bob";
  std::size_t cells = 256;
  double alpha = 0.01;
  std::vector<int> ns{8, 12, 16};
  std::vector<std::string> thetas{"1", "2", "4"};
  std::size_t trials = 500;
  int n = 512;
  Sink sink;
};

int run_replica_gap(const SimArgs& a) {
  rsym_problem prob = problem_of(a.problem);
  double theta = parse_real(a.theta);
  rsym_sim_options o;
  rsym_sim_options_default(&o);
  o.samples = a.samples;
  o.seed = a.seed;
  o.jobs = a.jobs;
  if (a.k_min > a.k_max) bad_config("--k-min exceeds --k-max");
  rsym_gap_table* tab = nullptr;
  check(rsym_replica_gap_profile(prob, a.d, theta, a.k_max, &o, &tab));
  std::unique_ptr<rsym_gap_table, void (*)(rsym_gap_table*)> hold(tab, rsym_gap_table_free);
  json doc{{"command", "simulate"}, {"mode", "replica-gap"}, {"problem", canonical(a.problem)}, {"d", real(a.d)},
           {"theta", real(theta)},  {"samples", a.samples},  {"seed", a.seed}};
  json rows = json::array();
  out::Table t{{"k", "mean_gap", "ci_halfwidth", "mean_fa", "mean_fb", "zero_fraction"}, {}};
  for (std::size_t i = a.k_min; i < rsym_gap_table_rows(tab); ++i) {
    rsym_gap_row r;
    check(rsym_gap_table_get(tab, i, &r));
    rows.push_back({{"k", r.k},
                    {"mean_gap", real(r.mean_gap)},
                    {"ci_halfwidth", real(r.ci_halfwidth)},
                    {"mean_fa", real(r.mean_fa)},
                    {"mean_fb", real(r.mean_fb)},
                    {"zero_fraction", real(r.zero_fraction)}});
    t.rows.push_back(
        {r.k, real(r.mean_gap), real(r.ci_halfwidth), real(r.mean_fa), real(r.mean_fb), real(r.zero_fraction)});
  }
  doc["rows"] = rows;
  a.sink.write("simulate-replica-gap", doc, t);
  return 0;
}

int run_finite_n(const SimArgs& a) {
  std::vector<double> thetas = parse_reals(a.thetas);
  json doc{{"command", "simulate"}, {"mode", "finite-n"}, {"d", real(a.d)}, {"trials", a.trials}, {"seed", a.seed}};
  rsym_bounds b;
  check(rsym_rigorous_bounds(a.d, &b));
  doc["bounds"] = {{"lower", real(b.lower)}, {"upper", real(b.upper)}, {"greedy", b.has_greedy ? real(b.greedy) : nullptr}};
  json rows = json::array();
  out::Table t{{"n", "theta", "trials", "diluted_mean", "diluted_ci", "unmatched_mean", "unmatched_ci", "perfect_mean",
                "perfect_ci"},
               {}};
  for (int n : a.ns)
    for (double theta : thetas) {
      rsym_finite_n s;
      check(rsym_finite_n_stats(n, a.d, theta, a.trials, a.seed, a.jobs, &s));
      json pm = s.has_perfect ? real(s.perfect.mean) : json(nullptr);
      json pc = s.has_perfect ? real(s.perfect.ci_halfwidth) : json(nullptr);
      rows.push_back({{"n", n},
                      {"theta", real(theta)},
                      {"trials", a.trials},
                      {"diluted_mean", real(s.diluted.mean)},
                      {"diluted_ci", real(s.diluted.ci_halfwidth)},
                      {"unmatched_mean", real(s.unmatched.mean)},
                      {"unmatched_ci", real(s.unmatched.ci_halfwidth)},
                      {"perfect_mean", pm},
                      {"perfect_ci", pc}});
      t.rows.push_back({n, real(theta), a.trials, real(s.diluted.mean), real(s.diluted.ci_halfwidth),
                        real(s.unmatched.mean), real(s.unmatched.ci_halfwidth), pm, pc});
    }
  doc["rows"] = rows;
  a.sink.write("simulate-finite-n", doc, t);
  return 0;
}

int run_coupling(const SimArgs& a) {
  double theta = parse_real(a.theta);
  rsym_coupling c;
  check(rsym_coupling_stat(a.n, a.d, theta, a.k, a.trials, a.seed, a.jobs, &c));
  json row{{"n", a.n},
           {"d", real(a.d)},
           {"theta", real(theta)},
           {"k", a.k},
           {"trials", a.trials},
           {"mean_kn", real(c.mean_kn)},
           {"mean_pwit", real(c.mean_pwit)},
           {"expected_pwit", real(c.expected_pwit)},
           {"z_score", real(c.z_score)}};
  json doc{{"command", "simulate"}, {"mode", "coupling"}, {"seed", a.seed}, {"rows", json::array({row})}};
  out::Table t{{"n", "d", "theta", "k", "trials", "mean_kn", "mean_pwit", "expected_pwit", "z_score"}, {}};
  t.rows.push_back({a.n, real(a.d), real(theta), a.k, a.trials, real(c.mean_kn), real(c.mean_pwit),
                    real(c.expected_pwit), real(c.z_score)});
  a.sink.write("simulate-coupling", doc, t);
  return 0;
}

int run_survival(const SimArgs& a) {
  rsym_problem prob = problem_of(a.problem);
  double theta = parse_real(a.theta);
  rsym_sim_options o;
  rsym_sim_options_default(&o);
  o.samples = a.samples;
  o.seed = a.seed;
  o.jobs = a.jobs;
  rsym_boundary mode = a.mode == "favor_alice" ? RSYM_FAVOR_ALICE : RSYM_FAVOR_BOB;
  rsym_grid *emp = nullptr, *law = nullptr;
  rsym_law_check lc;
  check(rsym_simulate_law(prob, a.d, theta, a.k, mode, &o, a.cells, a.alpha, &emp, &law, &lc));
  std::unique_ptr<rsym_grid, void (*)(rsym_grid*)> h1(emp, rsym_grid_free), h2(law, rsym_grid_free);
  std::size_t n = rsym_grid_size(emp);
  std::vector<double> ev(n), lv(n);
  check(rsym_grid_values(emp, ev.data(), n));
  check(rsym_grid_values(law, lv.data(), n));
  json doc{{"command", "simulate"}, {"mode", "survival"}, {"problem", canonical(a.problem)}, {"d", real(a.d)},
           {"theta", real(theta)},  {"k", a.k},            {"boundary", a.mode},   {"samples", a.samples},
           {"seed", a.seed},        {"ks", real(lc.ks)},  {"dkw_epsilon", real(lc.dkw_epsilon)},
           {"within_band", lc.ks <= lc.dkw_epsilon}};
  json rows = json::array();
  out::Table t{{"x", "empirical", "law"}, {}};
  double lo = rsym_grid_lo(emp), step = rsym_grid_step(emp), hi = rsym_grid_hi(emp);
  for (std::size_t i = 0; i < n; ++i) {
    double x = i + 1 == n ? hi : lo + static_cast<double>(i) * step;
    rows.push_back({{"x", real(x)}, {"empirical", real(ev[i])}, {"law", real(lv[i])}});
    t.rows.push_back({real(x), real(ev[i]), real(lv[i])});
  }
  doc["rows"] = rows;
  a.sink.write("simulate-survival", doc, t);
  return 0;
}

// ---- solve / graph ----

struct SolveArgs {
  std::string graph;
  int sample_n = 0;
  double d = 1.0;
  std::uint64_t seed = 1;
  std::string theta = "inf";
  std::string game = "matching";
  int start = -1;
  Sink sink;
};

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) bad_config("cannot read graph file " + path);
  return {std::istreambuf_iterator<char>(f), {}};
}

rsym_graph* load_graph(const SolveArgs& a) {
  rsym_graph* g = nullptr;
  if (!a.graph.empty() && a.sample_n > 0) bad_config("give either --graph or --sample-n");
  if (!a.graph.empty()) check(rsym_graph_parse(read_text(a.graph).c_str(), &g));
  else if (a.sample_n > 0) check(rsym_graph_sample_meanfield(a.sample_n, a.d, a.seed, &g));
  else bad_config("one of --graph or --sample-n is required");
  return g;
}

int run_solve(const SolveArgs& a) {
  std::unique_ptr<rsym_graph, void (*)(rsym_graph*)> g(load_graph(a), rsym_graph_free);
  rsym_game game;
  check(rsym_parse_game(a.game.c_str(), &game));
  double theta = parse_real(a.theta);
  rsym_solution s;
  std::vector<int> edges(rsym_graph_edges(g.get()));
  check(rsym_solve(g.get(), game, theta, &s, edges.data(), edges.size()));
  edges.resize(s.edge_count);
  json doc{{"command", "solve"},
           {"game", canonical(a.game)},
           {"theta", real(theta)},
           {"n", rsym_graph_vertices(g.get())},
           {"m", rsym_graph_edges(g.get())},
           {"cost", real(s.cost)},
           {"edge_cost", real(s.edge_cost)},
           {"deficiency", s.deficiency},
           {"edges", edges}};
  out::Table t{{"game", "theta", "cost", "edge_cost", "deficiency", "edges", "start", "game_value",
                "optimization_difference", "identity_holds"},
               {}};
  std::string edge_list;
  for (std::size_t i = 0; i < edges.size(); ++i) edge_list += (i ? " " : "") + std::to_string(edges[i]);
  std::vector<json> row{canonical(a.game), real(theta), real(s.cost), real(s.edge_cost), s.deficiency, edge_list};
  if (a.start >= 0) {
    rsym_payoff p;
    check(rsym_payoff_identity(g.get(), a.start, theta, game, &p));
    doc["payoff"] = {{"start", a.start},
                     {"game_value", real(p.game_value)},
                     {"optimization_difference", real(p.optimization_difference)},
                     {"equal", p.equal != 0}};
    row.insert(row.end(), {a.start, real(p.game_value), real(p.optimization_difference), p.equal != 0});
  } else {
    row.insert(row.end(), {nullptr, nullptr, nullptr, nullptr});
  }
  t.rows.push_back(row);
  a.sink.write("solve", doc, t);
  return 0;
}

int run_graph(const SolveArgs& a) {
  std::unique_ptr<rsym_graph, void (*)(rsym_graph*)> g(load_graph(a), rsym_graph_free);
  char* text = nullptr;
  check(rsym_graph_format(g.get(), &text));
  std::string s(text);
  rsym_string_free(text);
  out::emit(s, out::resolve_path(a.sink.output, "graph.txt"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replica-symmetric limit constants: cavity fixed points, PWIT simulation, finite oracles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rsym_version()));
  const std::size_t jobs_default = rsym_default_jobs();

  BetaArgs beta;
  beta.jobs = jobs_default;
  auto* cb = app.add_subcommand("beta", "limit constant over a theta schedule");
  cb->add_option("--problem", beta.problem)->check(CLI::IsMember({"matching", "tsp", "edge-cover", "edge_cover"}));
  cb->add_option("--d", beta.d, "pseudo-dimension (>= 1)");
  cb->add_option("--theta,--schedule", beta.schedule, "increasing theta values")->delimiter(',');
  cb->add_option("--step", beta.step, "grid step (overrides --cells)");
  cb->add_option("--cells", beta.cells, "grid cells per theta");
  cb->add_option("--tol", beta.tol, "stop once a doubling moves beta by less");
  cb->add_option("--max-iter", beta.max_iter, "iteration cap per fixed point");
  cb->add_flag("--no-richardson", beta.no_richardson);
  cb->add_option("--jobs", beta.jobs);
  add_sink(cb, beta.sink);

  VerifyArgs ver;
  rsym_verify_options_default(&ver.o);
  ver.o.jobs = jobs_default;
  auto* cv = app.add_subcommand("verify", "run an invariant suite");
  std::vector<std::string> suites;
  for (std::size_t i = 0; i < rsym_suite_count(); ++i) suites.push_back(rsym_suite_name(i));
  cv->add_option("--suite", ver.suite)->required()->check(CLI::IsMember(suites));
  cv->add_option("--seed", ver.o.seed);
  cv->add_option("--graphs", ver.o.graphs, "payoff-identity: random capacity-1 graphs");
  cv->add_option("--trees", ver.o.trees, "payoff-identity: random trees per tree game");
  cv->add_option("--samples", ver.o.samples, "simulator-consistency: PWIT samples");
  cv->add_option("--d", ver.o.d);
  cv->add_option("--theta", ver.o.theta);
  cv->add_option("--k", ver.o.k);
  cv->add_option("--alpha", ver.o.alpha);
  cv->add_option("--jobs", ver.o.jobs);
  add_sink(cv, ver.sink);

  SimArgs sim;
  sim.jobs = jobs_default;
  auto* cs = app.add_subcommand("simulate", "Monte Carlo tables");
  cs->require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--d", sim.d);
    c->add_option("--seed", sim.seed);
    c->add_option("--jobs", sim.jobs);
    add_sink(c, sim.sink);
  };
  auto* rg = cs->add_subcommand("replica-gap", "mean f_B^k - f_A^k at the root");
  common(rg);
  rg->add_option("--problem", sim.problem);
  rg->add_option("--theta", sim.theta);
  rg->add_option("--k-min", sim.k_min);
  rg->add_option("--k-max", sim.k_max);
  rg->add_option("--samples", sim.samples);
  auto* fn = cs->add_subcommand("finite-n", "exact diluted and perfect matchings on mean-field K_n");
  common(fn);
  fn->add_option("--n", sim.ns)->delimiter(',');
  fn->add_option("--theta", sim.thetas)->delimiter(',');
  fn->add_option("--trials", sim.trials);
  auto* cp = cs->add_subcommand("coupling", "K_n versus PWIT neighbourhood sizes");
  common(cp);
  cp->add_option("--n", sim.n);
  cp->add_option("--theta", sim.theta);
  cp->add_option("--k", sim.k);
  cp->add_option("--trials", sim.trials);
  auto* sv = cs->add_subcommand("survival", "empirical law of the depth-k root value against the operator iterate");
  common(sv);
  sv->add_option("--problem", sim.problem);
  sv->add_option("--theta", sim.theta);
  sv->add_option("--k", sim.k);
  sv->add_option("--samples", sim.samples);
  sv->add_option("--boundary", sim.mode)->check(CLI::IsMember({"favor_bob", "favor_alice"}));
  sv->add_option("--cells", sim.cells);
  sv->add_option("--alpha", sim.alpha);

  SolveArgs solve;
  auto* cso = app.add_subcommand("solve", "exact diluted optimum on a small graph");
  cso->add_option("--graph", solve.graph, "interchange file, '-' for stdin");
  cso->add_option("--sample-n", solve.sample_n, "use a mean-field K_n instead");
  cso->add_option("--d", solve.d);
  cso->add_option("--seed", solve.seed);
  cso->add_option("--theta", solve.theta, "penalty parameter; inf for the undiluted problem");
  cso->add_option("--game", solve.game)->check(CLI::IsMember({"matching", "flow", "tsp", "edge-cover", "edge_cover"}));
  cso->add_option("--start", solve.start, "also check the payoff identity from this vertex");
  add_sink(cso, solve.sink);

  SolveArgs graph;
  auto* cg = app.add_subcommand("graph", "write a mean-field instance in the interchange format");
  cg->add_option("--sample-n", graph.sample_n)->required();
  cg->add_option("--d", graph.d);
  cg->add_option("--seed", graph.seed);
  cg->add_option("-o,--output", graph.sink.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*cb) return run_beta(beta);
    if (*cv) return run_verify(ver);
    if (*rg) return run_replica_gap(sim);
    if (*fn) return run_finite_n(sim);
    if (*cp) return run_coupling(sim);
    if (*sv) return run_survival(sim);
    if (*cso) return run_solve(solve);
    if (*cg) return run_graph(graph);
  } catch (const Failure& f) {
    json err{{"error", {{"status", f.status}, {"message", f.message}, {"exit_code", f.code}}}};
    std::cerr << out::dump(err) << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "rsym: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
