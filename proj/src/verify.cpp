#include "rsym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "rsym/cavity.hpp"
#include "rsym/error.hpp"
#include "rsym/games.hpp"
#include "rsym/graph.hpp"
#include "rsym/limits.hpp"
#include "rsym/pwit.hpp"
#include "rsym/rng.hpp"

namespace rsym {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"payoff-identity", "operator-properties", "simulator-consistency",
                                              "bounds-sandwich"};
  return names;
}

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string replay_graph(const WeightedGraph& g, int start, double theta) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "start %d theta %.17g\n", start, theta);
  return buf + format_graph(g);
}

WeightedGraph random_graph(TrialRng& r, double theta) {
  WeightedGraph g;
  g.n = 1 + static_cast<int>(r.below(10));
  double density = 0.3 + 0.7 * r.uniform();
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (r.uniform() < density) g.edges.push_back({u, v, theta * (0.02 + 1.98 * r.uniform())});
  return g;
}

WeightedGraph random_tree(TrialRng& r, double theta, int max_n) {
  WeightedGraph g;
  g.n = 1 + static_cast<int>(r.below(max_n));
  for (int v = 1; v < g.n; ++v)
    g.edges.push_back({static_cast<int>(r.below(v)), v, theta * (0.02 + 1.98 * r.uniform())});
  return g;
}

// Accumulates one instance family into a single check, keeping the first failure.
struct Tally {
  explicit Tally(std::string n) : name(std::move(n)) {}
  std::string name;
  std::size_t runs = 0, failures = 0;
  double worst = 0.0;
  std::string replay;
  void add(bool ok, double err, const std::string& instance) {
    ++runs;
    worst = std::max(worst, err);
    if (!ok && failures++ == 0) replay = instance;
  }
  Check done(double bound) const {
    Check c;
    c.name = name;
    c.passed = failures == 0 && runs > 0;
    c.value = worst;
    c.bound = bound;
    c.detail = std::to_string(runs - failures) + "/" + std::to_string(runs) + " instances agree";
    c.replay = replay;
    return c;
  }
};

std::set<std::pair<int, int>> edge_pairs(const WeightedGraph& g, const std::vector<int>& idx, int shift_from = -1) {
  std::set<std::pair<int, int>> out;
  for (int i : idx) {
    int a = g.edges[i].u, b = g.edges[i].v;
    if (shift_from >= 0) {
      if (a >= shift_from) ++a;
      if (b >= shift_from) ++b;
    }
    out.insert(std::minmax(a, b));
  }
  return out;
}

std::vector<Check> payoff_identity(const VerifyOptions& opt) {
  std::vector<Check> out;
  Tally match{"matching-identity"}, path{"optimal-play-path"}, longedges{"long-edges-irrelevant"},
      mono{"cost-monotone-in-theta"};
  std::size_t unique = 0;
  for (std::size_t s = 0; s < opt.graphs; ++s) {
    TrialRng r(opt.seed, s);
    double theta = 0.5 + 3.0 * r.uniform();
    WeightedGraph g = random_graph(r, theta);
    int start = static_cast<int>(r.below(g.n));
    std::string inst = replay_graph(g, start, theta);
    auto rep = verify_payoff_identity(g, start, theta, GameKind::matching);
    match.add(rep.equal, std::abs(rep.game_value - rep.optimization_difference), inst);

    WeightedGraph shortg = g;
    std::erase_if(shortg.edges, [&](const Edge& e) { return e.length > theta; });
    double m = diluted_matching(g, theta).cost, ms = diluted_matching(shortg, theta).cost;
    longedges.add(m == ms, std::abs(m - ms), inst);
    double m2 = diluted_matching(g, 1.25 * theta).cost;
    mono.add(m2 >= m - 1e-12, std::max(0.0, m - m2), inst);

    // symmetric difference of the optima is the path of optimal play
    WeightedGraph minus = remove_vertex(g, start);
    if (shortg.edges.size() > 25) continue;
    auto a = diluted_flow(g, theta), b = diluted_flow(minus, theta);
    if (a.runner_up - a.cost <= 1e-9 || b.runner_up - b.cost <= 1e-9) continue;
    ++unique;
    auto sa = edge_pairs(g, a.chosen_edges), sb = edge_pairs(minus, b.chosen_edges, start);
    std::set<std::pair<int, int>> diff;
    std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(diff, diff.end()));
    auto play = play_game(g, start, theta);
    std::set<std::pair<int, int>> walk;
    for (std::size_t i = 1; i < play.path.size(); ++i) walk.insert(std::minmax(play.path[i - 1], play.path[i]));
    path.add(diff == walk, diff == walk ? 0.0 : 1.0, inst);
  }
  out.push_back(match.done(1e-12));
  out.push_back(longedges.done(0.0));
  out.push_back(mono.done(0.0));
  Check pc = path.done(0.0);
  pc.detail += " (" + std::to_string(unique) + " with unique optima)";
  out.push_back(pc);

  Tally tsp{"capacity-2-tree-identity"}, flow{"mixed-capacity-tree-identity"}, cover{"edge-cover-tree-identity"};
  for (std::size_t s = 0; s < opt.trees; ++s) {
    TrialRng r(derive_key(opt.seed, 1), s);
    double theta = 0.5 + 3.0 * r.uniform();
    WeightedGraph t = random_tree(r, theta, 12);
    int start = static_cast<int>(r.below(t.n));
    t.capacity.assign(t.n, 2);
    auto rep = verify_payoff_identity(t, start, theta, GameKind::tsp);
    tsp.add(rep.equal, std::abs(rep.game_value - rep.optimization_difference), replay_graph(t, start, theta));

    for (auto& c : t.capacity) c = 1 + static_cast<int>(r.below(3));
    rep = verify_payoff_identity(t, start, theta, GameKind::flow);
    flow.add(rep.equal, std::abs(rep.game_value - rep.optimization_difference), replay_graph(t, start, theta));

    t.capacity.clear();
    rep = verify_payoff_identity(t, start, theta, GameKind::edge_cover);
    cover.add(rep.equal, std::abs(rep.game_value - rep.optimization_difference), replay_graph(t, start, theta));
  }
  out.push_back(tsp.done(1e-12));
  out.push_back(flow.done(1e-12));
  out.push_back(cover.done(1e-12));
  return out;
}

SurvivalGrid random_survival(TrialRng& r, const SurvivalGrid& shape) {
  SurvivalGrid g = shape;
  std::vector<double> u(g.values.size());
  for (auto& x : u) x = r.uniform();
  std::sort(u.begin(), u.end(), std::greater<>());
  g.values = u;
  return g;
}

struct OperatorPoint {
  Problem prob;
  double d, theta;
};

std::string point_name(const OperatorPoint& pt) {
  std::string th = std::isinf(pt.theta) ? "inf" : fmt("%g", pt.theta);
  return std::string(problem_name(pt.prob)) + fmt("(d=%g,theta=", pt.d) + th + ")";
}

std::vector<Check> operator_properties(const VerifyOptions& opt) {
  std::vector<Check> out;
  const std::size_t cells = 1024;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<OperatorPoint> points{{Problem::matching, 1, 2},     {Problem::matching, 2, 1.5},
                                    {Problem::tsp, 1, 2},          {Problem::tsp, 2, 1.5},
                                    {Problem::edge_cover, 1, 2},   {Problem::edge_cover, 2, 1.5},
                                    {Problem::edge_cover, 1, inf}, {Problem::edge_cover, 2, inf}};
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const auto& pt = points[pi];
    ModelParams p{pt.d, pt.theta};
    std::string tag = point_name(pt);
    SurvivalGrid zero = problem_grid(pt.prob, p, cells, 0.0, edgecover_cutoff(pt.d, 1e-10));
    SurvivalGrid one = zero;
    std::fill(one.values.begin(), one.values.end(), 1.0);
    CavityOperator op(pt.prob, p, zero);

    TrialRng r(opt.seed, pi);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      SurvivalGrid f = random_survival(r, zero), h = random_survival(r, zero);
      for (std::size_t i = 0; i < h.values.size(); ++i) h.values[i] = std::max(h.values[i], f.values[i]);
      SurvivalGrid a = op(f), b = op(h);
      for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, b.values[i] - a.values[i]);
    }
    out.push_back({"antitone " + tag, worst <= 1e-13, worst, 1e-13, "max of op(G) - op(F) over F <= G", ""});

    std::vector<SurvivalGrid> it{zero};
    for (int k = 0; k < 12; ++k) it.push_back(op(it.back()));
    bool in_range = true;
    for (std::size_t k = 1; k < it.size(); ++k) {
      try {
        validate(it[k], 1e-14);
      } catch (const Error&) {
        in_range = false;
      }
    }
    out.push_back({"iterates-in-unit-interval " + tag, in_range, 0.0, 0.0, "iterates 1..12 are valid survival grids", ""});

    double even = 0.0, odd = 0.0;
    for (std::size_t k = 2; k < it.size(); ++k)
      for (std::size_t i = 0; i < it[k].values.size(); ++i) {
        double step = it[k].values[i] - it[k - 2].values[i];
        if (k % 2 == 0) even = std::max(even, -step);
        else odd = std::max(odd, step);
      }
    out.push_back({"even-up-odd-down " + tag, even <= 1e-13 && odd <= 1e-13, std::max(even, odd), 1e-13,
                   "worst violation of F_{k+2} vs F_k ordering", ""});

    if (pt.prob != Problem::edge_cover) {
      double dist = sup_distance(it[2], op(one));
      out.push_back({"second-iterate-is-V(1) " + tag, dist <= 1e-14, dist, 1e-14, "", ""});
    }

    FixedPointOptions fo;
    fo.cells = cells;
    fo.tol = 1e-10;
    double spread = 0.0;
    bool conv = true;
    SurvivalGrid ref;
    std::vector<SurvivalGrid> starts{zero, one, random_survival(r, zero)};
    for (std::size_t s = 0; s < starts.size(); ++s) {
      fo.start = starts[s];
      auto rep = iterate_to_fixed_point(pt.prob, p, fo);
      conv = conv && rep.converged && !rep.period_two;
      if (s == 0) ref = rep.fixed_point;
      else spread = std::max(spread, sup_distance(ref, rep.fixed_point));
    }
    out.push_back({"start-independent " + tag, conv && spread <= 2 * fo.tol, spread, 2 * fo.tol,
                   conv ? "zero, one and random starts" : "a start failed to converge", ""});
  }

  for (double theta : {0.5, 1.0}) {
    FixedPointOptions fo;
    fo.cells = cells;
    auto rep = iterate_to_fixed_point(Problem::matching, {1.0, theta}, fo);
    out.push_back({"converges-small-theta matching(d=1,theta=" + fmt("%g", theta) + ")",
                   rep.converged && !rep.period_two, rep.even_odd_gap, fo.tol,
                   std::to_string(rep.iterations) + " iterations", ""});
  }

  // change under each halving of the step, on the coarsest nodes
  {
    std::vector<SurvivalGrid> fps;
    for (std::size_t c : {256, 512, 1024, 2048}) {
      FixedPointOptions fo;
      fo.cells = c;
      fo.tol = 1e-13;
      fo.scheme = Scheme::averaged;
      fps.push_back(iterate_to_fixed_point(Problem::matching, {1.0, 2.0}, fo).fixed_point);
    }
    std::vector<double> change;
    for (std::size_t j = 1; j < fps.size(); ++j) {
      double m = 0.0;
      std::size_t stride_c = 1u << (j - 1), stride_f = 1u << j;
      for (std::size_t i = 0; i <= 256; ++i)
        m = std::max(m, std::abs(fps[j].values[i * stride_f] - fps[j - 1].values[i * stride_c]));
      change.push_back(m);
    }
    bool ok = change[1] <= 4 * change[0] && change[2] <= 4 * change[1];
    out.push_back({"grid-refinement matching(d=1,theta=2)", ok, change[2] > 0 ? change[1] / change[2] : 0.0, 4.0,
                   fmt("changes %.3g %.3g %.3g", change[0], change[1], change[2]), ""});
  }
  return out;
}

std::vector<Check> simulator_consistency(const VerifyOptions& opt) {
  std::vector<Check> out;
  ModelParams p{opt.d, opt.theta};
  validate(p);
  require(std::isfinite(p.theta), "simulation needs finite theta");
  std::string tag = fmt("(d=%g,theta=%g,k=", opt.d, opt.theta) + std::to_string(opt.k) + ")";
  SimOptions so;
  so.samples = opt.samples;
  so.seed = opt.seed;
  so.jobs = opt.jobs;
  double eps = dkw_epsilon(opt.samples, opt.alpha);
  for (Boundary b : {Boundary::favor_bob, Boundary::favor_alice}) {
    auto v = sample_root_values(p, opt.k, b, Problem::matching, so);
    auto law = partial_law(Problem::matching, p, opt.k, b);
    double ks = ks_distance(v, law);
    out.push_back({std::string("law-") + boundary_name(b) + " " + tag, ks <= eps, ks, eps,
                   "Kolmogorov-Smirnov distance to the operator iterate, DKW band", ""});
  }

  // per-sample sandwich with unrestricted windows
  {
    std::size_t bad = 0, n = std::min<std::size_t>(opt.samples, 500);
    double lo = -opt.theta, hi = opt.theta;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<double> fa, fb;
      for (std::size_t k = 0; k <= opt.k; k += 2) {
        fa.push_back(lazy_root_value(p, opt.seed ^ 0x5a5a, s, k, Boundary::favor_alice, Problem::matching, lo, hi));
        fb.push_back(lazy_root_value(p, opt.seed ^ 0x5a5a, s, k, Boundary::favor_bob, Problem::matching, lo, hi));
      }
      for (std::size_t j = 0; j < fa.size(); ++j) {
        if (fa[j] > fb[j]) ++bad;
        if (j > 0 && (fa[j] < fa[j - 1] || fb[j] > fb[j - 1])) ++bad;
      }
    }
    out.push_back({"sandwich " + tag, bad == 0, static_cast<double>(bad), 0.0,
                   std::to_string(n) + " samples, even depths", ""});
  }

  {
    SimOptions gs = so;
    gs.samples = std::min<std::size_t>(opt.samples, 20000);
    auto rows = replica_gap_profile(p, opt.k, Problem::matching, gs);
    bool mono = true;
    for (std::size_t k = 1; k < rows.size(); ++k) mono = mono && rows[k].mean_gap <= rows[k - 1].mean_gap;
    out.push_back({"gap-monotone " + tag, mono, rows.back().mean_gap, rows.front().mean_gap,
                   "mean replica gap over k = 0.." + std::to_string(opt.k), ""});
  }

  {
    std::size_t roots = 20000;
    double sum = 0.0;
    for (std::size_t s = 0; s < roots; ++s)
      sum += static_cast<double>(sample_cluster(p, 1, opt.seed ^ 0xa5a5, s).nodes.size() - 1);
    double m = std::pow(p.theta, p.d), mean = sum / roots, sigma = std::sqrt(m / roots);
    out.push_back({"offspring-mean " + tag, std::abs(mean - m) <= 4 * sigma, mean, m,
                   fmt("within 4 sigma = %.3g", 4 * sigma), ""});
  }

  {
    bool ok = true;
    double half = 0.5 * p.theta;
    for (std::size_t s = 0; s < 200 && ok; ++s) {
      auto c = sample_cluster(p, opt.k, opt.seed ^ 0x3c3c, s);
      for (Problem g : {Problem::matching, Problem::tsp, Problem::edge_cover})
        for (Boundary b : {Boundary::favor_bob, Boundary::favor_alice}) {
          double floor = g == Problem::edge_cover ? 0.0 : -half;
          for (double x : partial_valuation(c, opt.k, b, g))
            if (!(x >= floor && x <= half)) ok = false;
        }
    }
    out.push_back({"valuation-range " + tag, ok, 0.0, 0.0, "200 clusters, all games and modes", ""});
  }
  return out;
}

std::vector<Check> bounds_sandwich(const VerifyOptions& opt) {
  std::vector<Check> out;
  for (double d : {1.0, 1.5, 2.0, 3.0}) {
    Bounds b = rigorous_bounds(d);
    BetaOptions bo;
    bo.jobs = opt.jobs;
    auto est = beta_limit(Problem::matching, d, default_schedule(Problem::matching, d), bo);
    bool ok = b.lower <= est.beta_limit && est.beta_limit <= b.upper;
    out.push_back({fmt("bounds d=%g", d), ok && est.converged, est.beta_limit, b.upper,
                   fmt("lower %.10f <= beta %.10f <= upper %.10f", b.lower, est.beta_limit, b.upper), ""});

    FixedPointOptions fo;
    fo.scheme = Scheme::averaged;
    fo.tol = 1e-12;
    fo.cells = 2048;
    ModelParams p{d, 4.0};
    auto fp = iterate_to_fixed_point(Problem::matching, p, fo).fixed_point;
    double diff = std::abs(beta_theta(fp, p) - beta_theta_convolution(fp, p));
    out.push_back({fmt("beta-formulas-agree d=%g theta=4", d), diff <= 1e-6, diff, 1e-6, "", ""});
  }
  return out;
}

}  // namespace

std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& opt) {
  if (suite == "payoff-identity") return payoff_identity(opt);
  if (suite == "operator-properties") return operator_properties(opt);
  if (suite == "simulator-consistency") return simulator_consistency(opt);
  if (suite == "bounds-sandwich") return bounds_sandwich(opt);
  fail(Status::invalid_argument, "unknown suite '" + suite + "'");
}

}  // namespace rsym
