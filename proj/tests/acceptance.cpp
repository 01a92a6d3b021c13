// One line per acceptance criterion; exit status 1 if any of them fails.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rsym/cavity.hpp"
#include "rsym/limits.hpp"
#include "rsym/parallel.hpp"
#include "rsym/pwit.hpp"
#include "rsym/special.hpp"
#include "rsym/stats.hpp"
#include "rsym/verify.hpp"

using namespace rsym;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

__attribute__((format(printf, 3, 4))) void note(Outcome& o, bool ok, const char* fmt, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += buf;
  if (!ok) o.detail += " [x]";
  o.pass = o.pass && ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const double kQs[] = {0.1, 0.25, 0.5};
const std::size_t kJobs = default_jobs();

Outcome closed_form_fixed_point() {
  Outcome o;
  for (double q : kQs) {
    double a = 1.0 + q, theta = -2.0 * std::log(q) / a;
    auto t0 = std::chrono::steady_clock::now();
    FixedPointOptions opt;
    opt.cells = 4096;
    auto rep = iterate_to_fixed_point(Problem::matching, {1.0, theta}, opt);
    double secs = seconds_since(t0);
    double err = 0.0;
    for (std::size_t i = 0; i <= rep.fixed_point.cells(); ++i) {
      double x = rep.fixed_point.node(i);
      err = std::max(err, std::abs(rep.fixed_point.values[i] - a / (1.0 + std::exp(a * x))));
    }
    note(o, rep.converged && err <= 1e-6 && secs <= 10.0, "q=%g err=%.2e %.2fs", q, err, secs);
  }
  return o;
}

Outcome closed_form_beta() {
  Outcome o;
  for (double q : kQs) {
    double theta = -2.0 * std::log(q) / (1.0 + q);
    FixedPointOptions opt;
    opt.cells = 4096;
    auto rep = iterate_to_fixed_point(Problem::matching, {1.0, theta}, opt);
    double b = beta_theta(rep.fixed_point, {1.0, theta});
    double err = std::abs(b - matching_d1_beta(q));
    note(o, rep.converged && err <= 1e-6, "q=%g beta=%.10f err=%.2e", q, b, err);
  }
  return o;
}

Outcome limit_close(Problem prob, double d, double want, double tol) {
  Outcome o;
  BetaOptions opt;
  opt.jobs = kJobs;
  auto est = beta_limit(prob, d, default_schedule(prob, d), opt);
  double err = std::abs(est.beta_limit - want);
  note(o, est.converged && err <= tol, "beta=%.12f err=%.2e (theta up to %g)", est.beta_limit, err,
       est.rows.back().theta);
  return o;
}

Outcome matching_d2() {
  Outcome o;
  BetaOptions opt;
  opt.jobs = kJobs;
  auto est = beta_limit(Problem::matching, 2.0, default_schedule(Problem::matching, 2.0), opt);
  opt.richardson = false;
  opt.cells *= 2;
  auto fine = beta_limit(Problem::matching, 2.0, default_schedule(Problem::matching, 2.0), opt);
  double err = std::abs(est.beta_limit - 0.57175904959888);
  note(o, est.converged && err <= 5e-6, "beta=%.12f err=%.2e", est.beta_limit, err);
  note(o, true, "refinement moved beta by %.2e", std::abs(est.beta_limit - fine.beta_limit));
  return o;
}

Outcome tsp_d1() {
  Outcome o = limit_close(Problem::tsp, 1.0, 2.0415481864, 1e-4);
  double ref = tsp_d1_reference();
  note(o, std::abs(ref - 2.0415481864) <= 1e-8, "parametric=%.12f", ref);
  return o;
}

Outcome edge_cover_d1() {
  Outcome o;
  double w = lambert_w(1.0);
  auto ec = edgecover_d1();
  note(o, std::abs(ec.cost - (w + w * w / 2)) <= 1e-9, "cost=%.12f", ec.cost);
  note(o, std::abs(ec.cost - 0.72797) <= 5e-6, "vs 0.72797");
  FixedPointOptions opt;
  opt.cells = 16384;
  opt.scheme = Scheme::averaged;
  auto rep = iterate_to_fixed_point(Problem::edge_cover, {1.0, INFINITY}, opt);
  double err = 0.0;
  for (std::size_t i = 1; i <= rep.fixed_point.cells(); ++i)
    err = std::max(err, std::abs(rep.fixed_point.values[i] - w * std::exp(-rep.fixed_point.node(i))));
  note(o, rep.converged && err <= 1e-7, "grid fixed point err=%.2e", err);
  return o;
}

Outcome edge_cover_d2() {
  Outcome o;
  auto ec = edgecover_d2();
  note(o, std::abs(ec.A - 0.41079) <= 1e-4, "A=%.8f", ec.A);
  note(o, std::abs(ec.B - 0.18005) <= 1e-4, "B=%.8f", ec.B);
  note(o, std::abs(ec.cost - 0.55872) <= 1e-4, "cost=%.8f", ec.cost);
  double res = std::abs(ec.B - (std::exp(-2.0 * ec.B) / 2.0 - ec.A * ec.A));
  note(o, res <= 1e-9, "constraint residual=%.1e", res);
  return o;
}

Outcome bounds_sandwich() {
  Outcome o;
  BetaOptions opt;
  opt.jobs = kJobs;
  for (double d : {1.0, 1.5, 2.0, 3.0}) {
    auto b = rigorous_bounds(d);
    double beta = beta_limit(Problem::matching, d, default_schedule(Problem::matching, d), opt).beta_limit;
    note(o, b.lower <= beta && beta <= b.upper, "d=%g %.6f<=%.8f<=%.6f", d, b.lower, beta, b.upper);
  }
  auto b2 = rigorous_bounds(2.0);
  double lo = std::sqrt(std::numbers::pi) / 4.0;
  note(o, std::abs(b2.lower - lo) <= 1e-10 && std::abs(b2.upper - 0.57878934334852925011) <= 1e-10,
       "d=2 bounds %.10f %.10f", b2.lower, b2.upper);
  return o;
}

Outcome payoff_identity() {
  Outcome o;
  VerifyOptions opt;
  opt.graphs = 1000;
  opt.trees = 500;
  opt.jobs = kJobs;
  for (const auto& c : run_suite("payoff-identity", opt))
    if (c.name == "matching-identity" || c.name == "capacity-2-tree-identity")
      note(o, c.passed, "%s: %s", c.name.c_str(), c.detail.c_str());
  return o;
}

Outcome simulator_consistency() {
  Outcome o;
  SimOptions so;
  so.samples = 100000;
  so.jobs = kJobs;
  so.seed = 2024;
  for (auto [d, theta] : {std::pair{1.0, 2.0}, std::pair{2.0, 1.5}}) {
    ModelParams p{d, theta};
    auto v = sample_root_values(p, 6, Boundary::favor_bob, Problem::matching, so);
    double ks = ks_distance(v, partial_law(Problem::matching, p, 6, Boundary::favor_bob));
    double eps = dkw_epsilon(v.size(), 0.01);
    note(o, ks <= eps, "d=%g theta=%g KS=%.4f band=%.4f", d, theta, ks, eps);
  }
  auto rows = replica_gap_profile({1.0, 4.0}, 20, Problem::matching, so);
  bool mono = true;
  for (std::size_t k = 3; k <= 20; ++k) mono = mono && rows[k].mean_gap <= rows[k - 1].mean_gap;
  note(o, mono, "gap non-increasing on k=2..20");
  note(o, rows[20].mean_gap < 0.05, "gap(k=20)=%.4f+-%.4f vs 0.05", rows[20].mean_gap, rows[20].ci_halfwidth);
  return o;
}

Outcome finite_n() {
  Outcome o;
  auto st = empirical_statistics(16, 1.0, 1e6, 500, 12, kJobs);
  double sigma = st.perfect.std_error;
  double lo = 0.5 * std::tgamma(2.0) - 3.0 * sigma, hi = 0.5 * zeta(2.0) + 0.15;
  note(o, st.has_perfect && lo <= st.perfect.mean && st.perfect.mean <= hi, "M_n/n=%.4f in [%.4f, %.4f]",
       st.perfect.mean, lo, hi);
  double prev = 2.0;
  bool dec = true;
  std::string qs;
  for (double theta : {0.5, 1.0, 2.0, 4.0}) {
    double q = empirical_statistics(16, 1.0, theta, 500, 12, kJobs).unmatched.mean;
    dec = dec && q < prev;
    prev = q;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.3f", qs.empty() ? "" : ",", q);
    qs += buf;
  }
  note(o, dec, "q_n over theta 0.5,1,2,4: %s", qs.c_str());
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"d=1 closed-form fixed point", closed_form_fixed_point},
      {"d=1 finite-theta cost", closed_form_beta},
      {"matching d=1 limit", [] { return limit_close(Problem::matching, 1.0, std::numbers::pi * std::numbers::pi / 12, 1e-4); }},
      {"matching d=2 limit", matching_d2},
      {"tsp d=1 limit", tsp_d1},
      {"tsp d=2 limit", [] { return limit_close(Problem::tsp, 2.0, 1.285153753372032, 1e-5); }},
      {"edge cover d=1", edge_cover_d1},
      {"edge cover d=2", edge_cover_d2},
      {"bounds sandwich", bounds_sandwich},
      {"payoff identity", payoff_identity},
      {"simulator vs operator", simulator_consistency},
      {"finite-n properties", finite_n},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%-4s %2zu %-28s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, seconds_since(t0),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
