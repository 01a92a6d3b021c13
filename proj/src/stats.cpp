#include "rsym/stats.hpp"

#include <cmath>
#include <limits>

#include "rsym/error.hpp"
#include "rsym/games.hpp"
#include "rsym/graph.hpp"
#include "rsym/parallel.hpp"
#include "rsym/pwit.hpp"
#include "rsym/rng.hpp"

namespace rsym {

MeanEstimate estimate_mean(const std::vector<double>& xs) {
  MeanEstimate m;
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / xs.size();
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.std_error = std::sqrt(ss / (xs.size() - 1) / xs.size());
  }
  m.ci_halfwidth = 1.96 * m.std_error;
  return m;
}

FiniteNStats empirical_statistics(int n, double d, double theta, std::size_t trials, std::uint64_t seed,
                                  std::size_t jobs) {
  require(n >= 2 && n <= 24, "n must lie in [2, 24] for the exact solver");
  require(d >= 1.0, "d must be >= 1");
  require(theta > 0.0, "theta must be positive");
  require(trials >= 1, "trials must be >= 1");
  FiniteNStats s;
  s.n = n;
  s.d = d;
  s.theta = theta;
  s.trials = trials;
  s.has_perfect = n % 2 == 0;
  std::vector<double> dil(trials), q(trials), perf(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    WeightedGraph g = sample_meanfield(n, d, derive_key(seed, t));
    DilutedSolution m = diluted_matching(g, theta);
    dil[t] = m.cost / n;
    q[t] = static_cast<double>(m.deficiency) / n;
    if (s.has_perfect) perf[t] = diluted_matching(g, std::numeric_limits<double>::infinity()).cost / n;
  });
  s.diluted = estimate_mean(dil);
  s.unmatched = estimate_mean(q);
  if (s.has_perfect) s.perfect = estimate_mean(perf);
  return s;
}

namespace {

// Size of the ball of radius k around vertex 0 in K_n using edges <= θ.
// Edge lengths come from a keyed hash of the pair, so the graph is never stored.
std::size_t kn_ball(int n, double d, double theta, std::size_t k, std::uint64_t key) {
  std::vector<char> seen(n, 0);
  std::vector<int> frontier{0}, next;
  seen[0] = 1;
  std::size_t count = 1;
  for (std::size_t depth = 0; depth < k && !frontier.empty(); ++depth) {
    next.clear();
    for (int u : frontier)
      for (int v = 0; v < n; ++v) {
        if (seen[v]) continue;
        std::uint64_t a = std::min(u, v), b = std::max(u, v);
        double x = -std::log(unit_open(derive_key(key, a * static_cast<std::uint64_t>(n) + b)));
        if (std::pow(n * x, 1.0 / d) <= theta) {
          seen[v] = 1;
          next.push_back(v);
          ++count;
        }
      }
    frontier.swap(next);
  }
  return count;
}

}  // namespace

CouplingStats neighborhood_coupling_stat(int n, double d, double theta, std::size_t k, std::size_t trials,
                                         std::uint64_t seed, std::size_t jobs) {
  require(n >= 2, "n must be >= 2");
  require(trials >= 2, "trials must be >= 2");
  ModelParams p{d, theta};
  validate(p);
  require(std::isfinite(theta), "theta must be finite");
  CouplingStats c;
  c.expected_pwit = expected_cluster_nodes(p, k);
  if (c.expected_pwit > 1e6) fail(Status::too_large, "expected neighbourhood size exceeds 1e6 per trial");
  std::vector<double> kn(trials), pw(trials);
  std::uint64_t kn_seed = derive_key(seed, 1), pw_seed = derive_key(seed, 2);
  parallel_for(trials, jobs, [&](std::size_t t) {
    kn[t] = static_cast<double>(kn_ball(n, d, theta, k, derive_key(kn_seed, t)));
    pw[t] = static_cast<double>(sample_cluster(p, k, pw_seed, t).nodes.size());
  });
  MeanEstimate a = estimate_mean(kn), b = estimate_mean(pw);
  c.mean_kn = a.mean;
  c.mean_pwit = b.mean;
  double se = std::hypot(a.std_error, b.std_error);
  c.z_score = se > 0.0 ? (a.mean - b.mean) / se : 0.0;
  return c;
}

}  // namespace rsym
