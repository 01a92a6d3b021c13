#include "rsym/pwit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "rsym/error.hpp"
#include "rsym/parallel.hpp"
#include "rsym/rng.hpp"

namespace rsym {

const char* boundary_name(Boundary b) { return b == Boundary::favor_bob ? "favor_bob" : "favor_alice"; }

double boundary_value(Problem game, Boundary mode, std::size_t depth, double theta) {
  double hi = 0.5 * theta;
  double low = game == Problem::edge_cover ? 0.0 : -hi;
  bool even = depth % 2 == 0;
  bool bob = mode == Boundary::favor_bob;
  return even == bob ? hi : low;
}

double expected_cluster_nodes(const ModelParams& p, std::size_t depth_limit) {
  double m = std::pow(p.theta, p.d), total = 0.0, level = 1.0;
  for (std::size_t j = 0; j <= depth_limit; ++j) {
    total += level;
    level *= m;
    if (!std::isfinite(total)) break;
  }
  return total;
}

namespace {

void check_sim_params(const ModelParams& p) {
  validate(p);
  require(std::isfinite(p.theta), "simulation needs finite theta");
}

// Arrivals of a unit Poisson process mapped through Γ -> Γ^(1/d), so the
// lengths are the points of intensity d l^(d-1) in increasing order.
class Children {
 public:
  Children(std::uint64_t key, const ModelParams& p) : rs_(key), theta_(p.theta), inv_d_(1.0 / p.d), d_one_(p.d == 1.0) {}
  bool next(double& l) {
    gamma_ += rs_.exponential();
    l = d_one_ ? gamma_ : std::pow(gamma_, inv_d_);
    return l <= theta_;
  }

 private:
  KeyedStream rs_;
  double gamma_ = 0.0;
  double theta_, inv_d_;
  bool d_one_;
};

double combine(Problem game, double hi, std::vector<double>& terms) {
  double v = hi;
  if (game == Problem::tsp) {
    if (terms.size() >= 2) {
      std::nth_element(terms.begin(), terms.begin() + 1, terms.end());
      v = std::min(hi, terms[1]);
    }
  } else {
    for (double t : terms) v = std::min(v, t);
  }
  if (game == Problem::edge_cover) v = std::max(0.0, v);
  return v;
}

struct LazyEval {
  ModelParams p;
  double hi;
  double floor;
  Problem game;
  Boundary mode;
  std::size_t k;
  std::uint64_t visits = 0;
  std::uint64_t budget = 0;

  double eval(std::uint64_t key, std::size_t depth, double lo, double up) {
    if (++visits > budget && budget != 0)
      fail(Status::too_large, "node visit budget of " + std::to_string(budget) + " exceeded");
    if (depth == k) return std::clamp(boundary_value(game, mode, k, p.theta), lo, up);
    if (lo >= hi) return lo;
    if (up <= floor) return up;
    double A = std::max(lo, floor), B = std::min(up, hi);
    if (A >= B) return A;
    Children ch(key, p);
    double l;
    if (game == Problem::tsp) {
      double m1 = B, m2 = B;
      for (std::uint64_t i = 0; ch.next(l); ++i) {
        if (l - hi >= m2) break;
        double clo = l - m2, chi = l - A;
        double c = eval(derive_key(key, i), depth + 1, clo, chi);
        if (c <= clo) continue;
        double t = c >= chi ? A : l - c;
        if (t < m1) {
          m2 = m1;
          m1 = t;
        } else if (t < m2) {
          m2 = t;
        }
        if (m2 <= A) return A;
      }
      return m2;
    }
    double m = B;
    for (std::uint64_t i = 0; ch.next(l); ++i) {
      if (l - hi >= m) break;
      double clo = l - m, chi = l - A;
      double c = eval(derive_key(key, i), depth + 1, clo, chi);
      if (c >= chi) return A;
      if (c > clo) {
        m = l - c;
        if (m <= A) return A;
      }
    }
    return m;
  }
};

}  // namespace

ThetaCluster sample_cluster(const ModelParams& p, std::size_t depth_limit, std::uint64_t seed, std::uint64_t index,
                            double max_expected) {
  check_sim_params(p);
  double expected = expected_cluster_nodes(p, depth_limit);
  if (expected > max_expected)
    fail(Status::too_large, "expected cluster size " + std::to_string(expected) + " exceeds the cap of " +
                                std::to_string(max_expected) + " nodes");
  ThetaCluster c;
  c.params = p;
  c.depth_limit = depth_limit;
  c.seed = seed;
  c.index = index;
  std::vector<std::uint64_t> keys;
  c.nodes.push_back({});
  keys.push_back(derive_key(seed, index));
  for (std::size_t v = 0; v < c.nodes.size(); ++v) {
    if (c.nodes[v].depth >= depth_limit) continue;
    c.nodes[v].first_child = c.nodes.size();
    Children ch(keys[v], p);
    double l;
    for (std::uint64_t i = 0; ch.next(l); ++i) {
      ThetaCluster::Node n;
      n.parent = static_cast<std::int64_t>(v);
      n.length = l;
      n.depth = c.nodes[v].depth + 1;
      c.nodes.push_back(n);
      keys.push_back(derive_key(keys[v], i));
      ++c.nodes[v].child_count;
    }
  }
  return c;
}

std::vector<double> partial_valuation(const ThetaCluster& c, std::size_t k, Boundary mode, Problem game) {
  if (k > c.depth_limit) fail(Status::invalid_argument, "k exceeds the cluster depth limit");
  double hi = 0.5 * c.params.theta;
  std::vector<double> f(c.nodes.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<double> terms;
  for (std::size_t idx = c.nodes.size(); idx-- > 0;) {
    const auto& n = c.nodes[idx];
    if (n.depth > k) continue;
    if (n.depth == k) {
      f[idx] = boundary_value(game, mode, k, c.params.theta);
      continue;
    }
    terms.clear();
    for (std::size_t j = 0; j < n.child_count; ++j) {
      std::size_t ci = n.first_child + j;
      terms.push_back(c.nodes[ci].length - f[ci]);
    }
    f[idx] = combine(game, hi, terms);
  }
  return f;
}

double lazy_root_value(const ModelParams& p, std::uint64_t seed, std::uint64_t index, std::size_t k, Boundary mode,
                       Problem game, double lo, double hi, LazyStats* stats, std::uint64_t visit_budget) {
  check_sim_params(p);
  require(lo < hi, "window must satisfy lo < hi");
  LazyEval ev{p, 0.5 * p.theta, game == Problem::edge_cover ? 0.0 : -0.5 * p.theta, game, mode, k};
  ev.budget = visit_budget;
  double v = ev.eval(derive_key(seed, index), 0, lo, hi);
  if (stats) stats->visits += ev.visits;
  return v;
}

std::vector<GapRow> replica_gap_profile(const ModelParams& p, std::size_t k_max, Problem game, const SimOptions& opt) {
  check_sim_params(p);
  require(opt.samples >= 1, "samples must be >= 1");
  std::size_t rows = k_max + 1;
  std::vector<double> fa(opt.samples * rows), fb(opt.samples * rows);
  double hi = 0.5 * p.theta;
  parallel_for(opt.samples, opt.jobs, [&](std::size_t s) {
    LazyEval bob{p, hi, game == Problem::edge_cover ? 0.0 : -hi, game, Boundary::favor_bob, 0};
    LazyEval alice = bob;
    alice.mode = Boundary::favor_alice;
    std::uint64_t root = derive_key(opt.seed, s);
    double a = boundary_value(game, Boundary::favor_alice, 0, p.theta);
    double b = boundary_value(game, Boundary::favor_bob, 0, p.theta);
    fa[s * rows] = a;
    fb[s * rows] = b;
    for (std::size_t k = 1; k <= k_max; ++k) {
      if (a < b) {
        bob.k = alice.k = k;
        bob.visits = alice.visits = 0;
        bob.budget = alice.budget = opt.visit_budget;
        // f_A^(k-1) <= f_A^k <= f_B^k <= f_B^(k-1)
        double nb = bob.eval(root, 0, a, b);
        double na = nb > a ? alice.eval(root, 0, a, nb) : a;
        a = na;
        b = nb;
      }
      fa[s * rows + k] = a;
      fb[s * rows + k] = b;
    }
  });
  std::vector<GapRow> out(rows);
  double n = static_cast<double>(opt.samples);
  for (std::size_t k = 0; k < rows; ++k) {
    double sum = 0.0, sum2 = 0.0, sa = 0.0, sb = 0.0, zeros = 0.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      double g = fb[s * rows + k] - fa[s * rows + k];
      sum += g;
      sum2 += g * g;
      sa += fa[s * rows + k];
      sb += fb[s * rows + k];
      if (g == 0.0) zeros += 1.0;
    }
    GapRow& r = out[k];
    r.k = k;
    r.mean_gap = sum / n;
    double var = opt.samples > 1 ? std::max(0.0, (sum2 - sum * sum / n) / (n - 1.0)) : 0.0;
    r.ci_halfwidth = 1.96 * std::sqrt(var / n);
    r.mean_fa = sa / n;
    r.mean_fb = sb / n;
    r.zero_fraction = zeros / n;
  }
  return out;
}

GapRow replica_gap(const ModelParams& p, std::size_t k, Problem game, const SimOptions& opt) {
  return replica_gap_profile(p, k, game, opt).back();
}

std::vector<double> sample_root_values(const ModelParams& p, std::size_t k, Boundary mode, Problem game,
                                       const SimOptions& opt) {
  check_sim_params(p);
  require(opt.samples >= 1, "samples must be >= 1");
  std::vector<double> v(opt.samples);
  double hi = 0.5 * p.theta;
  double low = game == Problem::edge_cover ? 0.0 : -hi;
  parallel_for(opt.samples, opt.jobs, [&](std::size_t s) {
    // the value always lies in [low, hi]; widen slightly so neither end clamps
    double span = hi - low;
    v[s] = lazy_root_value(p, opt.seed, s, k, mode, game, low - span, hi + span, nullptr, opt.visit_budget);
  });
  std::sort(v.begin(), v.end());
  return v;
}

SurvivalGrid empirical_survival(const ModelParams& p, std::size_t k, Boundary mode, Problem game,
                                const SimOptions& opt, std::size_t cells) {
  auto v = sample_root_values(p, k, mode, game, opt);
  SurvivalGrid g = problem_grid(game, p, cells, 0.0);
  double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i <= cells; ++i) {
    double x = g.node(i);
    auto it = std::lower_bound(v.begin(), v.end(), x);
    g.values[i] = static_cast<double>(v.end() - it) / n;
  }
  return g;
}

SurvivalGrid partial_law(Problem game, const ModelParams& p, std::size_t k, Boundary mode, std::size_t cells) {
  check_sim_params(p);
  double b = boundary_value(game, mode, k, p.theta);
  SurvivalGrid start = problem_grid(game, p, cells, b == 0.5 * p.theta ? 1.0 : 0.0);
  return iterate(game, p, start, k);
}

double ks_distance(const std::vector<double>& sorted, const SurvivalGrid& f) {
  require(!sorted.empty(), "ks_distance needs samples");
  double n = static_cast<double>(sorted.size());
  auto left = [&](double x) { return x <= f.lo ? f.below : eval(f, x); };           // P(f >= x)
  auto right = [&](double x) { return x < f.lo ? f.below : (x >= f.hi ? f.above : eval(f, x)); };  // P(f > x)
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    double x = sorted[i];
    double at = (n - static_cast<double>(i)) / n;     // fraction >= x
    double after = (n - static_cast<double>(j)) / n;  // fraction > x
    d = std::max({d, std::abs(at - left(x)), std::abs(after - right(x))});
    i = j;
  }
  return d;
}

double dkw_epsilon(std::size_t n, double alpha) {
  require(n >= 1 && alpha > 0.0 && alpha < 1.0, "dkw_epsilon needs n >= 1 and alpha in (0,1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

}  // namespace rsym
