#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "rsym/error.hpp"
#include "rsym/games.hpp"
#include "rsym/graph.hpp"
#include "rsym/rng.hpp"
#include "rsym/stats.hpp"

using namespace rsym;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

WeightedGraph make(int n, std::vector<Edge> edges, std::vector<int> cap = {}) {
  WeightedGraph g;
  g.n = n;
  g.edges = std::move(edges);
  g.capacity = std::move(cap);
  return g;
}

WeightedGraph random_graph(TrialRng& rng, int n, double density, double theta) {
  WeightedGraph g;
  g.n = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform() < density) g.edges.push_back({u, v, theta * (0.05 + 1.95 * rng.uniform())});
  return g;
}

WeightedGraph random_tree(TrialRng& rng, int n, double theta) {
  WeightedGraph g;
  g.n = n;
  for (int v = 1; v < n; ++v)
    g.edges.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(v))), v, theta * (0.05 + 1.95 * rng.uniform())});
  return g;
}

// Partial matchings by recursion on the lowest free vertex.
double brute_matching(const WeightedGraph& g, double theta, std::uint32_t used = 0) {
  int v = 0;
  while (v < g.n && (used >> v & 1u)) ++v;
  if (v == g.n) return 0.0;
  std::uint32_t with_v = used | (1u << v);
  double best = (std::isinf(theta) ? kInf : theta / 2) + brute_matching(g, theta, with_v);
  for (const Edge& e : g.edges) {
    int w = e.u == v ? e.v : (e.v == v ? e.u : -1);
    if (w < 0 || (used >> w & 1u)) continue;
    best = std::min(best, e.length + brute_matching(g, theta, with_v | (1u << w)));
  }
  return best;
}

// Every edge subset, in reverse bit order, with capacity and cover rules.
double brute_subsets(const WeightedGraph& g, double theta, bool cover) {
  std::size_t m = g.edges.size();
  REQUIRE(m <= 20);
  double best = kInf;
  for (std::uint64_t mask = (std::uint64_t{1} << m); mask-- > 0;) {
    std::vector<int> deg(g.n, 0);
    double cost = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) {
        ++deg[g.edges[i].u];
        ++deg[g.edges[i].v];
        cost += g.edges[i].length;
      }
    bool ok = true;
    for (int v = 0; v < g.n; ++v) {
      int missing = cover ? (deg[v] == 0 ? 1 : 0) : g.cap(v) - deg[v];
      if (missing < 0) ok = false;
      else if (missing > 0) cost += std::isinf(theta) ? kInf : missing * theta / 2;
    }
    if (ok) best = std::min(best, cost);
  }
  return best;
}

// Plain minimax over self-avoiding walks, no memo.
double brute_game(const WeightedGraph& g, int v, double theta, std::uint32_t visited) {
  double best = theta / 2;  // mover quits, opponent collects θ/2
  for (const Edge& e : g.edges) {
    int w = e.u == v ? e.v : (e.v == v ? e.u : -1);
    if (w < 0 || (visited >> w & 1u)) continue;
    best = std::min(best, e.length - brute_game(g, w, theta, visited | (1u << w)));
  }
  return best;
}

double cost_of(const WeightedGraph& g, const DilutedSolution& s) {
  double c = 0.0;
  for (int i : s.chosen_edges) c += g.edges[i].length;
  return c;
}

}  // namespace

TEST_CASE("small matching examples") {
  auto single = make(1, {});
  auto s = diluted_matching(single, 3.0);
  CHECK(s.cost == 1.5);
  CHECK(s.chosen_edges.empty());
  for (double l : {0.4, 2.9, 3.0, 5.0}) {
    auto pair = make(2, {{0, 1, l}});
    CHECK(diluted_matching(pair, 3.0).cost == doctest::Approx(std::min(l, 3.0)));
    CHECK(game_value(pair, 0, 3.0) == doctest::Approx(std::min(1.5, l - 1.5)));
    CHECK(verify_payoff_identity(pair, 0, 3.0, GameKind::matching).equal);
  }
  CHECK(game_value(single, 0, 3.0) == 1.5);
  CHECK(verify_payoff_identity(single, 0, 3.0, GameKind::matching).equal);
}

TEST_CASE("matching solver against enumeration") {
  TrialRng rng(41, 0);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng.below(7));
    double theta = 0.5 + 3.0 * rng.uniform();
    auto g = random_graph(rng, n, 0.6, theta);
    auto s = diluted_matching(g, theta);
    CHECK(s.cost == doctest::Approx(brute_matching(g, theta)).epsilon(1e-12));
    CHECK(s.edge_cost == doctest::Approx(cost_of(g, s)).epsilon(1e-12));
    CHECK(s.cost == doctest::Approx(s.edge_cost + s.deficiency * theta / 2).epsilon(1e-12));
    std::vector<int> deg(n, 0);
    for (int i : s.chosen_edges) {
      CHECK(g.edges[i].length <= theta);
      ++deg[g.edges[i].u];
      ++deg[g.edges[i].v];
    }
    int unmatched = 0;
    for (int x : deg) {
      CHECK(x <= 1);
      unmatched += x == 0;
    }
    CHECK(unmatched == s.deficiency);
    CHECK(diluted_flow(g, theta).cost == doctest::Approx(s.cost).epsilon(1e-12));
  }
  // K8 mean-field instances, perfect and diluted
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = sample_meanfield(8, 1.0, seed);
    CHECK(diluted_matching(g, kInf).cost == doctest::Approx(brute_matching(g, kInf)).epsilon(1e-12));
    CHECK(diluted_matching(g, 2.0).cost == doctest::Approx(brute_matching(g, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("matching solver rejects what it cannot do") {
  auto odd = make(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK_THROWS_AS(diluted_matching(odd, kInf), Error);
  auto no_pm = make(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  try {
    diluted_matching(no_pm, kInf);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.status() == Status::infeasible);
  }
  auto big = make(25, {});
  try {
    diluted_matching(big, 1.0);
    FAIL("expected too_large");
  } catch (const Error& e) {
    CHECK(e.status() == Status::too_large);
  }
  CHECK_THROWS_AS(diluted_matching(make(2, {{0, 1, 1.0}}, {2, 1}), 1.0), Error);
}

TEST_CASE("flow and edge cover against enumeration") {
  // triangle with capacity 2 and short edges: use all three
  auto tri = make(3, {{0, 1, 0.3}, {1, 2, 0.4}, {0, 2, 0.5}}, {2, 2, 2});
  auto s = diluted_flow(tri, 2.0);
  CHECK(s.chosen_edges.size() == 3);
  CHECK(s.cost == doctest::Approx(1.2));

  // path a-b-c: both edges, or one edge and a penalty
  for (auto [a, b, theta] : {std::tuple{1.0, 2.0, 100.0}, std::tuple{1.0, 2.0, 2.5}, std::tuple{3.0, 0.5, 4.0}}) {
    auto path = make(3, {{0, 1, a}, {1, 2, b}});
    double want = std::min({a + b, a + theta / 2, b + theta / 2, 1.5 * theta});
    CHECK(diluted_edge_cover(path, theta).cost == doctest::Approx(want));
  }
  CHECK(diluted_edge_cover(make(2, {{0, 1, 0.7}}), 3.0).cost == doctest::Approx(0.7));
  CHECK(diluted_edge_cover(make(1, {}), 3.0).cost == 1.5);

  TrialRng rng(43, 0);
  for (int t = 0; t < 150; ++t) {
    int n = 2 + static_cast<int>(rng.below(6));
    double theta = 0.5 + 3.0 * rng.uniform();
    auto g = random_graph(rng, n, 0.7, theta);
    g.capacity.resize(n);
    for (int& c : g.capacity) c = static_cast<int>(rng.below(3));
    CHECK(diluted_flow(g, theta).cost == doctest::Approx(brute_subsets(g, theta, false)).epsilon(1e-12));
    g.capacity.clear();
    CHECK(diluted_edge_cover(g, theta).cost == doctest::Approx(brute_subsets(g, theta, true)).epsilon(1e-12));
    if (t % 5 == 0) {
      double ec = brute_subsets(g, kInf, true);
      if (std::isfinite(ec)) CHECK(diluted_edge_cover(g, kInf).cost == doctest::Approx(ec).epsilon(1e-12));
    }
  }

  WeightedGraph many;
  many.n = 8;
  for (int u = 0; u < 8; ++u)
    for (int v = u + 1; v < 8; ++v) many.edges.push_back({u, v, 1.0});
  try {
    diluted_flow(many, 2.0);
    FAIL("expected too_large");
  } catch (const Error& e) {
    CHECK(e.status() == Status::too_large);
  }
  // the same graph is fine once θ excludes the edges
  CHECK(diluted_flow(many, 0.5).cost == doctest::Approx(8 * 0.25));
}

TEST_CASE("game value against plain minimax") {
  TrialRng rng(47, 0);
  for (int t = 0; t < 150; ++t) {
    int n = 1 + static_cast<int>(rng.below(7));
    double theta = 0.5 + 3.0 * rng.uniform();
    auto g = random_graph(rng, n, 0.6, theta);
    int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    double v = game_value(g, start, theta);
    CHECK(v == doctest::Approx(brute_game(g, start, theta, 1u << start)).epsilon(1e-12));
    CHECK(v <= theta / 2);
    CHECK(v >= -theta / 2);
    auto play = play_game(g, start, theta);
    CHECK(play.value == v);
    CHECK(play.path.front() == start);
  }
  auto two = make(2, {{0, 1, 1.0}}, {2, 1});
  CHECK_THROWS_AS(game_value(two, 0, 2.0), Error);
  CHECK_THROWS_AS(game_value(make(2, {{0, 1, 1.0}}), 0, kInf), Error);
  CHECK_THROWS_AS(game_value(make(21, {}), 0, 1.0), Error);
}

TEST_CASE("tree game value") {
  const double theta = 3.0;
  auto leaf = make(2, {{0, 1, 1.0}});
  for (GameKind k : {GameKind::matching, GameKind::tsp, GameKind::edge_cover, GameKind::flow})
    CHECK(tree_game_value(leaf, 1, theta, k) == doctest::Approx(k == GameKind::matching || k == GameKind::flow
                                                                        ? std::min(1.5, 1.0 - 1.5)
                                                                        : (k == GameKind::edge_cover ? 0.0 : 1.5)));
  auto lone = make(1, {});
  for (GameKind k : {GameKind::matching, GameKind::tsp, GameKind::edge_cover}) CHECK(tree_game_value(lone, 0, theta, k) == 1.5);

  auto star = make(3, {{0, 1, 0.5}, {0, 2, 1.0}});
  // leaves are worth θ/2, so the second option is l2 - θ/2
  CHECK(tree_game_value(star, 0, theta, GameKind::tsp) == doctest::Approx(std::min(1.5, 1.0 - 1.5)));
  CHECK(verify_payoff_identity(star, 0, theta, GameKind::tsp).equal);

  TrialRng rng(53, 0);
  for (int t = 0; t < 100; ++t) {
    auto tree = random_tree(rng, 15, theta);
    int start = static_cast<int>(rng.below(15));
    CHECK(tree_game_value(tree, start, theta, GameKind::matching) ==
          doctest::Approx(game_value(tree, start, theta)).epsilon(1e-12));
  }
  auto cyc = make(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  try {
    tree_game_value(cyc, 0, theta, GameKind::matching);
    FAIL("expected not_a_tree");
  } catch (const Error& e) {
    CHECK(e.status() == Status::not_a_tree);
  }
}

TEST_CASE("payoff identity") {
  TrialRng rng(59, 0);
  SUBCASE("general graphs, unit capacities") {
    for (int t = 0; t < 300; ++t) {
      int n = 1 + static_cast<int>(rng.below(10));
      double theta = 0.5 + 3.0 * rng.uniform();
      auto g = random_graph(rng, n, 0.5, theta);
      int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      auto r = verify_payoff_identity(g, start, theta, GameKind::matching);
      CHECK(r.equal);
      CHECK(std::abs(r.game_value - r.optimization_difference) <= 1e-12 * std::max(1.0, std::abs(r.game_value)) + 1e-12);
    }
  }
  SUBCASE("trees with higher capacities") {
    for (int t = 0; t < 200; ++t) {
      int n = 2 + static_cast<int>(rng.below(10));
      double theta = 0.5 + 3.0 * rng.uniform();
      auto tree = random_tree(rng, n, theta);
      int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      CHECK(verify_payoff_identity(tree, start, theta, GameKind::tsp).equal);
      CHECK(verify_payoff_identity(tree, start, theta, GameKind::edge_cover).equal);
      tree.capacity.assign(n, 0);
      for (int& c : tree.capacity) c = static_cast<int>(rng.below(4));
      tree.capacity[start] = std::max(1, tree.capacity[start]);
      CHECK(verify_payoff_identity(tree, start, theta, GameKind::flow).equal);
    }
  }
}

TEST_CASE("graph interchange format") {
  auto g = sample_meanfield(6, 1.5, 9);
  CHECK(g.edges.size() == 15);
  auto back = parse_graph(format_graph(g));
  REQUIRE(back.n == g.n);
  REQUIRE(back.edges.size() == g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    CHECK(back.edges[i].u == g.edges[i].u);
    CHECK(back.edges[i].v == g.edges[i].v);
    CHECK(back.edges[i].length == g.edges[i].length);
  }
  auto capped = make(3, {{0, 1, 0.25}}, {2, 0, 1});
  auto cb = parse_graph(format_graph(capped));
  CHECK(cb.capacity == capped.capacity);
  CHECK(format_graph(make(2, {{0, 1, 0.5}})).find("cap") == std::string::npos);

  for (const char* bad : {"", "2", "2 1\n0 1", "2 1\n0 0 1.0", "2 1\n0 1 -1", "2 1\n0 1 x", "2 0\ncap 1",
                          "2 0\nfoo", "2 2\n0 1 1\n1 0 2", "2 0\ncap 1 1 extra"}) {
    try {
      parse_graph(bad);
      FAIL("accepted: " << bad);
    } catch (const Error& e) {
      CHECK(e.status() == Status::parse);
    }
  }
  CHECK(is_tree(make(3, {{0, 1, 1.0}, {1, 2, 1.0}})));
  CHECK_FALSE(is_tree(make(3, {{0, 1, 1.0}})));
  auto removed = remove_vertex(make(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}}), 1);
  CHECK(removed.n == 2);
  REQUIRE(removed.edges.size() == 1);
  CHECK(removed.edges[0].u == 0);
  CHECK(removed.edges[0].v == 1);
  CHECK(removed.edges[0].length == 3.0);
}

TEST_CASE("mean-field sampler") {
  // d = 1: P(l < 1) = 1 - e^{-1/n}
  const int n = 10;
  double hits = 0.0, total = 0.0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    auto g = sample_meanfield(n, 1.0, seed);
    for (const Edge& e : g.edges) {
      hits += e.length < 1.0;
      total += 1.0;
    }
  }
  double p = 1.0 - std::exp(-1.0 / n);
  CHECK(std::abs(hits / total - p) <= 3.0 * std::sqrt(p * (1 - p) / total));
  // d = 2, small r: fraction below r is close to r^2/n
  hits = total = 0.0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    for (const Edge& e : sample_meanfield(n, 2.0, seed).edges) {
      hits += e.length < 0.5;
      total += 1.0;
    }
  }
  p = 1.0 - std::exp(-0.25 / n);
  CHECK(std::abs(hits / total - p) <= 3.0 * std::sqrt(p * (1 - p) / total));
  CHECK(std::abs(p - 0.25 / n) <= 0.001);
  auto a = sample_meanfield(7, 1.0, 3), b = sample_meanfield(7, 1.0, 3);
  CHECK(format_graph(a) == format_graph(b));
  CHECK_THROWS_AS(sample_meanfield(1, 1.0, 0), Error);
}

TEST_CASE("finite-n statistics") {
  auto tiny = empirical_statistics(8, 1.0, 1e-3, 50, 5);
  CHECK(tiny.unmatched.mean == 1.0);
  CHECK(tiny.diluted.mean == doctest::Approx(5e-4));
  CHECK(tiny.has_perfect);

  double prev = 1.0;
  for (double theta : {0.5, 1.0, 2.0, 4.0}) {
    auto st = empirical_statistics(10, 1.0, theta, 200, 5);
    CHECK(st.unmatched.mean < prev);
    prev = st.unmatched.mean;
  }
  auto odd = empirical_statistics(9, 1.0, 2.0, 20, 5);
  CHECK_FALSE(odd.has_perfect);
  auto j1 = empirical_statistics(12, 2.0, 1.5, 40, 3, 1), j4 = empirical_statistics(12, 2.0, 1.5, 40, 3, 4);
  CHECK(j1.diluted.mean == j4.diluted.mean);
  CHECK(j1.perfect.std_error == j4.perfect.std_error);
  CHECK_THROWS_AS(empirical_statistics(25, 1.0, 1.0, 10, 1), Error);

  auto est = estimate_mean({1.0, 2.0, 3.0, 4.0});
  CHECK(est.mean == 2.5);
  CHECK(est.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(est.ci_halfwidth == doctest::Approx(1.96 * est.std_error));
}

TEST_CASE("neighbourhood coupling") {
  auto k0 = neighborhood_coupling_stat(64, 1.0, 1.5, 0, 50, 1);
  CHECK(k0.mean_kn == 1.0);
  CHECK(k0.mean_pwit == 1.0);
  auto big = neighborhood_coupling_stat(512, 1.0, 1.5, 2, 4000, 1);
  CHECK(big.expected_pwit == doctest::Approx(4.75));
  CHECK(std::abs(big.z_score) <= 3.0);
  CHECK(std::abs(big.mean_pwit - 4.75) <= 0.2);
  auto small = neighborhood_coupling_stat(8, 1.0, 1.5, 2, 4000, 1);
  CHECK(std::abs(small.z_score) > 3.0);
}
