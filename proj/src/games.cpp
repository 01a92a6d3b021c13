#include "rsym/games.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>

#include "rsym/error.hpp"

namespace rsym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_theta(double theta) { require(theta > 0.0, "theta must be positive"); }

std::vector<int> relevant_edges(const WeightedGraph& g, double theta) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    if (g.edges[i].length <= theta) idx.push_back(i);
  if (idx.size() > 25)
    fail(Status::too_large, std::to_string(idx.size()) + " edges of length <= theta; exact enumeration allows 25");
  return idx;
}

// Best and second-best over all leaves of a subset enumeration.
struct Tracker {
  double best = kInf, runner = kInf;
  std::vector<int> best_set;
  double best_edges = 0.0;
  int best_def = 0;
  void offer(double cost, double edges, int def, const std::vector<int>& set) {
    if (cost < best) {
      runner = best;
      best = cost;
      best_set = set;
      best_edges = edges;
      best_def = def;
    } else if (cost < runner) {
      runner = cost;
    }
  }
  DilutedSolution result(const char* what) const {
    if (!std::isfinite(best)) fail(Status::infeasible, std::string(what) + ": no feasible solution");
    DilutedSolution s;
    s.chosen_edges = best_set;
    std::sort(s.chosen_edges.begin(), s.chosen_edges.end());
    s.cost = best;
    s.edge_cost = best_edges;
    s.deficiency = best_def;
    s.runner_up = runner;
    return s;
  }
};

double penalty(double theta, int def) { return def == 0 ? 0.0 : 0.5 * theta * def; }

}  // namespace

DilutedSolution diluted_matching(const WeightedGraph& g, double theta) {
  validate(g);
  check_theta(theta);
  require(g.unit_capacities(), "diluted_matching needs unit capacities");
  if (g.n > 24) fail(Status::too_large, "diluted_matching is exact only for n <= 24");
  const int n = g.n;
  const bool perfect = std::isinf(theta);
  if (perfect && n % 2 == 1) fail(Status::infeasible, "no perfect matching on an odd number of vertices");
  std::vector<double> len(static_cast<std::size_t>(n) * n, kInf);
  for (const auto& e : g.edges)
    if (e.length <= theta) len[e.u * n + e.v] = len[e.v * n + e.u] = e.length;
  const double pen = perfect ? kInf : 0.5 * theta;

  // dp[mask]: cheapest way to settle the vertices in mask among themselves
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<double> dp(static_cast<std::size_t>(full) + 1, kInf);
  dp[0] = 0.0;
  auto candidates = [&](std::uint32_t mask, auto&& visit) {
    int i = __builtin_ctz(mask);
    std::uint32_t rest = mask & (mask - 1);
    visit(-1, pen + dp[rest]);
    for (std::uint32_t m = rest; m; m &= m - 1) {
      int j = __builtin_ctz(m);
      double l = len[i * n + j];
      if (std::isfinite(l)) visit(j, l + dp[rest & ~(1u << j)]);
    }
  };
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    double best = kInf;
    candidates(mask, [&](int, double c) { best = std::min(best, c); });
    dp[mask] = best;
  }
  if (!std::isfinite(dp[full])) fail(Status::infeasible, "no perfect matching uses the available edges");

  DilutedSolution s;
  s.cost = dp[full];
  for (std::uint32_t mask = full; mask;) {
    int i = __builtin_ctz(mask);
    int pick = -2;
    candidates(mask, [&](int j, double c) {
      if (pick == -2 && c == dp[mask]) pick = j;
    });
    if (pick < 0) {
      ++s.deficiency;
      mask &= mask - 1;
      continue;
    }
    s.edge_cost += len[i * n + pick];
    mask &= ~((1u << i) | (1u << pick));
    for (int k = 0; k < static_cast<int>(g.edges.size()); ++k)
      if (std::minmax(g.edges[k].u, g.edges[k].v) == std::minmax(i, pick)) s.chosen_edges.push_back(k);
  }
  std::sort(s.chosen_edges.begin(), s.chosen_edges.end());
  return s;
}

DilutedSolution diluted_flow(const WeightedGraph& g, double theta) {
  validate(g);
  check_theta(theta);
  auto rel = relevant_edges(g, theta);
  std::vector<int> room(g.n);
  int total = 0;
  for (int v = 0; v < g.n; ++v) total += room[v] = g.cap(v);
  Tracker t;
  std::vector<int> set;
  std::function<void(std::size_t, double)> dfs = [&](std::size_t k, double edges) {
    if (k == rel.size()) {
      int def = total - 2 * static_cast<int>(set.size());
      if (std::isinf(theta) && def > 0) return;
      t.offer(edges + penalty(theta, def), edges, def, set);
      return;
    }
    dfs(k + 1, edges);
    const Edge& e = g.edges[rel[k]];
    if (room[e.u] > 0 && room[e.v] > 0) {
      --room[e.u], --room[e.v];
      set.push_back(rel[k]);
      dfs(k + 1, edges + e.length);
      set.pop_back();
      ++room[e.u], ++room[e.v];
    }
  };
  dfs(0, 0.0);
  return t.result("diluted_flow");
}

DilutedSolution diluted_edge_cover(const WeightedGraph& g, double theta, const std::vector<char>& precovered) {
  validate(g);
  check_theta(theta);
  require(precovered.empty() || static_cast<int>(precovered.size()) == g.n, "precovered needs n entries");
  auto rel = relevant_edges(g, theta);
  std::vector<int> hits(g.n, 0);
  int uncovered = 0;
  for (int v = 0; v < g.n; ++v)
    if (precovered.empty() || !precovered[v]) ++uncovered;
    else hits[v] = 1;
  Tracker t;
  std::vector<int> set;
  std::function<void(std::size_t, double)> dfs = [&](std::size_t k, double edges) {
    if (k == rel.size()) {
      if (std::isinf(theta) && uncovered > 0) return;
      t.offer(edges + penalty(theta, uncovered), edges, uncovered, set);
      return;
    }
    dfs(k + 1, edges);
    const Edge& e = g.edges[rel[k]];
    for (int x : {e.u, e.v})
      if (hits[x]++ == 0) --uncovered;
    set.push_back(rel[k]);
    dfs(k + 1, edges + e.length);
    set.pop_back();
    for (int x : {e.u, e.v})
      if (--hits[x] == 0) ++uncovered;
  };
  dfs(0, 0.0);
  return t.result("diluted_edge_cover");
}

const char* game_kind_name(GameKind k) {
  switch (k) {
    case GameKind::matching: return "matching";
    case GameKind::flow: return "flow";
    case GameKind::tsp: return "tsp";
    case GameKind::edge_cover: return "edge-cover";
  }
  return "?";
}

GameKind parse_game_kind(const std::string& s) {
  if (s == "matching") return GameKind::matching;
  if (s == "flow") return GameKind::flow;
  if (s == "tsp") return GameKind::tsp;
  if (s == "edge-cover" || s == "edge_cover") return GameKind::edge_cover;
  fail(Status::invalid_argument, "unknown game '" + s + "'");
}

GamePlay play_game(const WeightedGraph& g, int start, double theta) {
  validate(g);
  require(theta > 0.0 && std::isfinite(theta), "the game needs finite positive theta");
  require(start >= 0 && start < g.n, "start vertex out of range");
  if (!g.unit_capacities()) {
    if (is_tree(g)) fail(Status::invalid_argument, "capacities above 1: use tree_game_value");
    fail(Status::invalid_argument, "capacities above 1 are only supported on trees");
  }
  if (g.n > 20) fail(Status::too_large, "game_value is exact only for n <= 20");
  const double half = 0.5 * theta;
  // edges longer than θ can never beat terminating, so they are dropped
  std::vector<std::vector<std::pair<int, double>>> adj(g.n);
  auto nb = adjacency(g);
  for (int v = 0; v < g.n; ++v)
    for (auto [w, ei] : nb[v])
      if (g.edges[ei].length <= theta) adj[v].push_back({w, g.edges[ei].length});
  std::unordered_map<std::uint64_t, double> memo;
  std::function<double(int, std::uint32_t)> value = [&](int v, std::uint32_t seen) {
    std::uint64_t key = (static_cast<std::uint64_t>(seen) << 5) | static_cast<std::uint64_t>(v);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double best = half;
    for (auto [w, l] : adj[v])
      if (!(seen >> w & 1u)) best = std::min(best, l - value(w, seen | (1u << w)));
    memo.emplace(key, best);
    return best;
  };
  GamePlay out;
  std::uint32_t seen = 1u << start;
  out.value = value(start, seen);
  out.path.push_back(start);
  for (int v = start;;) {
    double target = value(v, seen);
    int next = -1;
    for (auto [w, l] : adj[v])
      if (!(seen >> w & 1u) && l - value(w, seen | (1u << w)) == target && target < half) {
        next = w;
        break;
      }
    if (next < 0) break;
    seen |= 1u << next;
    out.path.push_back(next);
    v = next;
  }
  return out;
}

double game_value(const WeightedGraph& g, int start, double theta) { return play_game(g, start, theta).value; }

double tree_game_value(const WeightedGraph& tree, int start, double theta, GameKind game) {
  validate(tree);
  require(theta > 0.0 && std::isfinite(theta), "the game needs finite positive theta");
  require(start >= 0 && start < tree.n, "start vertex out of range");
  if (!is_tree(tree)) fail(Status::not_a_tree, "tree_game_value needs a tree");
  const double half = 0.5 * theta;
  auto adj = adjacency(tree);
  std::vector<int> order{start}, parent(tree.n, -1);
  std::vector<double> up(tree.n, 0.0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto [w, ei] : adj[order[i]])
      if (w != parent[order[i]]) {
        parent[w] = order[i];
        up[w] = tree.edges[ei].length;
        order.push_back(w);
      }
  std::vector<double> f(tree.n), terms;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    int c = 1;
    if (game == GameKind::tsp) c = 2;
    if (game == GameKind::flow) c = tree.cap(v);
    if (c == 0) {
      // no capacity left: the edge to the parent is unusable
      require(v != start, "start vertex has capacity 0");
      f[v] = -kInf;
      continue;
    }
    terms.clear();
    for (auto [w, ei] : adj[v])
      if (w != parent[v]) terms.push_back(up[w] - f[w]);
    double x = half;
    if (static_cast<int>(terms.size()) >= c) {
      std::nth_element(terms.begin(), terms.begin() + (c - 1), terms.end());
      x = std::min(half, terms[c - 1]);
    }
    if (game == GameKind::edge_cover) x = std::max(0.0, x);
    f[v] = x;
  }
  return f[start];
}

PayoffReport verify_payoff_identity(const WeightedGraph& g, int start, double theta, GameKind game) {
  validate(g);
  require(start >= 0 && start < g.n, "start vertex out of range");
  PayoffReport r;
  double scale = 1.0;
  switch (game) {
    case GameKind::matching: {
      r.game_value = game_value(g, start, theta);
      double full = diluted_matching(g, theta).cost;
      r.optimization_difference = full - diluted_matching(remove_vertex(g, start), theta).cost;
      scale = std::max(1.0, full);
      break;
    }
    case GameKind::flow:
    case GameKind::tsp: {
      WeightedGraph h = g;
      if (game == GameKind::tsp) h.capacity.assign(g.n, 2);
      r.game_value = tree_game_value(h, start, theta, game);
      require(h.cap(start) >= 1, "start vertex has capacity 0");
      WeightedGraph less = h;
      less.capacity.resize(h.n, 1);
      less.capacity[start] -= 1;
      double full = diluted_flow(h, theta).cost;
      r.optimization_difference = full - diluted_flow(less, theta).cost;
      scale = std::max(1.0, full);
      break;
    }
    case GameKind::edge_cover: {
      r.game_value = tree_game_value(g, start, theta, game);
      std::vector<char> pre(g.n, 0);
      pre[start] = 1;
      double full = diluted_edge_cover(g, theta).cost;
      r.optimization_difference = full - diluted_edge_cover(g, theta, pre).cost;
      scale = std::max(1.0, full);
      break;
    }
  }
  r.equal = std::abs(r.game_value - r.optimization_difference) <= 1e-12 * scale;
  return r;
}

}  // namespace rsym
