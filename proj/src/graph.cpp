#include "rsym/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "rsym/error.hpp"
#include "rsym/rng.hpp"

namespace rsym {

bool WeightedGraph::unit_capacities() const {
  return std::all_of(capacity.begin(), capacity.end(), [](int c) { return c == 1; });
}

void validate(const WeightedGraph& g) {
  require(g.n >= 0, "vertex count must be nonnegative");
  require(g.capacity.empty() || static_cast<int>(g.capacity.size()) == g.n, "capacity list must have n entries");
  for (int c : g.capacity) require(c >= 0, "capacities must be nonnegative");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges) {
    require(e.u >= 0 && e.u < g.n && e.v >= 0 && e.v < g.n, "edge endpoint out of range");
    require(e.u != e.v, "self-loop at vertex " + std::to_string(e.u));
    require(std::isfinite(e.length) && e.length > 0.0, "edge lengths must be positive and finite");
    auto key = std::minmax(e.u, e.v);
    require(seen.insert(key).second,
            "parallel edge " + std::to_string(key.first) + "-" + std::to_string(key.second));
  }
}

std::string format_graph(const WeightedGraph& g) {
  std::string out = std::to_string(g.n) + " " + std::to_string(g.edges.size()) + "\n";
  char buf[64];
  for (const auto& e : g.edges) {
    std::snprintf(buf, sizeof buf, "%.17g", e.length);
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + buf + "\n";
  }
  if (!g.capacity.empty() && !g.unit_capacities()) {
    out += "cap";
    for (int c : g.capacity) out += " " + std::to_string(c);
    out += "\n";
  }
  return out;
}

WeightedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  WeightedGraph g;
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) fail(Status::parse, "graph: expected header 'n m'");
  g.n = static_cast<int>(n);
  for (long long i = 0; i < m; ++i) {
    Edge e;
    std::string len;
    if (!(in >> e.u >> e.v >> len)) fail(Status::parse, "graph: edge line " + std::to_string(i + 1) + " malformed");
    try {
      std::size_t used = 0;
      e.length = std::stod(len, &used);
      if (used != len.size()) throw std::invalid_argument(len);
    } catch (const std::exception&) {
      fail(Status::parse, "graph: bad length '" + len + "'");
    }
    g.edges.push_back(e);
  }
  std::string word;
  if (in >> word) {
    if (word != "cap") fail(Status::parse, "graph: unexpected token '" + word + "'");
    g.capacity.resize(g.n);
    for (int v = 0; v < g.n; ++v)
      if (!(in >> g.capacity[v])) fail(Status::parse, "graph: capacity line needs n entries");
    if (in >> word) fail(Status::parse, "graph: trailing token '" + word + "'");
  }
  try {
    validate(g);
  } catch (const Error& e) {
    fail(Status::parse, std::string("graph: ") + e.what());
  }
  return g;
}

WeightedGraph sample_meanfield(int n, double d, std::uint64_t seed) {
  require(n >= 2, "mean-field graph needs n >= 2");
  require(d >= 1.0, "d must be >= 1");
  TrialRng rng(seed, 0);
  WeightedGraph g;
  g.n = n;
  g.edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.edges.push_back({u, v, std::pow(n * rng.exponential(), 1.0 / d)});
  return g;
}

WeightedGraph remove_vertex(const WeightedGraph& g, int v) {
  require(v >= 0 && v < g.n, "vertex out of range");
  WeightedGraph h;
  h.n = g.n - 1;
  auto relabel = [v](int x) { return x > v ? x - 1 : x; };
  for (const auto& e : g.edges)
    if (e.u != v && e.v != v) h.edges.push_back({relabel(e.u), relabel(e.v), e.length});
  if (!g.capacity.empty()) {
    h.capacity = g.capacity;
    h.capacity.erase(h.capacity.begin() + v);
  }
  return h;
}

bool is_tree(const WeightedGraph& g) {
  if (g.n == 0 || static_cast<int>(g.edges.size()) != g.n - 1) return false;
  std::vector<int> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) {
    int a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::vector<std::vector<std::pair<int, int>>> adjacency(const WeightedGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.n);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    adj[g.edges[i].u].push_back({g.edges[i].v, i});
    adj[g.edges[i].v].push_back({g.edges[i].u, i});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

}  // namespace rsym
