#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rsym {

struct Edge {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

struct WeightedGraph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<int> capacity;  // empty means all 1

  int cap(int v) const { return capacity.empty() ? 1 : capacity[v]; }
  bool unit_capacities() const;
};

// No self-loops, no parallel edges, positive finite lengths, capacities >= 0.
void validate(const WeightedGraph& g);

// "n m", m lines "u v length", then optionally "cap c_0 ... c_{n-1}".
// Lengths are written with 17 significant digits.
std::string format_graph(const WeightedGraph& g);
WeightedGraph parse_graph(const std::string& text);

// Complete graph on n vertices with lengths (n X)^(1/d), X ~ Exp(1).
WeightedGraph sample_meanfield(int n, double d, std::uint64_t seed);

// Delete v and relabel the vertices above it down by one.
WeightedGraph remove_vertex(const WeightedGraph& g, int v);

bool is_tree(const WeightedGraph& g);

// Adjacency lists of (neighbour, edge index), sorted by neighbour.
std::vector<std::vector<std::pair<int, int>>> adjacency(const WeightedGraph& g);

}  // namespace rsym
