#pragma once

#include <limits>
#include <string>
#include <vector>

#include "rsym/graph.hpp"

namespace rsym {

struct DilutedSolution {
  std::vector<int> chosen_edges;  // indices into g.edges, increasing
  double cost = 0.0;              // edge lengths + (θ/2) * deficiency
  double edge_cost = 0.0;
  int deficiency = 0;             // unused capacity (uncovered vertices for edge cover)
  // Cost of the best other feasible edge set; filled by the enumerating
  // solvers only, +inf otherwise.
  double runner_up = std::numeric_limits<double>::infinity();
};

// Exact by DP over the set of unprocessed vertices. n <= 24, unit capacities.
// θ = +inf asks for a perfect matching (infeasible for odd n).
DilutedSolution diluted_matching(const WeightedGraph& g, double theta);

// Exact by enumerating subsets of the edges of length <= θ (at most 25).
DilutedSolution diluted_flow(const WeightedGraph& g, double theta);

// As diluted_flow, but each vertex only needs to be covered once. Vertices
// flagged in `precovered` pay no penalty.
DilutedSolution diluted_edge_cover(const WeightedGraph& g, double theta, const std::vector<char>& precovered = {});

enum class GameKind { matching, flow, tsp, edge_cover };

const char* game_kind_name(GameKind k);
GameKind parse_game_kind(const std::string& s);

struct GamePlay {
  double value = 0.0;     // payoff to the player who did not move first
  std::vector<int> path;  // visited vertices under optimal play, start first
};

// Graph exploration on a general graph with unit capacities, n <= 20.
GamePlay play_game(const WeightedGraph& g, int start, double theta);
double game_value(const WeightedGraph& g, int start, double theta);

// Valuation recursion on a tree rooted at start: the c-th smallest of
// l_i - f_i capped at θ/2, with c = 1 (matching), 2 (tsp) or the vertex
// capacity (flow); edge cover also floors at 0.
double tree_game_value(const WeightedGraph& tree, int start, double theta, GameKind game);

struct PayoffReport {
  double game_value = 0.0;
  double optimization_difference = 0.0;
  bool equal = false;
};

// matching: game_value vs M(G) - M(G - start) on any graph.
// flow / tsp: tree value vs F(G) - F(G with cap(start) - 1); tsp forces capacities to 2.
// edge_cover: tree value vs EC(G) - EC(G with start already covered).
PayoffReport verify_payoff_identity(const WeightedGraph& g, int start, double theta, GameKind game);

}  // namespace rsym
