#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsym/cavity.hpp"
#include "rsym/grid.hpp"

namespace rsym {

enum class Boundary { favor_bob, favor_alice };

const char* boundary_name(Boundary b);

// Value given to vertices at distance `depth` when the valuation is cut there.
double boundary_value(Problem game, Boundary mode, std::size_t depth, double theta);

// Sum over levels 0..depth of (θ^d)^level.
double expected_cluster_nodes(const ModelParams& p, std::size_t depth_limit);

struct ThetaCluster {
  struct Node {
    std::int64_t parent = -1;
    double length = 0.0;  // edge to parent
    std::uint32_t depth = 0;
    std::size_t first_child = 0;
    std::size_t child_count = 0;
  };
  ModelParams params;
  std::size_t depth_limit = 0;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::vector<Node> nodes;  // breadth-first, root first, children by increasing length
};

// Refuses configurations whose expected node count exceeds `max_expected`.
ThetaCluster sample_cluster(const ModelParams& p, std::size_t depth_limit, std::uint64_t seed,
                            std::uint64_t index = 0, double max_expected = 1e8);

// Values at every node of depth <= k; deeper nodes get NaN.
std::vector<double> partial_valuation(const ThetaCluster& c, std::size_t k, Boundary mode, Problem game);

// Root value of the depth-k partial valuation on sample `index`, computed
// lazily without materializing the cluster. The result is clamp(value, lo, hi);
// a window known to contain the value returns it exactly.
struct LazyStats {
  std::uint64_t visits = 0;
};
double lazy_root_value(const ModelParams& p, std::uint64_t seed, std::uint64_t index, std::size_t k,
                       Boundary mode, Problem game, double lo, double hi, LazyStats* stats = nullptr,
                       std::uint64_t visit_budget = 0);

struct GapRow {
  std::size_t k = 0;
  double mean_gap = 0.0;
  double ci_halfwidth = 0.0;  // 95% normal approximation
  double mean_fa = 0.0;
  double mean_fb = 0.0;
  double zero_fraction = 0.0;  // samples where the two valuations agree
};

struct SimOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::uint64_t visit_budget = 100000000;  // per sample
};

// Rows for k = 0..k_max; f_A^k and f_B^k per sample use the previous depth as
// an exact window.
std::vector<GapRow> replica_gap_profile(const ModelParams& p, std::size_t k_max, Problem game,
                                        const SimOptions& opt);
GapRow replica_gap(const ModelParams& p, std::size_t k, Problem game, const SimOptions& opt);

// Root values of the depth-k valuation for samples 0..samples-1, sorted.
std::vector<double> sample_root_values(const ModelParams& p, std::size_t k, Boundary mode, Problem game,
                                       const SimOptions& opt);

// Empirical survival P(f >= x) of root values on the problem grid.
SurvivalGrid empirical_survival(const ModelParams& p, std::size_t k, Boundary mode, Problem game,
                                const SimOptions& opt, std::size_t cells = 1024);

// Law of the depth-k root value: k operator applications to the boundary law.
SurvivalGrid partial_law(Problem game, const ModelParams& p, std::size_t k, Boundary mode, std::size_t cells = 4096);

// sup_x |P_n(f >= x) - F(x)| over sorted samples against a grid survival function.
double ks_distance(const std::vector<double>& sorted, const SurvivalGrid& f);

// DKW band half-width at confidence 1 - alpha.
double dkw_epsilon(std::size_t n, double alpha);

}  // namespace rsym
