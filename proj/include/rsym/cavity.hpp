#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rsym/grid.hpp"

namespace rsym {

enum class Problem { matching, tsp, edge_cover };

const char* problem_name(Problem p);
Problem parse_problem(const std::string& s);

// Standard domain for a problem: [-θ/2, θ/2] for matching and TSP, [0, θ/2]
// for finite-θ edge cover and [0, cutoff] when θ is infinite.
SurvivalGrid problem_grid(Problem prob, const ModelParams& p, std::size_t cells, double fill,
                          double cutoff = 0.0);

// Smallest cutoff with exp(-cutoff^d) < tail_tol / 10.
double edgecover_cutoff(double d, double tail_tol);

// Operator bound to one grid geometry, caching the quadrature weights.
class CavityOperator {
 public:
  CavityOperator(Problem prob, const ModelParams& p, const SurvivalGrid& shape);
  SurvivalGrid operator()(const SurvivalGrid& f) const;
  Problem problem() const { return prob_; }
  const ModelParams& params() const { return p_; }

 private:
  Problem prob_;
  ModelParams p_;
  SurvivalGrid shape_;
  std::shared_ptr<KernelPlan> plan_;
};

SurvivalGrid apply_matching_operator(const SurvivalGrid& f, const ModelParams& p);
SurvivalGrid apply_tsp_operator(const SurvivalGrid& f, const ModelParams& p);
// theta = +inf selects the untruncated operator on [0, cutoff]; the cutoff is
// rejected when exp(-cutoff^d) exceeds tail_tol.
SurvivalGrid apply_edgecover_operator(const SurvivalGrid& f, const ModelParams& p, double tail_tol = 1e-10);

enum class Scheme {
  plain,     // F <- V(F), the game-faithful iteration
  averaged,  // F <- (F + V(F)) / 2; finds a fixed point but cannot see 2-cycles
};

struct FixedPointOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::size_t cells = 4096;
  Scheme scheme = Scheme::plain;
  bool record_history = false;
  std::optional<SurvivalGrid> start;  // default: zero function
  double cutoff = 0.0;                // θ = ∞ edge cover; 0 picks edgecover_cutoff(d, tol)
};

struct FixedPointReport {
  SurvivalGrid fixed_point;
  std::size_t iterations = 0;
  double even_odd_gap = 0.0;   // sup distance of the last two iterates (residual for averaged)
  double even_drift = 0.0;     // sup distance between iterates two apart (plain scheme)
  bool converged = false;
  bool period_two = false;     // even and odd subsequences settled apart
  std::vector<double> history;
};

FixedPointReport iterate_to_fixed_point(Problem prob, const ModelParams& p, const FixedPointOptions& opt);

// Pointwise (4 fine - coarse) / 3 on the coarse nodes; `fine` must have
// twice the cells of `coarse` on the same interval.
SurvivalGrid richardson(const SurvivalGrid& coarse, const SurvivalGrid& fine);

// k applications of the operator to `start`.
SurvivalGrid iterate(Problem prob, const ModelParams& p, const SurvivalGrid& start, std::size_t k);

}  // namespace rsym
