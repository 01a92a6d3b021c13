#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rsym/cavity.hpp"
#include "rsym/grid.hpp"

namespace rsym {

// (d^2/2) ∬_{x+y>=0} (x+y)^(d-1) F(x) F(y) over the grid square.
double beta_theta(const SurvivalGrid& f, const ModelParams& p);

// (d/2) ∫_0^∞ l^d P(f1 + f2 >= l) dl for f1, f2 independent with survival F,
// the law including the endpoint atoms.
double beta_theta_convolution(const SurvivalGrid& f, const ModelParams& p);

double density_q(const SurvivalGrid& f);

struct BetaRow {
  double theta = 0.0;  // +inf for the untruncated edge cover row
  double beta = 0.0;
  double q = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

struct BetaEstimate {
  Problem problem = Problem::matching;
  double d = 1.0;
  std::vector<BetaRow> rows;
  double beta_limit = 0.0;
  double extrapolation_gap = 0.0;  // last increment along the schedule
  bool converged = true;           // every fixed-point solve met its tolerance
};

struct BetaOptions {
  double tol = 1e-9;            // stop once a doubling of θ moves β by less
  double fixed_point_tol = 1e-11;
  std::size_t max_iter = 20000;
  std::size_t cells = 4096;     // per θ, unless step > 0
  double step = 0.0;
  bool richardson = true;       // combine cells and 2*cells
  bool append_infinite = true;  // edge cover: finish with the θ = ∞ row
  std::size_t jobs = 1;
};

std::vector<double> default_schedule(Problem prob, double d);

BetaEstimate beta_limit(Problem prob, double d, const std::vector<double>& schedule, const BetaOptions& opt);

// One θ: fixed point by the averaged scheme, then β.
BetaRow beta_at(Problem prob, const ModelParams& p, const BetaOptions& opt);

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> greedy;
};

Bounds rigorous_bounds(double d);

struct ClosedForm {
  double theta = 0.0;
  SurvivalGrid f;
  double beta = 0.0;
};

ClosedForm matching_d1_closed_form(double q, std::size_t cells = 4096);
// ∫_q^1 (-ln t)/(1+t) dt
double matching_d1_beta(double q);

double tsp_d1_reference();

struct EdgeCoverD1 {
  double w = 0.0;
  double cost = 0.0;
};
EdgeCoverD1 edgecover_d1();

struct EdgeCoverD2 {
  double A = 0.0;
  double B = 0.0;
  double cost = 0.0;
  double residual = 0.0;  // |B - (e^{-2B}/2 - A^2)|
};
EdgeCoverD2 edgecover_d2();
// One step of the moment map (A, B) -> (A', B').
std::pair<double, double> edgecover_d2_map(double A, double B);

}  // namespace rsym
