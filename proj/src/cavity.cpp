#include "rsym/cavity.hpp"

#include <algorithm>
#include <cmath>

#include "rsym/error.hpp"

namespace rsym {

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::matching: return "matching";
    case Problem::tsp: return "tsp";
    case Problem::edge_cover: return "edge-cover";
  }
  return "?";
}

Problem parse_problem(const std::string& s) {
  if (s == "matching") return Problem::matching;
  if (s == "tsp") return Problem::tsp;
  if (s == "edge-cover" || s == "edge_cover" || s == "edgecover") return Problem::edge_cover;
  fail(Status::invalid_argument, "unknown problem '" + s + "'");
}

double edgecover_cutoff(double d, double tail_tol) {
  require(tail_tol > 0.0 && tail_tol < 1.0, "tail tolerance must lie in (0,1)");
  return std::pow(std::log(10.0 / tail_tol), 1.0 / d);
}

SurvivalGrid problem_grid(Problem prob, const ModelParams& p, std::size_t cells, double fill, double cutoff) {
  validate(p);
  if (prob == Problem::edge_cover) {
    double top = std::isinf(p.theta) ? cutoff : 0.5 * p.theta;
    require(top > 0.0, "edge cover at infinite theta needs a positive cutoff");
    return make_grid(0.0, top, cells, fill, 1.0, 0.0);
  }
  require(std::isfinite(p.theta), "matching and TSP need finite theta");
  return make_grid(-0.5 * p.theta, 0.5 * p.theta, cells, fill, 1.0, 0.0);
}

namespace {

void check_domain(Problem prob, const ModelParams& p, const SurvivalGrid& g, double tail_tol) {
  validate(p);
  validate(g, 1e-9);
  double half = 0.5 * p.theta;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  if (prob == Problem::edge_cover) {
    if (!close(g.lo, 0.0)) fail(Status::domain_mismatch, "edge cover grid must start at 0");
    if (std::isinf(p.theta)) {
      double tail = std::exp(-std::pow(g.hi, p.d));
      if (tail > tail_tol)
        fail(Status::cutoff_too_small, "cutoff " + std::to_string(g.hi) + " leaves tail mass " +
                                           std::to_string(tail) + " above tolerance");
    } else if (!close(g.hi, half)) {
      fail(Status::domain_mismatch, "edge cover grid must end at theta/2");
    }
    return;
  }
  if (std::isinf(p.theta)) fail(Status::invalid_argument, "matching and TSP need finite theta");
  if (!close(g.lo, -half) || !close(g.hi, half))
    fail(Status::domain_mismatch, "grid must span [-theta/2, theta/2]");
}

}  // namespace

CavityOperator::CavityOperator(Problem prob, const ModelParams& p, const SurvivalGrid& shape)
    : prob_(prob), p_(p), shape_(shape) {
  check_domain(prob, p, shape, 1.0);
  shape_.values.clear();
  plan_ = std::make_shared<KernelPlan>(shape.lo, shape.hi, shape.cells(), p.d);
}

SurvivalGrid CavityOperator::operator()(const SurvivalGrid& f) const {
  if (!plan_->matches(f)) fail(Status::domain_mismatch, "operator applied to a grid of different geometry");
  std::vector<double> in = plan_->apply(f);
  SurvivalGrid out = f;
  out.below = 1.0;
  out.above = 0.0;
  double prev = 1.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    double I = std::max(0.0, in[i]);
    double v = prob_ == Problem::tsp ? (1.0 + I) * std::exp(-I) : std::exp(-I);
    // rounding in the transform can leave ulp-level wiggles
    v = std::clamp(v, 0.0, prev);
    out.values[i] = v;
    prev = v;
  }
  return out;
}

SurvivalGrid apply_matching_operator(const SurvivalGrid& f, const ModelParams& p) {
  check_domain(Problem::matching, p, f, 1.0);
  return CavityOperator(Problem::matching, p, f)(f);
}

SurvivalGrid apply_tsp_operator(const SurvivalGrid& f, const ModelParams& p) {
  check_domain(Problem::tsp, p, f, 1.0);
  return CavityOperator(Problem::tsp, p, f)(f);
}

SurvivalGrid apply_edgecover_operator(const SurvivalGrid& f, const ModelParams& p, double tail_tol) {
  check_domain(Problem::edge_cover, p, f, tail_tol);
  return CavityOperator(Problem::edge_cover, p, f)(f);
}

SurvivalGrid iterate(Problem prob, const ModelParams& p, const SurvivalGrid& start, std::size_t k) {
  CavityOperator op(prob, p, start);
  SurvivalGrid g = start;
  for (std::size_t i = 0; i < k; ++i) g = op(g);
  return g;
}

SurvivalGrid richardson(const SurvivalGrid& coarse, const SurvivalGrid& fine) {
  if (fine.cells() != 2 * coarse.cells() || std::abs(fine.lo - coarse.lo) > 1e-12 * std::max(1.0, std::abs(coarse.lo)) ||
      std::abs(fine.hi - coarse.hi) > 1e-12 * std::max(1.0, std::abs(coarse.hi)))
    fail(Status::domain_mismatch, "richardson: fine grid must halve the coarse step on the same interval");
  SurvivalGrid out = coarse;
  for (std::size_t i = 0; i < coarse.values.size(); ++i)
    out.values[i] = std::clamp((4.0 * fine.values[2 * i] - coarse.values[i]) / 3.0, 0.0, 1.0);
  return out;
}

FixedPointReport iterate_to_fixed_point(Problem prob, const ModelParams& p, const FixedPointOptions& opt) {
  require(opt.tol > 0.0, "tolerance must be positive");
  require(opt.max_iter >= 1, "max_iter must be positive");
  validate(p);
  SurvivalGrid cur;
  if (opt.start) {
    cur = *opt.start;
  } else {
    double cutoff = opt.cutoff;
    if (prob == Problem::edge_cover && std::isinf(p.theta) && cutoff <= 0.0)
      cutoff = edgecover_cutoff(p.d, opt.tol);
    cur = problem_grid(prob, p, opt.cells, 0.0, cutoff);
  }
  if (prob == Problem::edge_cover && std::isinf(p.theta)) check_domain(prob, p, cur, opt.tol);
  CavityOperator op(prob, p, cur);

  FixedPointReport rep;
  SurvivalGrid before;  // iterate two steps back (plain scheme)
  bool have_before = false;
  for (std::size_t k = 1; k <= opt.max_iter; ++k) {
    SurvivalGrid next = op(cur);
    double gap = sup_distance(next, cur);
    rep.iterations = k;
    rep.even_odd_gap = gap;
    if (opt.record_history) rep.history.push_back(gap);
    if (opt.scheme == Scheme::averaged) {
      if (gap <= opt.tol) {
        rep.converged = true;
        rep.fixed_point = std::move(next);
        return rep;
      }
      for (std::size_t i = 0; i < cur.values.size(); ++i)
        cur.values[i] = 0.5 * (cur.values[i] + next.values[i]);
      continue;
    }
    if (have_before) rep.even_drift = sup_distance(next, before);
    if (gap <= opt.tol) {
      rep.converged = true;
      rep.fixed_point = std::move(next);
      return rep;
    }
    if (have_before && k > 2 && rep.even_drift <= 0.01 * opt.tol) {
      // both subsequences have stopped moving but remain apart
      rep.period_two = true;
      rep.fixed_point = std::move(next);
      return rep;
    }
    before = std::move(cur);
    have_before = true;
    cur = std::move(next);
  }
  rep.fixed_point = std::move(cur);
  return rep;
}

}  // namespace rsym
