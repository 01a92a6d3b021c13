#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace rsym {

struct ModelParams {
  double d = 1.0;
  double theta = 1.0;  // +inf allowed only for edge cover
};

void validate(const ModelParams& p);

// Survival function F(x) = P(f >= x) sampled on a uniform grid.
struct SurvivalGrid {
  double lo = 0.0;
  double hi = 1.0;
  double step = 1.0;
  std::vector<double> values;
  double below = 1.0;  // F for x < lo
  double above = 0.0;  // F for x > hi

  std::size_t cells() const { return values.empty() ? 0 : values.size() - 1; }
  double node(std::size_t i) const { return i == cells() ? hi : lo + static_cast<double>(i) * step; }
};

SurvivalGrid make_grid(double lo, double hi, std::size_t cells, double fill, double below = 1.0,
                       double above = 0.0);

// Throws invalid_argument on a broken invariant. `slack` absorbs rounding.
void validate(const SurvivalGrid& g, double slack = 1e-12);

double eval(const SurvivalGrid& g, double x);

double sup_distance(const SurvivalGrid& a, const SurvivalGrid& b);

bool same_geometry(const SurvivalGrid& a, const SurvivalGrid& b);

// d * ∫_0^upper l^(d-1) F(l - x) dl, exact for piecewise-linear F up to the
// accuracy of the per-piece power moments.
double kernel_integral(const SurvivalGrid& g, double x, double d, double upper);

// I(x_i) = kernel_integral(F, x_i, d, x_i + hi) at every node, for grids with
// lo = -hi or lo = 0. The weights only depend on geometry and d, so a plan is
// built once and reused across iterations.
class KernelPlan {
 public:
  KernelPlan(double lo, double hi, std::size_t cells, double d);
  ~KernelPlan();
  KernelPlan(const KernelPlan&) = delete;
  KernelPlan& operator=(const KernelPlan&) = delete;

  std::vector<double> apply(const SurvivalGrid& f) const;
  std::vector<double> apply_direct(const SurvivalGrid& f) const;

  bool matches(const SurvivalGrid& f) const;

 private:
  struct Fft;
  double lo_, hi_, step_, d_;
  std::size_t n_;
  std::size_t offset_;           // -2 lo / step
  std::vector<double> wl_, wr_;  // per l-cell hat weights
  std::vector<double> k_;        // combined correlation kernel
  std::vector<double> below_part_;
  std::unique_ptr<Fft> fft_;
};

}  // namespace rsym
