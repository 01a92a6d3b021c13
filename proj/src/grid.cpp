#include "rsym/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "rsym/convolution.hpp"
#include "rsym/error.hpp"
#include "rsym/quadrature.hpp"

namespace rsym {

void validate(const ModelParams& p) {
  require(std::isfinite(p.d) && p.d >= 1.0, "d must be a finite real >= 1");
  require(p.theta > 0.0 && !std::isnan(p.theta), "theta must be positive");
}

SurvivalGrid make_grid(double lo, double hi, std::size_t cells, double fill, double below, double above) {
  require(cells >= 1, "grid needs at least one cell");
  require(std::isfinite(lo) && std::isfinite(hi) && hi > lo, "grid needs finite lo < hi");
  SurvivalGrid g;
  g.lo = lo;
  g.hi = hi;
  g.step = (hi - lo) / static_cast<double>(cells);
  g.values.assign(cells + 1, fill);
  g.below = below;
  g.above = above;
  return g;
}

void validate(const SurvivalGrid& g, double slack) {
  require(g.values.size() >= 2, "grid needs at least two nodes");
  require(std::isfinite(g.lo) && std::isfinite(g.hi) && g.hi > g.lo, "grid needs finite lo < hi");
  require(g.step > 0.0, "grid step must be positive");
  double ratio = (g.hi - g.lo) / g.step;
  require(std::abs(ratio - static_cast<double>(g.cells())) <= 1e-9 * std::max(1.0, ratio),
          "(hi - lo) / step must equal the cell count");
  require(g.below == 0.0 || g.below == 1.0, "below convention must be 0 or 1");
  require(g.above == 0.0 || g.above == 1.0, "above convention must be 0 or 1");
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    double v = g.values[i];
    require(std::isfinite(v) && v >= -slack && v <= 1.0 + slack,
            "grid value outside [0,1] at node " + std::to_string(i));
    if (i > 0) require(v <= g.values[i - 1] + slack, "grid values increase at node " + std::to_string(i));
  }
  require(g.values.front() <= g.below + slack, "first value exceeds the below convention");
  require(g.values.back() >= g.above - slack, "last value is below the above convention");
}

double eval(const SurvivalGrid& g, double x) {
  if (x < g.lo) return g.below;
  if (x > g.hi) return g.above;
  std::size_t n = g.cells();
  double t = (x - g.lo) / g.step;
  double r = std::round(t);
  if (std::abs(t - r) <= 1e-9 * std::max(1.0, r)) {
    std::size_t i = static_cast<std::size_t>(std::min<double>(r, static_cast<double>(n)));
    return g.values[i];
  }
  std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), n - 1);
  double frac = t - static_cast<double>(i);
  return g.values[i] + frac * (g.values[i + 1] - g.values[i]);
}

bool same_geometry(const SurvivalGrid& a, const SurvivalGrid& b) {
  auto close = [](double u, double v, double scale) { return std::abs(u - v) <= 1e-12 * scale; };
  double scale = std::max({1.0, std::abs(a.lo), std::abs(a.hi)});
  return a.values.size() == b.values.size() && close(a.lo, b.lo, scale) && close(a.hi, b.hi, scale) &&
         close(a.step, b.step, scale);
}

double sup_distance(const SurvivalGrid& a, const SurvivalGrid& b) {
  if (!same_geometry(a, b)) fail(Status::domain_mismatch, "sup_distance: grids differ in lo, hi or step");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

namespace {

// ∫_{l0}^{l1} d l^(d-1) (f0 (1-s) + f1 s) dl, s linear from 0 to 1.
double piece(double l0, double l1, double d, double f0, double f1) {
  if (l1 <= l0) return 0.0;
  auto w = linear_cell_weights(l0, l1 - l0, d);
  return w[0] * f0 + w[1] * f1;
}

}  // namespace

double kernel_integral(const SurvivalGrid& g, double x, double d, double upper) {
  require(upper >= 0.0, "kernel_integral: upper limit must be >= 0");
  require(d >= 1.0, "kernel_integral: d must be >= 1");
  if (upper == 0.0) return 0.0;
  // integrate in t = l - x over [-x, upper - x]
  double t0 = -x, t1 = upper - x;
  double total = 0.0;
  // region t < lo
  if (t0 < g.lo) {
    double e = std::min(t1, g.lo);
    total += g.below * power_difference(std::max(0.0, t0 + x), e + x, d);
    t0 = e;
  }
  // region t > hi
  if (t1 > g.hi) {
    double s = std::max(t0, g.hi);
    total += g.above * power_difference(s + x, t1 + x, d);
    t1 = s;
  }
  if (t1 <= t0) return total;
  std::size_t n = g.cells();
  auto cell_of = [&](double t) {
    double c = std::floor((t - g.lo) / g.step);
    return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(n - 1)));
  };
  std::size_t c0 = cell_of(t0), c1 = cell_of(std::nextafter(t1, t0));
  for (std::size_t c = c0; c <= c1; ++c) {
    double a = std::max(t0, g.node(c)), b = std::min(t1, g.node(c + 1));
    if (b <= a) continue;
    double va = g.values[c], vb = g.values[c + 1];
    double slope = (vb - va) / (g.node(c + 1) - g.node(c));
    double fa = va + slope * (a - g.node(c)), fb = va + slope * (b - g.node(c));
    total += piece(a + x, b + x, d, fa, fb);
  }
  return total;
}

struct KernelPlan::Fft {
  std::size_t m = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::vector<std::complex<double>> kernel_spec;
};

namespace {

constexpr std::size_t kDirectCells = 128;

}  // namespace

KernelPlan::KernelPlan(double lo, double hi, std::size_t cells, double d)
    : lo_(lo), hi_(hi), step_((hi - lo) / static_cast<double>(cells)), d_(d), n_(cells) {
  require(cells >= 1, "kernel plan needs at least one cell");
  require(d >= 1.0, "kernel plan: d must be >= 1");
  double o = -2.0 * lo / step_;
  double ro = std::round(o);
  if (!(std::abs(o - ro) <= 1e-9 * std::max(1.0, ro)) || ro < 0.0 || (ro != 0.0 && ro != static_cast<double>(n_)))
    fail(Status::domain_mismatch, "kernel plan supports grids on [-h, h] or [0, h] only");
  offset_ = static_cast<std::size_t>(ro);
  std::size_t len = 2 * n_ + 1 - offset_;
  wl_.resize(len);
  wr_.resize(len);
  for (std::size_t c = 0; c < len; ++c) {
    auto w = linear_cell_weights(static_cast<double>(c) * step_, step_, d);
    wl_[c] = w[0];
    wr_[c] = w[1];
  }
  k_.assign(2 * n_ + 1, 0.0);
  for (std::size_t m = 0; m <= 2 * n_; ++m) {
    if (m >= offset_ && m - offset_ < len) k_[m] += wl_[m - offset_];
    if (m >= offset_ + 1 && m - 1 - offset_ < len) k_[m] += wr_[m - 1 - offset_];
  }
  below_part_.assign(n_ + 1, 0.0);
  for (std::size_t i = 0; i <= n_; ++i)
    if (i > offset_) below_part_[i] = std::pow(static_cast<double>(i - offset_) * step_, d);

  if (n_ > kDirectCells) {
    fft_ = std::make_unique<Fft>();
    std::size_t need = 3 * n_ + 2;
    std::size_t m = 1;
    while (m < need) m <<= 1;
    fft_->m = m;
    double* re = fftw_alloc_real(m);
    fftw_complex* sp = fftw_alloc_complex(m / 2 + 1);
    {
      std::lock_guard<std::mutex> lock(fftw_planner_mutex());
      fft_->forward = fftw_plan_dft_r2c_1d(static_cast<int>(m), re, sp, FFTW_ESTIMATE);
      fft_->backward = fftw_plan_dft_c2r_1d(static_cast<int>(m), sp, re, FFTW_ESTIMATE);
    }
    std::fill(re, re + m, 0.0);
    std::copy(k_.begin(), k_.end(), re);
    fftw_execute_dft_r2c(fft_->forward, re, sp);
    fft_->kernel_spec.resize(m / 2 + 1);
    for (std::size_t k = 0; k <= m / 2; ++k) fft_->kernel_spec[k] = {sp[k][0], sp[k][1]};
    fftw_free(re);
    fftw_free(sp);
  }
}

KernelPlan::~KernelPlan() {
  if (fft_) {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(fft_->forward);
    fftw_destroy_plan(fft_->backward);
  }
}

bool KernelPlan::matches(const SurvivalGrid& f) const {
  double scale = std::max({1.0, std::abs(lo_), std::abs(hi_)});
  return f.cells() == n_ && std::abs(f.lo - lo_) <= 1e-12 * scale && std::abs(f.hi - hi_) <= 1e-12 * scale;
}

std::vector<double> KernelPlan::apply_direct(const SurvivalGrid& f) const {
  if (!matches(f)) fail(Status::domain_mismatch, "kernel plan and grid differ in geometry");
  const auto& v = f.values;
  std::vector<double> out(n_ + 1);
  for (std::size_t i = 0; i <= n_; ++i) {
    double s = f.below * below_part_[i];
    for (std::size_t j = 0; j < n_; ++j) {
      if (i + j < offset_) continue;
      std::size_t c = i + j - offset_;
      s += wl_[c] * v[j] + wr_[c] * v[j + 1];
    }
    out[i] = s;
  }
  return out;
}

std::vector<double> KernelPlan::apply(const SurvivalGrid& f) const {
  if (!fft_) return apply_direct(f);
  if (!matches(f)) fail(Status::domain_mismatch, "kernel plan and grid differ in geometry");
  const auto& v = f.values;
  std::size_t m = fft_->m;
  double* re = fftw_alloc_real(m);
  fftw_complex* sp = fftw_alloc_complex(m / 2 + 1);
  std::fill(re, re + m, 0.0);
  for (std::size_t k = 0; k <= n_; ++k) re[k] = v[n_ - k];
  fftw_execute_dft_r2c(fft_->forward, re, sp);
  for (std::size_t k = 0; k <= m / 2; ++k) {
    std::complex<double> z(sp[k][0], sp[k][1]);
    z *= fft_->kernel_spec[k];
    sp[k][0] = z.real();
    sp[k][1] = z.imag();
  }
  fftw_execute_dft_c2r(fft_->backward, sp, re);
  double scale = 1.0 / static_cast<double>(m);
  std::vector<double> out(n_ + 1);
  for (std::size_t i = 0; i <= n_; ++i) {
    double s = re[i + n_] * scale + f.below * below_part_[i];
    std::size_t top = i + n_;
    if (top >= offset_ && top - offset_ < wl_.size()) s -= v[n_] * wl_[top - offset_];
    if (i >= offset_ + 1) s -= v[0] * wr_[i - 1 - offset_];
    out[i] = s;
  }
  fftw_free(re);
  fftw_free(sp);
  return out;
}

}  // namespace rsym
