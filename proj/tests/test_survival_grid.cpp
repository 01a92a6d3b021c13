#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rsym/error.hpp"
#include "rsym/grid.hpp"
#include "rsym/rng.hpp"

using namespace rsym;

namespace {

// ∫_a^b d l^(d-1) (c0 + c1 l) dl in closed form
double poly_piece(double a, double b, double d, double c0, double c1) {
  auto prim = [&](double l) { return c0 * std::pow(l, d) + c1 * d / (d + 1.0) * std::pow(l, d + 1.0); };
  return prim(b) - prim(a);
}

// Independent evaluation of d ∫_0^upper l^(d-1) F(l - x) dl for a piecewise
// linear F: breakpoints in l are x + node, each piece integrated exactly.
double kernel_oracle(const SurvivalGrid& g, double x, double d, double upper) {
  std::vector<double> cuts{0.0, upper};
  for (std::size_t i = 0; i <= g.cells(); ++i) {
    double l = x + g.node(i);
    if (l > 0.0 && l < upper) cuts.push_back(l);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    double fa = eval(g, a - x), fb = eval(g, b - x);
    double mid = 0.5 * (a + b) - x;
    if (mid < g.lo) fa = fb = g.below;
    if (mid > g.hi) fa = fb = g.above;
    double c1 = (fb - fa) / (b - a);
    total += poly_piece(a, b, d, fa - c1 * a, c1);
  }
  return total;
}

SurvivalGrid random_monotone(double lo, double hi, std::size_t cells, std::uint64_t seed) {
  TrialRng rng(seed, 0);
  SurvivalGrid g = make_grid(lo, hi, cells, 0.0);
  double v = 1.0;
  for (auto& x : g.values) {
    v *= 1.0 - 0.3 * rng.uniform() / static_cast<double>(cells) * 8.0;
    x = std::max(0.0, v);
  }
  return g;
}

}  // namespace

TEST_CASE("eval: conventions and interpolation") {
  SurvivalGrid one = make_grid(-1.0, 1.0, 8, 1.0);
  CHECK(eval(one, 0.37) == 1.0);
  SurvivalGrid z = make_grid(-1.0, 1.0, 8, 0.0, 1.0, 0.0);
  CHECK(eval(z, z.lo - 5.0) == 1.0);
  CHECK(eval(z, z.hi + 5.0) == 0.0);
  SurvivalGrid lin = make_grid(0.0, 1.0, 1, 0.0);
  lin.values = {1.0, 0.0};
  CHECK(eval(lin, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(eval(lin, 0.0) == 1.0);
  CHECK(eval(lin, 1.0) == 0.0);
}

TEST_CASE("eval is non-increasing between conventions") {
  SurvivalGrid g = random_monotone(-2.0, 2.0, 64, 11);
  validate(g);
  double prev = g.below;
  for (int i = -300; i <= 300; ++i) {
    double v = eval(g, i / 100.0);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    prev = v;
  }
}

TEST_CASE("validate rejects broken grids") {
  SurvivalGrid g = make_grid(0.0, 1.0, 4, 0.5);
  g.values[2] = 0.9;
  CHECK_THROWS_AS(validate(g), Error);
  g = make_grid(0.0, 1.0, 4, 0.5);
  g.values[1] = 1.5;
  CHECK_THROWS_AS(validate(g), Error);
  g = make_grid(0.0, 1.0, 4, 0.5);
  g.below = 0.5;
  CHECK_THROWS_AS(validate(g), Error);
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 4, 0.5), Error);
  CHECK_THROWS_AS(validate(ModelParams{0.5, 1.0}), Error);
  CHECK_THROWS_AS(validate(ModelParams{1.0, 0.0}), Error);
}

TEST_CASE("kernel_integral: F = 1 gives upper^d") {
  const double theta = 3.0;
  SurvivalGrid one = make_grid(-theta / 2, theta / 2, 256, 1.0, 1.0, 1.0);
  for (double d : {1.0, 1.5, 2.0, 3.0}) {
    for (double x : {-1.5, -0.4, 0.0, 0.7, 1.5}) {
      double upper = theta / 2 + x;
      double want = std::pow(upper, d);
      CHECK(kernel_integral(one, x, d, upper) == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("kernel_integral: zero integrand and bad input") {
  SurvivalGrid zero = make_grid(-1.0, 1.0, 32, 0.0, 0.0, 0.0);
  CHECK(kernel_integral(zero, 0.3, 2.0, 1.3) == 0.0);
  CHECK(kernel_integral(zero, 0.3, 1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(kernel_integral(zero, 0.0, 1.0, -0.1), Error);
  CHECK_THROWS_AS(kernel_integral(zero, 0.0, 0.5, 1.0), Error);
}

TEST_CASE("kernel_integral: logistic profile against its antiderivative") {
  // F(x) = a/(1+e^{a x}), a = 1+q; ∫_0^{θ/2} F = aθ/2 - ln(1+e^{aθ/2}) + ln 2
  for (double q : {0.1, 0.25, 0.5}) {
    double a = 1.0 + q;
    double theta = -2.0 * std::log(q) / a;
    SurvivalGrid g = make_grid(-theta / 2, theta / 2, 16384, 0.0);
    for (std::size_t i = 0; i <= g.cells(); ++i) g.values[i] = a / (1.0 + std::exp(a * g.node(i)));
    double h = a * theta / 2;
    double want = h - (h + std::log1p(std::exp(-h))) + std::log(2.0);
    CHECK(std::abs(kernel_integral(g, 0.0, 1.0, theta / 2) - want) <= 1e-8);
  }
  // high-precision reference for q = 1/4
  double theta = 2.2180709777918249901;
  SurvivalGrid g = make_grid(-theta / 2, theta / 2, 16384, 0.0);
  for (std::size_t i = 0; i <= g.cells(); ++i) g.values[i] = 1.25 / (1.0 + std::exp(1.25 * g.node(i)));
  CHECK(std::abs(kernel_integral(g, 0.0, 1.0, theta / 2) - 0.47000362924573555365) <= 1e-8);
}

TEST_CASE("kernel_integral is exact on piecewise linear profiles") {
  SurvivalGrid g = random_monotone(-1.25, 1.25, 37, 3);
  for (double d : {1.0, 1.5, 2.0, 3.0}) {
    for (double x : {-1.25, -0.61, 0.0, 0.333, 1.25}) {
      double upper = x + g.hi + 0.4;
      double got = kernel_integral(g, x, d, upper);
      double want = kernel_oracle(g, x, d, upper);
      CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, want));
    }
  }
}

TEST_CASE("KernelPlan agrees with pointwise integration") {
  for (double d : {1.0, 2.0, 2.5}) {
    for (std::size_t cells : {64, 300, 1024}) {
      // symmetric grid (matching, tsp)
      SurvivalGrid s = random_monotone(-2.0, 2.0, cells, cells + 1);
      KernelPlan ps(s.lo, s.hi, cells, d);
      auto fft = ps.apply(s);
      auto direct = ps.apply_direct(s);
      REQUIRE(fft.size() == s.values.size());
      for (std::size_t i = 0; i < fft.size(); ++i) {
        double want = kernel_integral(s, s.node(i), d, s.node(i) + s.hi);
        CHECK(std::abs(direct[i] - want) <= 1e-11 * std::max(1.0, want));
        CHECK(std::abs(fft[i] - want) <= 1e-9 * std::max(1.0, want));
      }
      // half-line grid (edge cover)
      SurvivalGrid h = random_monotone(0.0, 3.0, cells, cells + 2);
      KernelPlan ph(h.lo, h.hi, cells, d);
      auto hf = ph.apply(h);
      for (std::size_t i = 0; i < hf.size(); ++i) {
        double want = kernel_integral(h, h.node(i), d, h.node(i) + h.hi);
        CHECK(std::abs(hf[i] - want) <= 1e-9 * std::max(1.0, want));
      }
    }
  }
}

TEST_CASE("KernelPlan rejects other geometries") {
  CHECK_THROWS_AS(KernelPlan(-1.0, 2.0, 16, 1.0), Error);
  KernelPlan p(-1.0, 1.0, 16, 1.0);
  SurvivalGrid g = make_grid(-1.0, 1.0, 32, 0.5);
  CHECK_FALSE(p.matches(g));
  CHECK_THROWS_AS(p.apply(g), Error);
}

TEST_CASE("sup_distance") {
  SurvivalGrid a = random_monotone(-1.0, 1.0, 20, 5);
  CHECK(sup_distance(a, a) == 0.0);
  CHECK(sup_distance(make_grid(0.0, 1.0, 10, 1.0), make_grid(0.0, 1.0, 10, 0.0)) == 1.0);
  SurvivalGrid b = a;
  b.values[7] += 0.25;
  CHECK(sup_distance(a, b) == doctest::Approx(0.25).epsilon(1e-15));
  try {
    sup_distance(a, make_grid(-1.0, 1.0, 21, 0.0));
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.status() == Status::domain_mismatch);
  }
}
