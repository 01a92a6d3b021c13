#include "rsym/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "rsym/error.hpp"

namespace rsym {

namespace {

GaussRule build_rule(std::size_t n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, GaussRule> cache;
  require(n >= 1, "gauss rule needs at least one node");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::size_t panels, std::size_t order) {
  const GaussRule& g = gauss_legendre(order);
  double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h, half = 0.5 * h;
    double s = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) s += g.weights[k] * f(mid + half * g.nodes[k]);
    total += s * half;
  }
  return total;
}

double power_difference(double a, double b, double d) {
  if (a <= 0.0) return std::pow(b, d);
  return std::pow(a, d) * std::expm1(d * std::log1p((b - a) / a));
}

std::array<double, 2> linear_cell_weights(double a, double h, double d) {
  double b = a + h;
  double m0 = power_difference(a, b, d);
  double m1;  // ∫ d l^(d-1) s dl
  if (a <= 0.0) {
    m1 = d / (d + 1.0) * std::pow(h, d);
  } else if (h < a) {
    // closed form cancels badly here; the integrand is smooth on the cell
    const GaussRule& g = gauss_legendre(16);
    double s = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      double u = 0.5 * (g.nodes[k] + 1.0);
      s += g.weights[k] * u * std::pow(a + u * h, d - 1.0);
    }
    m1 = 0.5 * h * d * s;
  } else {
    m1 = (d / (d + 1.0) * (std::pow(b, d + 1.0) - std::pow(a, d + 1.0)) - a * m0) / h;
  }
  return {m0 - m1, m1};
}

}  // namespace rsym
