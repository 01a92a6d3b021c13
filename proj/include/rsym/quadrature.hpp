#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace rsym {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points, cached per n.
const GaussRule& gauss_legendre(std::size_t n);

// Composite Gauss-Legendre over [a, b] split into `panels` equal pieces.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::size_t panels = 1, std::size_t order = 16);

// b^d - a^d for 0 <= a <= b without cancellation.
double power_difference(double a, double b, double d);

// Weights of the hat basis on [a, a+h] against the density d*l^(d-1):
// w[0] = ∫ d l^(d-1) (1-s) dl, w[1] = ∫ d l^(d-1) s dl with s = (l-a)/h.
std::array<double, 2> linear_cell_weights(double a, double h, double d);

}  // namespace rsym
