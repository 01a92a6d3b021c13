#pragma once

#include <functional>

namespace rsym {

// Principal branch, x >= 0.
double lambert_w(double x);

double erf(double x);
// exp(x^2) * erfc(x), stable for large x
double erfcx(double x);

// Riemann zeta for s > 1.
double zeta(double s);

// Root of f on [a, b] where f(a), f(b) differ in sign (TOMS 748).
double find_root(const std::function<double(double)>& f, double a, double b);

}  // namespace rsym
