#include "rsym/special.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>

#include "rsym/error.hpp"

namespace rsym {

double lambert_w(double x) {
  require(x >= 0.0 && std::isfinite(x), "lambert_w: argument must be finite and >= 0");
  return boost::math::lambert_w0(x);
}

double erf(double x) { return boost::math::erf(x); }

double erfcx(double x) {
  if (x < 26.0) return std::exp(x * x) * boost::math::erfc(x);
  // asymptotic series; terms below 1e-17 relative at x >= 26
  double inv = 1.0 / (2.0 * x * x), term = 1.0, sum = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1.0) * inv;
    sum += term;
  }
  return sum / (x * std::sqrt(M_PI));
}

double zeta(double s) {
  require(s > 1.0, "zeta: s must exceed 1");
  return boost::math::zeta(s);
}

double find_root(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) fail(Status::not_converged, "find_root: interval does not bracket a root");
  std::uintmax_t iters = 200;
  boost::math::tools::eps_tolerance<double> tol(52);
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace rsym
