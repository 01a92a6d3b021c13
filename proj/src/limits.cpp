#include "rsym/limits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numbers>

#include "rsym/convolution.hpp"
#include "rsym/error.hpp"
#include "rsym/quadrature.hpp"
#include "rsym/special.hpp"

namespace rsym {

namespace {

std::size_t grid_offset(const SurvivalGrid& f) {
  double o = -2.0 * f.lo / f.step;
  double ro = std::round(o);
  if (!(std::abs(o - ro) <= 1e-9 * std::max(1.0, ro)) || ro < 0.0)
    fail(Status::domain_mismatch, "grid must satisfy lo = 0 or lo = -hi");
  std::size_t off = static_cast<std::size_t>(ro);
  if (off != 0 && off != f.cells()) fail(Status::domain_mismatch, "grid must satisfy lo = 0 or lo = -hi");
  return off;
}

// Coefficients of the quartic Lagrange basis on u = 0, 1/4, ..., 1.
std::array<std::array<double, 5>, 5> lagrange_quartic() {
  std::array<std::array<double, 5>, 5> c{};
  for (int r = 0; r < 5; ++r) {
    std::array<double, 5> poly{1, 0, 0, 0, 0};
    double denom = 1.0;
    for (int q = 0; q < 5; ++q) {
      if (q == r) continue;
      double root = q / 4.0;
      std::array<double, 5> next{};
      for (int k = 0; k < 4; ++k) {
        next[k + 1] += poly[k];
        next[k] -= root * poly[k];
      }
      poly = next;
      denom *= (r - q) / 4.0;
    }
    for (int k = 0; k < 5; ++k) c[r][k] = poly[k] / denom;
  }
  return c;
}

// ∫ s^(d-1) L_r((s - a)/h) ds over [a, a + h] for the five quartic nodes.
std::array<double, 5> quartic_weights(double a, double h, double d) {
  static const auto coef = lagrange_quartic();
  std::array<double, 5> w{};
  if (d == 1.0) {
    const double boole[5] = {7, 32, 12, 32, 7};
    for (int r = 0; r < 5; ++r) w[r] = h * boole[r] / 90.0;
    return w;
  }
  if (a <= 0.0) {
    double hd = std::pow(h, d);
    for (int r = 0; r < 5; ++r) {
      double s = 0.0;
      for (int k = 0; k < 5; ++k) s += coef[r][k] / (d + k);
      w[r] = hd * s;
    }
    return w;
  }
  const GaussRule& g = gauss_legendre(16);
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    double u = 0.5 * (g.nodes[k] + 1.0);
    double base = 0.5 * h * g.weights[k] * std::pow(a + u * h, d - 1.0);
    for (int r = 0; r < 5; ++r) {
      double L = coef[r][4];
      for (int j = 3; j >= 0; --j) L = L * u + coef[r][j];
      w[r] += base * L;
    }
  }
  return w;
}

double g_power(double s, double e) { return s > 0.0 ? std::pow(s, e) : 0.0; }

}  // namespace

double beta_theta(const SurvivalGrid& f, const ModelParams& p) {
  validate(f, 1e-9);
  require(std::isfinite(p.d) && p.d >= 1.0, "d must be >= 1");
  std::size_t n = f.cells();
  std::size_t off = grid_offset(f);
  double h = f.step, delta = 0.25 * h;
  std::vector<double> a0(4 * n), a1(4 * n);
  auto refined = [&](std::size_t c) {
    std::size_t j = c / 4, r = c % 4;
    if (r == 0) return f.values[j];
    return f.values[j] + 0.25 * r * (f.values[j + 1] - f.values[j]);
  };
  for (std::size_t c = 0; c < 4 * n; ++c) {
    a0[c] = refined(c);
    a1[c] = refined(c + 1);
  }
  auto prods = convolve_many({&a0, &a1, &a0}, {&a0, &a1, &a1});
  auto C = [&](std::size_t K) {
    if (K == 0 || K - 1 >= prods[0].size()) return 0.0;
    std::size_t k = K - 1;
    return delta / 6.0 * (prods[0][k] + prods[1][k] + 4.0 * prods[2][k]);
  };
  // s runs over [0, 2 hi] in cells of width h; s = m h sits at K = 4 (m + off)
  std::size_t cells_s = static_cast<std::size_t>(std::llround(2.0 * f.hi / h));
  double total = 0.0;
  for (std::size_t m = 0; m < cells_s; ++m) {
    auto w = quartic_weights(static_cast<double>(m) * h, h, p.d);
    std::size_t K = 4 * (m + off);
    for (int r = 0; r < 5; ++r) total += w[r] * C(K + r);
  }
  return 0.5 * p.d * p.d * total;
}

double beta_theta_convolution(const SurvivalGrid& f, const ModelParams& p) {
  validate(f, 1e-9);
  require(std::isfinite(p.d) && p.d >= 1.0, "d must be >= 1");
  std::size_t n = f.cells();
  grid_offset(f);
  double h = f.step, e = p.d + 1.0;
  std::vector<double> dens(n);
  for (std::size_t j = 0; j < n; ++j) dens[j] = std::max(0.0, f.values[j] - f.values[j + 1]) / h;
  double atom_lo = std::max(0.0, f.below - f.values.front());
  double atom_hi = std::max(0.0, f.values.back() - f.above);
  const GaussRule& gl = gauss_legendre(16);

  // density x density: pairs of cells depend on i + j only
  auto pp = convolve(dens, dens);
  double cont = 0.0;
  for (std::size_t m = 0; m < pp.size(); ++m) {
    if (pp[m] == 0.0) continue;
    double base = 2.0 * f.lo + static_cast<double>(m) * h;
    if (base + 2.0 * h <= 0.0) continue;
    double t = 0.0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      double u = 0.5 * (gl.nodes[k] + 1.0);
      t += 0.5 * gl.weights[k] * (u * g_power(base + u * h, e) + (1.0 - u) * g_power(base + (1.0 + u) * h, e));
    }
    cont += pp[m] * t * h * h;
  }

  // atom x density, both orders
  auto atom_cont = [&](double pos) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (dens[j] == 0.0) continue;
      double base = pos + f.lo + static_cast<double>(j) * h;
      if (base + h <= 0.0) continue;
      double t = 0.0;
      for (std::size_t k = 0; k < gl.nodes.size(); ++k)
        t += 0.5 * gl.weights[k] * g_power(base + 0.5 * (gl.nodes[k] + 1.0) * h, e);
      s += dens[j] * t * h;
    }
    return s;
  };
  double mixed = 0.0;
  if (atom_lo > 0.0) mixed += 2.0 * atom_lo * atom_cont(f.lo);
  if (atom_hi > 0.0) mixed += 2.0 * atom_hi * atom_cont(f.hi);

  double atoms = atom_lo * atom_lo * g_power(2.0 * f.lo, e) + 2.0 * atom_lo * atom_hi * g_power(f.lo + f.hi, e) +
                 atom_hi * atom_hi * g_power(2.0 * f.hi, e);

  return p.d / (2.0 * e) * (cont + mixed + atoms);
}

double density_q(const SurvivalGrid& f) {
  require(!f.values.empty(), "empty grid");
  return f.values.back();
}

std::vector<double> default_schedule(Problem prob, double d) {
  if (d > 1.0) return {2.0, 4.0, 8.0, 16.0};
  // d = 1 converges like e^(-θ/2); TSP needs one more doubling
  if (prob == Problem::tsp) return {2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
  return {2.0, 4.0, 8.0, 16.0, 32.0};
}

BetaRow beta_at(Problem prob, const ModelParams& p, const BetaOptions& opt) {
  FixedPointOptions fo;
  fo.tol = opt.fixed_point_tol;
  fo.max_iter = opt.max_iter;
  fo.scheme = Scheme::averaged;
  std::size_t cells = opt.cells;
  if (opt.step > 0.0) {
    double width = prob == Problem::edge_cover ? 0.5 * p.theta : p.theta;
    if (std::isinf(p.theta)) width = edgecover_cutoff(p.d, opt.fixed_point_tol);
    cells = static_cast<std::size_t>(std::ceil(width / opt.step - 1e-9));
  }
  require(cells >= 2, "grid needs at least two cells");
  auto solve = [&](std::size_t c, double& beta, double& q, BetaRow& row) {
    fo.cells = c;
    auto rep = iterate_to_fixed_point(prob, p, fo);
    row.iterations += rep.iterations;
    row.residual = std::max(row.residual, rep.even_odd_gap);
    row.converged = row.converged && rep.converged;
    beta = prob == Problem::edge_cover ? beta_theta_convolution(rep.fixed_point, p) : beta_theta(rep.fixed_point, p);
    q = density_q(rep.fixed_point);
  };
  BetaRow row;
  row.theta = p.theta;
  row.converged = true;
  double b1, q1;
  solve(cells, b1, q1, row);
  if (!opt.richardson) {
    row.beta = b1;
    row.q = q1;
    return row;
  }
  double b2, q2;
  solve(2 * cells, b2, q2, row);
  row.beta = b2 + (b2 - b1) / 3.0;
  row.q = q2 + (q2 - q1) / 3.0;
  return row;
}

BetaEstimate beta_limit(Problem prob, double d, const std::vector<double>& schedule, const BetaOptions& opt) {
  require(std::isfinite(d) && d >= 1.0, "d must be >= 1");
  require(!schedule.empty(), "theta schedule is empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    require(schedule[i] > 0.0 && std::isfinite(schedule[i]), "theta values must be finite and positive");
    if (i > 0) require(schedule[i] > schedule[i - 1], "theta schedule must increase");
  }
  std::vector<double> thetas = schedule;
  if (prob == Problem::edge_cover && opt.append_infinite) thetas.push_back(INFINITY);

  BetaEstimate est;
  est.problem = prob;
  est.d = d;
  std::vector<BetaRow> rows(thetas.size());
  if (opt.jobs > 1) {
    std::vector<std::future<BetaRow>> fut;
    for (double t : thetas)
      fut.push_back(std::async(std::launch::async, [&, t] { return beta_at(prob, {d, t}, opt); }));
    for (std::size_t i = 0; i < fut.size(); ++i) rows[i] = fut[i].get();
  } else {
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      rows[i] = beta_at(prob, {d, thetas[i]}, opt);
      bool last_finite = i + 1 < thetas.size() && std::isinf(thetas[i + 1]);
      if (i > 0 && !last_finite && std::isfinite(thetas[i]) && rows[i].beta - rows[i - 1].beta < opt.tol) {
        rows.resize(i + 1);
        if (std::isinf(thetas.back())) rows.push_back(beta_at(prob, {d, INFINITY}, opt));
        break;
      }
    }
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].beta < rows[i - 1].beta - 1e-9)
      fail(Status::non_monotone, "beta decreased from " + std::to_string(rows[i - 1].beta) + " to " +
                                     std::to_string(rows[i].beta) + " along the theta schedule");
  }
  for (const auto& r : rows) est.converged = est.converged && r.converged;
  est.rows = rows;
  est.beta_limit = rows.back().beta;
  est.extrapolation_gap = rows.size() > 1 ? rows.back().beta - rows[rows.size() - 2].beta : 0.0;
  return est;
}

Bounds rigorous_bounds(double d) {
  require(std::isfinite(d) && d >= 1.0, "d must be >= 1");
  Bounds b;
  double g = std::tgamma(1.0 + 1.0 / d);
  b.lower = 0.5 * g;
  b.upper = g * zeta(1.0 + 1.0 / d) / (2.0 * d);
  if (d > 1.0) b.greedy = 0.5 * (std::numbers::pi / d) / std::sin(std::numbers::pi / d);
  return b;
}

double matching_d1_beta(double q) {
  require(q > 0.0 && q <= 1.0, "q must lie in (0,1]");
  double top = -std::log(q);
  if (top == 0.0) return 0.0;
  // t = e^{-u}
  auto f = [](double u) { return u * std::exp(-u) / (1.0 + std::exp(-u)); };
  std::size_t panels = static_cast<std::size_t>(std::ceil(top)) * 4 + 8;
  return integrate(f, 0.0, top, panels, 16);
}

ClosedForm matching_d1_closed_form(double q, std::size_t cells) {
  require(q > 0.0 && q < 1.0, "q must lie in (0,1)");
  ClosedForm cf;
  cf.theta = -2.0 * std::log(q) / (1.0 + q);
  cf.f = make_grid(-0.5 * cf.theta, 0.5 * cf.theta, cells, 0.0, 1.0, 0.0);
  for (std::size_t i = 0; i <= cells; ++i) {
    double x = cf.f.node(i);
    cf.f.values[i] = (1.0 + q) / (1.0 + std::exp((1.0 + q) * x));
  }
  cf.beta = matching_d1_beta(q);
  return cf;
}

double tsp_d1_reference() {
  auto g = [](double x) { return (1.0 + 0.5 * x) * std::exp(-x); };
  // 1 - g(y), written to keep precision for small y
  auto phi = [](double y) { return -std::expm1(-y) - 0.5 * y * std::exp(-y); };
  double xs = find_root([&](double x) { return g(x) - 0.5; }, 0.0, 5.0);
  auto y_of = [&](double x) {
    double gx = g(x);
    if (gx <= 0.0) return 0.0;
    // phi is concave with phi(xs) = 1/2, so phi(4 gx) >= gx whenever 4 gx <= xs
    double top = std::min(xs, 4.0 * gx);
    return find_root([&](double y) { return phi(y) - gx; }, 0.0, top);
  };
  // area under the symmetric curve: the square [0,xs]^2 plus two equal tails
  double tail = integrate(y_of, xs, 60.0, 240, 16);
  return 0.5 * (xs * xs + 2.0 * tail);
}

EdgeCoverD1 edgecover_d1() {
  EdgeCoverD1 r;
  r.w = lambert_w(1.0);
  r.cost = r.w + 0.5 * r.w * r.w;
  return r;
}

std::pair<double, double> edgecover_d2_map(double A, double B) {
  double a = 0.5 * std::sqrt(std::numbers::pi) * std::exp(-2.0 * B) * erfcx(A);
  double b = 0.5 * std::exp(-2.0 * B) - A * a;
  return {a, b};
}

EdgeCoverD2 edgecover_d2() {
  const double sp = std::sqrt(std::numbers::pi);
  // at a fixed point the first component gives e^{-2B} as a function of A
  auto e2b = [&](double A) { return 2.0 * A / (sp * erfcx(A)); };
  auto h = [&](double A) {
    double e = e2b(A);
    return -0.5 * std::log(e) - (0.5 * e - A * A);
  };
  EdgeCoverD2 r;
  r.A = find_root(h, 1e-6, 2.0);
  r.B = -0.5 * std::log(e2b(r.A));
  r.residual = std::abs(r.B - (0.5 * std::exp(-2.0 * r.B) - r.A * r.A));
  // 2 ∫ x^2 F + 4AB with F = exp(-x^2 - 2Ax - 2B)
  double x2 = std::exp(-2.0 * r.B) * (-0.5 * r.A + 0.25 * sp * (1.0 + 2.0 * r.A * r.A) * erfcx(r.A));
  r.cost = 2.0 * x2 + 4.0 * r.A * r.B;
  return r;
}

}  // namespace rsym
