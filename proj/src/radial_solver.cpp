#include "mhl/radial_solver.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ascent.hpp"
#include "radial_problem.hpp"
#include "mhl/errors.hpp"

namespace mhl {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^x - 1 - x, accurate for small x.
double exp_remainder(double x) {
  if (std::fabs(x) < 1e-3) {
    double term = x * x / 2.0;
    double sum = term;
    for (int k = 3; k < 12; ++k) {
      term *= x / k;
      sum += term;
    }
    return sum;
  }
  return std::expm1(x) - x;
}


}  // namespace

double radial_functional(const RadialField& v, const Params& p) {
  detail::RadialProblem prob(v.grid(), p);
  return static_cast<double>(prob.functional(std::vector<double>(v.values().begin(), v.values().end())));
}

RadialField radial_gradient(const RadialField& v, const Params& p) {
  const RadialGrid& grid = v.grid();
  std::vector<double> g(grid.size(), 0.0);
  const double a = p.eps * p.gamma;
  const double scale = 4.0 * std::numbers::pi * p.eps * p.eps * p.gamma;
  for (int i = 0; i < grid.cells(); ++i) {
    const double x = a * v[i] * v[i];
    check_exponent(x, "radial_gradient");
    g[i] = scale * v[i] * std::exp(x) * grid.node(i);
  }
  return RadialField(grid, std::move(g));
}

double radial_pairing(const RadialField& g, const RadialField& d) {
  double s = 0.0;
  for (int i = 0; i < g.grid().cells(); ++i) s += g[i] * d[i];
  return g.grid().spacing() * s;
}

double radial_constraint(const RadialField& v) { return dirichlet_seminorm(v); }

RadialField random_positive_field(const RadialGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  constexpr int kModes = 8;
  double a[kModes];
  for (double& x : a) x = coef(rng);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.node(i);
    double s = 1.0;
    // 0.5 * sum 1/k^2 < 0.83, so the bracket stays positive.
    for (int k = 1; k <= kModes; ++k) s += 0.5 * a[k - 1] * std::cos(k * std::numbers::pi * t) / (k * k);
    values[i] = (1.0 - t * t) * s;
  }
  return RadialField(grid, std::move(values));
}

RadialSolveResult solve_radial(const Params& p, const RadialField& init, const SolveOptions& opt) {
  if (!(p.eps * p.gamma < 4.0 * std::numbers::pi))
    throw InvalidArgument("solve_radial: transformed exponent eps*gamma must be below 4 pi");
  detail::RadialProblem prob(init.grid(), p);
  detail::AscentOutcome out =
      detail::run_ascent(prob, std::vector<double>(init.values().begin(), init.values().end()), opt);
  for (double& x : out.x) x = std::fabs(x);
  RadialSolveResult r;
  r.params = p;
  r.field = RadialField(init.grid(), std::move(out.x));
  r.diag.level = out.level;
  r.diag.multiplier = 2.0 * p.gamma / out.mu;
  r.diag.residual = out.residual;
  r.diag.iterations = out.iterations;
  r.diag.converged = out.converged;
  r.diag.stop_reason = out.stop_reason;
  r.diag.level_history = std::move(out.history);
  return r;
}

RadialSolveResult solve_radial(const Params& p, const RadialGrid& grid, const SolveOptions& opt) {
  return solve_radial(p, sample(phi1_profile(), grid), opt);
}

double profile_distance(const RadialField& v) {
  const RadialField phi = sample(phi1_profile(), v.grid());
  std::vector<double> diff(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - phi[i];
  const RadialField d(v.grid(), std::move(diff));
  const auto w = v.grid().cell_weights();
  double l2 = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) l2 += w[i] * d[i] * d[i];
  return std::sqrt(dirichlet_seminorm(d) + kTwoPi * l2);
}

double profile_distance(const RadialSolveResult& result) { return profile_distance(result.field); }

double remainder_bound(double eps, double gamma) {
  const double x = eps * gamma;
  if (!(x < 4.0 * std::numbers::pi)) throw InvalidArgument("remainder_bound: eps*gamma must be below 4 pi");
  return x * x / (8.0 * std::numbers::pi * (4.0 * std::numbers::pi - x));
}

RemainderCheck remainder_check(const RadialField& v, const Params& p) {
  const double norm = dirichlet_seminorm(v);
  if (std::fabs(norm - 1.0) > 1e-8) throw InvalidArgument("remainder_check: Dirichlet norm of v must be 1");
  const auto w = v.grid().cell_weights();
  const double a = p.eps * p.gamma;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = a * v[i] * v[i];
    check_exponent(x, "remainder_check");
    s += w[i] * exp_remainder(x);
  }
  RemainderCheck r;
  r.remainder = s;
  r.bound = remainder_bound(p.eps, p.gamma);
  r.holds = r.remainder <= r.bound * (1.0 + 1e-8);
  return r;
}

}  // namespace mhl
