#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhl/fields.hpp"
#include "mhl/transform.hpp"

namespace mhl {

struct SolveOptions {
  double tol = 1e-8;         // relative H1 norm of the tangential gradient
  int max_iter = 50000;
  double level_tol = 1e-12;  // relative change of the level between accepted steps
};

struct SolveDiagnostics {
  double level = 0.0;
  /// lambda in -Lap u = lambda |x|^alpha u e^{gamma u^2}.
  double multiplier = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
  /// Level after every accepted step (first entry: the normalized init).
  std::vector<double> level_history;
};

/// Maximizer in transformed variables v(t) = u(t^eps)/sqrt(eps).
struct RadialSolveResult {
  Params params;
  RadialField field;
  SolveDiagnostics diag;
};

/// 2 pi eps sum_i W_i (e^{eps gamma v_i^2} - 1) with exact cell moments W_i of t.
double radial_functional(const RadialField& v, const Params& p);

/// Derivative density: 4 pi eps^2 gamma v e^{eps gamma v^2} t at the nodes.
/// Pairs with directions through radial_pairing.
RadialField radial_gradient(const RadialField& v, const Params& p);

/// h sum_{i<N} g_i d_i, the discrete int_0^1 g d dt.
double radial_pairing(const RadialField& g, const RadialField& d);

/// Discrete constraint 2 pi sum_k ((v_{k+1} - v_k)/h)^2 int_{t_k}^{t_{k+1}} t dt.
double radial_constraint(const RadialField& v);

/// Positive random field (1 - t^2)(1 + sum_k a_k cos(k pi t)/k^2) from seed.
RadialField random_positive_field(const RadialGrid& grid, std::uint64_t seed);

/// Projected H1-gradient ascent from `init` on init's grid.
RadialSolveResult solve_radial(const Params& p, const RadialField& init, const SolveOptions& opt = {});
/// Same, starting from phi1 sampled on `grid`.
RadialSolveResult solve_radial(const Params& p, const RadialGrid& grid, const SolveOptions& opt = {});

/// sqrt(Dirichlet^2 + L^2 norm^2) of v - phi1 on v's grid.
double profile_distance(const RadialField& v);
double profile_distance(const RadialSolveResult& result);

struct RemainderCheck {
  double remainder = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// (eps gamma)^2 / (8 pi (4 pi - eps gamma)).
double remainder_bound(double eps, double gamma);
/// int_0^1 (e^x - 1 - x) t dt with x = eps gamma v^2, against remainder_bound.
/// Throws InvalidArgument unless the discrete Dirichlet norm is 1 (to 1e-8).
RemainderCheck remainder_check(const RadialField& v, const Params& p);

}  // namespace mhl
