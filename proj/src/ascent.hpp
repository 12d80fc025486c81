#pragma once

// Projected H1-gradient ascent on the sphere x^T A x = 1, shared by the
// radial and disk solvers.
//
// Problem requirements:
//   long double functional(const Vec&) const (may throw BlowUpError)
//   void gradient(const Vec&, Vec&) const    Euclidean gradient of the functional
//   void lift(const Vec&, Vec&) const        out = A^{-1} rhs
//   double inner(const Vec&, const Vec&) const   a^T A b

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mhl/errors.hpp"
#include "mhl/radial_solver.hpp"

namespace mhl::detail {

using Vec = std::vector<double>;

struct AscentOutcome {
  Vec x;
  double level = 0.0;
  double mu = 0.0;  // x . grad J
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<double> history;
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class Problem>
void normalize(const Problem& prob, Vec& x) {
  const double e = prob.inner(x, x);
  if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("ascent: field has zero or non-finite energy");
  const double scale = 1.0 / std::sqrt(e);
  for (double& v : x) v *= scale;
}

template <class Problem>
AscentOutcome run_ascent(const Problem& prob, Vec x, const SolveOptions& opt) {
  constexpr double kMinStep = 1e-12;
  constexpr double kMaxStep = 1e3;
  constexpr double kMinBB = 1e-3;

  AscentOutcome out;
  normalize(prob, x);
  long double level = prob.functional(x);
  out.history.push_back(static_cast<double>(level));

  const std::size_t n = x.size();
  Vec grad(n), g(n), d(n), y(n), x_prev, d_prev;
  double change = std::numeric_limits<double>::quiet_NaN();
  double step = 1.0;

  for (int it = 0;; ++it) {
    prob.gradient(x, grad);
    prob.lift(grad, g);
    const double mu = dot(x, grad);
    for (std::size_t i = 0; i < n; ++i) d[i] = g[i] - mu * x[i];
    const double full = prob.inner(g, g);
    const double tangential = std::max(0.0, prob.inner(d, d));
    const double residual = full > 0.0 ? std::sqrt(tangential / full) : 0.0;
    out.mu = mu;
    out.residual = residual;
    out.iterations = it;

    const bool flat = std::isnan(change) || change < opt.level_tol;
    if (residual < opt.tol && flat) {
      out.converged = true;
      out.stop_reason = "converged";
      break;
    }
    if (it >= opt.max_iter) {
      out.stop_reason = "max_iter";
      break;
    }
    if (!(mu > 0.0)) {
      out.stop_reason = "nonpositive multiplier";
      break;
    }
    for (double& v : d) v /= mu;

    if (!x_prev.empty()) {
      // Barzilai-Borwein step in the A metric.
      Vec dx(n), dd(n);
      for (std::size_t i = 0; i < n; ++i) {
        dx[i] = x[i] - x_prev[i];
        dd[i] = d[i] - d_prev[i];
      }
      const double num = prob.inner(dx, dx);
      const double den = -prob.inner(dx, dd);
      step = (den > 0.0 && num > 0.0) ? std::clamp(num / den, kMinBB, kMaxStep) : 1.0;
    }

    // Gains near the solution fall below the rounding of x itself, so a step
    // within a few ulps of the current level counts as non-decreasing.
    const long double slack = 64.0L * std::numeric_limits<double>::epsilon() * std::fabs(level);
    bool accepted = false;
    long double trial_level = level;
    while (step >= kMinStep) {
      for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + step * d[i];
      normalize(prob, y);
      try {
        trial_level = prob.functional(y);
      } catch (const BlowUpError&) {
        trial_level = -std::numeric_limits<long double>::infinity();
      }
      if (trial_level >= level - slack) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No representable increase left: flat to rounding.
      out.stop_reason = "line search stalled";
      out.converged = residual < opt.tol;
      break;
    }
    x_prev = x;
    d_prev = d;
    x.swap(y);
    change = static_cast<double>(std::fabs(trial_level - level) / std::max(std::fabs(trial_level), 1e-300L));
    level = trial_level;
    out.history.push_back(static_cast<double>(level));
  }
  out.level = static_cast<double>(level);
  out.x = std::move(x);
  return out;
}

}  // namespace mhl::detail
