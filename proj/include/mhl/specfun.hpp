#pragma once

#include <functional>
#include <vector>

namespace mhl {

/// Bessel function of the first kind, order 0. Accurate to ~1e-15 absolute
/// (1e-12 relative away from zeros) on [0, 30]; valid for all finite x.
double bessel_j0(double x);

/// Bessel function of the first kind, order 1.
double bessel_j1(double x);

/// A fixed nodes/weights rule on [lower, upper].
///
/// `exactness_degree` is the largest polynomial degree integrated exactly,
/// or -1 for rules built through a change of variables (for those the
/// verified class of integrands is described where the rule is constructed).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lower = 0.0;
  double upper = 1.0;
  int exactness_degree = -1;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [a, b] (exact to degree 2n-1).
QuadratureRule gauss_legendre(int points, double a = -1.0, double b = 1.0);

/// `panels` equal sub-intervals of [a, b], each carrying a `points`-point
/// Gauss-Legendre rule.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int points);

/// Composite Gauss-Legendre, 32 panels x 8 points on [0, 1].
const QuadratureRule& default_rule();

/// Rule on (0, 1] for integrands with a logarithmic singularity at t = 0.
///
/// Built from the substitution t = exp(-s/2), dt = exp(-s/2)/2 ds, applied to
/// a composite Gauss-Legendre rule on s in [0, s_max]. Integrands of the form
/// t (-log t)^k become polynomial-times-exponential in s; for k <= 8 the
/// default parameters reproduce k!/2^{k+1} to better than 1e-13.
QuadratureRule log_substitution_rule(double s_max = 90.0, int panels = 45, int points = 8);

/// Sum of w_i f(x_i).
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

/// Adaptive Gauss-Legendre (8-point vs two halves) on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-13, double rel_tol = 1e-13);

/// Integral of F over [0, s_max] for slowly decaying F on the half line.
/// Panels double in width; each is integrated adaptively. Stops early once
/// two consecutive panels contribute less than rel_tol of the running total.
double integrate_half_line(const std::function<double(double)>& F, double s_max,
                           double rel_tol = 1e-14);

/// First Dirichlet eigenpair of -Laplace on the unit disk.
///
/// phi1(r) = c J0(j01 r) with c = 1 / (sqrt(pi) j01 J1(j01)), so that the
/// Dirichlet integral of phi1 over the disk equals one.
struct EigenPair {
  double j01 = 0.0;
  double lambda1 = 0.0;
  double norm_constant = 0.0;
  double phi1_at_0 = 0.0;

  /// phi1 at radius r; exactly 0 for r >= 1.
  [[nodiscard]] double profile(double r) const;
  /// d phi1 / dr.
  [[nodiscard]] double derivative(double r) const;
};

/// Computed once on first use: bisection on [2, 3] then Newton with
/// J0' = -J1. Throws NumericError if the bracket has no sign change.
const EigenPair& first_eigenpair();

/// First positive zero of J0 by bracketing and Newton polish.
double first_zero_j0();

}  // namespace mhl
