#pragma once

#include <string>
#include <vector>

#include "mhl/fields.hpp"
#include "mhl/radial_solver.hpp"
#include "mhl/transform.hpp"

namespace mhl {

// All field arguments are radial functions in transformed variables
// v(t) = u(t^eps)/sqrt(eps); integrals are reported in physical form.

/// 1 / int_B u^2 e^{gamma u^2} |x|^alpha dx. Throws NumericError if the
/// denominator vanishes.
double multiplier(const RadialField& v, const Params& p);

/// Relative dual-norm residual of the discrete Euler-Lagrange equation with
/// multiplier lambda: |A^{-1} r|_A / |A^{-1} grad J|_A where
/// r = grad J - (2 gamma / lambda) A v.
double euler_lagrange_residual(const RadialField& v, const Params& p, double lambda);

struct PohozaevTerms {
  double lhs = 0.0;       // lambda int e^{gamma u^2} u^2 |x|^{alpha+2}
  double rhs = 0.0;       // int |grad u|^2 |x|^2 - 2 int u^2
  double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, 1)
  double lambda = 0.0;
};

/// Uses lambda = multiplier(v, p). Zero field gives all zeros.
PohozaevTerms pohozaev(const RadialField& v, const Params& p);
double pohozaev_residual(const RadialField& v, const Params& p);

struct SecondVariationReport {
  Params params;
  /// Quadratic form along w = u r sin(theta), full expression.
  double d2f_value = 0.0;
  /// Same form after the Pohozaev identity has been substituted.
  double d2f_reduced = 0.0;
  double normalized = 0.0;  // d2f_value / (4 gamma eps^3)
  double limit_expression = 0.0;
  double gamma_star_bound = 0.0;
  double pohozaev_residual = 0.0;
  /// |d2f_value - d2f_reduced| / ((2 gamma / lambda) max(|lhs|, |rhs|, 1)).
  double consistency = 0.0;

  friend bool operator==(const SecondVariationReport&, const SecondVariationReport&) = default;
};

/// Throws InvalidArgument if the discrete Dirichlet norm of v is not 1 (1e-6).
SecondVariationReport second_variation(const RadialField& v, const Params& p);

/// Quadratic form along w = u psi(|x|) sin(theta) for psi with psi(0) = 0:
/// 4 gamma^2 int e u^4 psi^2 + 2 gamma int e u^2 psi^2
///   - 2 gamma (int e u^2) (int |grad(u psi)|^2 + int u^2 psi^2 / |x|^2),
/// the first three against |x|^alpha dx. With psi(r) = r it reduces to
/// d2f_value of second_variation. psi is given in the physical radius.
double second_variation_direction(const RadialField& v, const Params& p, const RadialProfile& psi);

/// eps int_0^{2 pi} int_0^1 v^2 t^{2 eps - 1} dt dtheta, through t = e^{-s/2}.
double radial_limit_integral(const RadialField& v, double eps);
double radial_limit_integral(const RadialProfile& v, double eps);

/// int_B phi1^4 dx by adaptive quadrature of the closed form.
double phi1_quartic_integral();
/// pi phi1(0)^2 / (lambda1 int_B phi1^4).
double gamma_star_bound();
/// gamma int_B phi1^4 - pi phi1(0)^2 / lambda1.
double limit_expression(double gamma);

struct Certificate {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool passes = false;
  /// int_0^inf w'^2 of the test function.
  double energy = 0.0;
  /// int_0^1 e^{t^2} dt.
  double exp_square_integral = 0.0;
  /// level of the test function at 4 pi, divided by pi; equals lhs.
  double lhs_from_level = 0.0;
  /// Lower bound 1.453 for int_0^1 e^{t^2} and lhs evaluated with it.
  double integral_lower_bound = 1.453;
  double lhs_at_lower_bound = 0.0;
  bool integral_exceeds_bound = false;
  /// Partial sums of sum_k 1/(k! (2k+1)) needed to exceed the lower bound.
  int series_terms_needed = 0;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Partial sum with `terms` terms of int_0^1 e^{t^2} = sum_k 1/(k! (2k+1)).
double exp_square_series(int terms);

Certificate carleson_chang_certificate();

struct AsymptoticsRow {
  double alpha = 0.0;
  double eps = 0.0;
  double S_rad = 0.0;
  double ratio = 0.0;
  double profile_distance = 0.0;
  bool converged = false;
};

struct AsymptoticsTable {
  double gamma = 0.0;
  std::vector<AsymptoticsRow> rows;  // sorted by alpha
  /// |ratio - 1| strictly decreasing across converged rows.
  bool ratio_trend = false;
  /// profile distance strictly decreasing across converged rows.
  bool distance_trend = false;
  int excluded = 0;
};

/// ratio = S_rad lambda1 / (gamma eps^2).
double level_ratio(double S_rad, const Params& p);
AsymptoticsTable level_asymptotics_report(const std::vector<RadialSolveResult>& sweep);

}  // namespace mhl
