#include "mhl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "mhl/errors.hpp"
#include "mhl/specfun.hpp"
#include "radial_problem.hpp"

namespace mhl {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> as_vec(const RadialField& v) { return {v.values().begin(), v.values().end()}; }

// sum_{i<N} m_i v_i^a e^{eps gamma v_i^2}^b
double weighted_sum(const RadialField& v, const std::vector<double>& moments, int power, double exp_coeff) {
  double s = 0.0;
  for (int i = 0; i < v.grid().cells(); ++i) {
    const double x = v[i];
    const double e = exp_coeff == 0.0 ? 1.0 : std::exp(exp_coeff * x * x);
    s += moments[i] * std::pow(x, power) * e;
  }
  return s;
}

double weighted_gradient(const RadialField& v, const std::vector<double>& face_moments) {
  const double h = v.grid().spacing();
  double s = 0.0;
  for (std::size_t k = 0; k < face_moments.size(); ++k) {
    const double d = (v[k + 1] - v[k]) / h;
    s += d * d * face_moments[k];
  }
  return s;
}

bool is_zero(const RadialField& v) {
  return std::all_of(v.values().begin(), v.values().end(), [](double x) { return x == 0.0; });
}

}  // namespace

double multiplier(const RadialField& v, const Params& p) {
  for (std::size_t i = 0; i < v.size(); ++i) check_exponent(p.eps * p.gamma * v[i] * v[i], "multiplier");
  const std::vector<double> w(v.grid().cell_weights().begin(), v.grid().cell_weights().end());
  const double denom = kTwoPi * p.eps * p.eps * weighted_sum(v, w, 2, p.eps * p.gamma);
  if (!(denom > 0.0)) throw NumericError("multiplier: vanishing denominator");
  return 1.0 / denom;
}

double euler_lagrange_residual(const RadialField& v, const Params& p, double lambda) {
  detail::RadialProblem prob(v.grid(), p);
  const detail::Vec x = as_vec(v);
  detail::Vec grad(x.size()), av, r(x.size()), lifted, g;
  prob.gradient(x, grad);
  prob.apply(x, av);
  const double coeff = 2.0 * p.gamma / lambda;
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = grad[i] - coeff * av[i];
  prob.lift(r, lifted);
  prob.lift(grad, g);
  const double full = prob.inner(g, g);
  if (!(full > 0.0)) return 0.0;
  return std::sqrt(std::max(0.0, prob.inner(lifted, lifted)) / full);
}

PohozaevTerms pohozaev(const RadialField& v, const Params& p) {
  PohozaevTerms t;
  if (is_zero(v)) return t;
  const RadialGrid& g = v.grid();
  const double eps = p.eps;
  t.lambda = multiplier(v, p);
  const std::vector<double> cm_outer = g.cell_moments(1.0 + 2.0 * eps);
  const std::vector<double> cm_inner = g.cell_moments(2.0 * eps - 1.0);
  const std::vector<double> fm_outer = g.face_moments(1.0 + 2.0 * eps);
  t.lhs = t.lambda * kTwoPi * eps * eps * weighted_sum(v, cm_outer, 2, eps * p.gamma);
  const double grad_r2 = kTwoPi * weighted_gradient(v, fm_outer);
  const double l2 = kTwoPi * eps * eps * weighted_sum(v, cm_inner, 2, 0.0);
  t.rhs = grad_r2 - 2.0 * l2;
  t.residual = std::fabs(t.lhs - t.rhs) / std::max({std::fabs(t.lhs), std::fabs(t.rhs), 1.0});
  return t;
}

double pohozaev_residual(const RadialField& v, const Params& p) { return pohozaev(v, p).residual; }

SecondVariationReport second_variation(const RadialField& v, const Params& p) {
  if (std::fabs(dirichlet_seminorm(v) - 1.0) > 1e-6)
    throw InvalidArgument("second_variation: input must have unit Dirichlet norm");
  const RadialGrid& g = v.grid();
  const double eps = p.eps;
  const double gam = p.gamma;
  const double a = eps * gam;
  const std::vector<double> w(g.cell_weights().begin(), g.cell_weights().end());
  const std::vector<double> cm_outer = g.cell_moments(1.0 + 2.0 * eps);
  const std::vector<double> cm_inner = g.cell_moments(2.0 * eps - 1.0);
  const std::vector<double> fm_outer = g.face_moments(1.0 + 2.0 * eps);

  const double quartic = kTwoPi * eps * eps * eps * weighted_sum(v, cm_outer, 4, a);  // int e u^4 |x|^{alpha+2}
  const double outer = kTwoPi * eps * eps * weighted_sum(v, cm_outer, 2, a);           // int e u^2 |x|^{alpha+2}
  const double inner = kTwoPi * eps * eps * weighted_sum(v, w, 2, a);                  // int e u^2 |x|^alpha
  const double grad_r2 = kTwoPi * weighted_gradient(v, fm_outer);                      // int |grad u|^2 |x|^2
  const double l2 = kTwoPi * eps * eps * weighted_sum(v, cm_inner, 2, 0.0);            // int u^2

  SecondVariationReport r;
  r.params = p;
  r.d2f_value = 4.0 * gam * gam * quartic + 2.0 * gam * outer - 2.0 * gam * inner * grad_r2;
  r.d2f_reduced = 4.0 * gam * gam * quartic - 4.0 * gam * inner * l2;
  r.normalized = r.d2f_value / (4.0 * gam * eps * eps * eps);
  r.limit_expression = limit_expression(gam);
  r.gamma_star_bound = gamma_star_bound();
  const PohozaevTerms poh = pohozaev(v, p);
  r.pohozaev_residual = poh.residual;
  const double scale = (2.0 * gam / poh.lambda) * std::max({std::fabs(poh.lhs), std::fabs(poh.rhs), 1.0});
  r.consistency = std::fabs(r.d2f_value - r.d2f_reduced) / scale;
  return r;
}

double second_variation_direction(const RadialField& v, const Params& p, const RadialProfile& psi) {
  const RadialGrid& g = v.grid();
  const double eps = p.eps;
  const double gam = p.gamma;
  const double a = eps * gam;
  const auto w = g.cell_weights();
  const std::vector<double> cm_inner = g.cell_moments(2.0 * eps - 1.0);
  const int n = g.cells();
  double quartic = 0.0, quad = 0.0, base = 0.0, hardy = 0.0;
  std::vector<double> prod(g.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    const double te = std::pow(g.node(i), eps);
    const double ps = psi.value(te);
    const double e = std::exp(a * v[i] * v[i]);
    const double v2 = v[i] * v[i];
    quartic += w[i] * e * v2 * v2 * ps * ps;
    quad += w[i] * e * v2 * ps * ps;
    base += w[i] * e * v2;
    const double ratio = ps / te;
    hardy += cm_inner[i] * v2 * ratio * ratio;
    prod[i] = v[i] * ps;
  }
  // t^eps rises from 0 to O(1) inside the first cell: on [0, t0] the product
  // u psi is pole * psi, whose energy 2 pi eps int_0^{t0^eps} psi'^2 r dr no
  // face difference sees.
  const double pole = v.pole_value();
  const double r0 = std::pow(g.node(0), eps);
  const double core = kTwoPi * eps * pole * pole * integrate_adaptive([&](double r) {
                        const double d = psi.derivative(r);
                        return d * d * r;
                      }, 0.0, r0);
  const double c2 = kTwoPi * eps * eps;
  const double dir = dirichlet_seminorm(RadialField(g, std::move(prod))) + core + c2 * hardy;
  return 4.0 * gam * gam * kTwoPi * eps * eps * eps * quartic + 2.0 * gam * c2 * quad - 2.0 * gam * c2 * base * dir;
}

namespace {

// int_{s0}^inf of x(s)^2 e^{-eps s}: quadrature up to s = kLimitCut, where
// t = e^{-s/2} < 1e-300 and x equals its pole value, then the exact tail.
constexpr double kLimitCut = 1400.0;

double limit_tail(const std::function<double(double)>& integrand, double s0, double pole, double eps) {
  double total = 0.0;
  for (double a = s0; a < kLimitCut;) {
    const double b = std::min(kLimitCut, a + 32.0);
    total += integrate_adaptive(integrand, a, b, 1e-300, 1e-14);
    a = b;
  }
  return total + pole * pole * std::exp(-eps * std::max(s0, kLimitCut)) / eps;
}

}  // namespace

double radial_limit_integral(const RadialField& v, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("radial_limit_integral: eps must be in (0, 1]");
  const MonotoneCubic f = v.interpolant();
  auto integrand = [&](double s) {
    const double x = f(std::exp(-0.5 * s));
    return x * x * std::exp(-eps * s);
  };
  static const QuadratureRule gl = gauss_legendre(8, 0.0, 1.0);
  const RadialGrid& g = v.grid();
  double total = 0.0;
  // Between knots the interpolant is a cubic in t, smooth in s.
  for (std::size_t k = g.size() - 1; k > 0; --k) {
    const double s0 = -2.0 * std::log(g.node(k));
    const double s1 = -2.0 * std::log(g.node(k - 1));
    double part = 0.0;
    for (std::size_t q = 0; q < gl.size(); ++q) part += gl.weights[q] * integrand(s0 + (s1 - s0) * gl.nodes[q]);
    total += (s1 - s0) * part;
  }
  const double s_first = -2.0 * std::log(g.node(0));
  total += limit_tail(integrand, s_first, f(0.0), eps);
  return eps * kPi * total;
}

double radial_limit_integral(const RadialProfile& v, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("radial_limit_integral: eps must be in (0, 1]");
  auto integrand = [&](double s) {
    const double x = v.value(std::exp(-0.5 * s));
    return x * x * std::exp(-eps * s);
  };
  return eps * kPi * limit_tail(integrand, 0.0, v.value(0.0), eps);
}

double phi1_quartic_integral() {
  static const double value = [] {
    const EigenPair& e = first_eigenpair();
    return kTwoPi * integrate_adaptive([&](double r) {
             const double f = e.profile(r);
             return f * f * f * f * r;
           }, 0.0, 1.0, 1e-16, 1e-15);
  }();
  return value;
}

double gamma_star_bound() {
  const EigenPair& e = first_eigenpair();
  return kPi * e.phi1_at_0 * e.phi1_at_0 / (e.lambda1 * phi1_quartic_integral());
}

double limit_expression(double gamma) {
  const EigenPair& e = first_eigenpair();
  return gamma * phi1_quartic_integral() - kPi * e.phi1_at_0 * e.phi1_at_0 / e.lambda1;
}

double exp_square_series(int terms) {
  double sum = 0.0;
  double factorial = 1.0;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) factorial *= k;
    sum += 1.0 / (factorial * (2.0 * k + 1.0));
  }
  return sum;
}

Certificate carleson_chang_certificate() {
  const double e = std::numbers::e;
  Certificate c;
  c.name = "carleson_chang";
  const HalfLineProfile w = carleson_chang_function();
  c.energy = half_line_energy(w);
  c.exp_square_integral = integrate_adaptive([](double t) { return std::exp(t * t); }, 0.0, 1.0, 1e-16, 1e-15);
  c.lhs = 2.0 / e * c.exp_square_integral + e - 1.0;
  c.rhs = 16.0 / first_eigenpair().lambda1;
  c.margin = c.lhs - c.rhs;
  c.passes = c.margin > 0.0;
  c.lhs_from_level = half_line_level(w, 4.0 * kPi) / kPi;
  c.lhs_at_lower_bound = 2.0 / e * c.integral_lower_bound + e - 1.0;
  c.integral_exceeds_bound = c.exp_square_integral > c.integral_lower_bound;
  for (int n = 1; n <= 20; ++n) {
    if (exp_square_series(n) > c.integral_lower_bound) {
      c.series_terms_needed = n;
      break;
    }
  }
  return c;
}

double level_ratio(double S_rad, const Params& p) {
  return S_rad * first_eigenpair().lambda1 / (p.gamma * p.eps * p.eps);
}

AsymptoticsTable level_asymptotics_report(const std::vector<RadialSolveResult>& sweep) {
  AsymptoticsTable table;
  for (const RadialSolveResult& r : sweep) {
    AsymptoticsRow row;
    row.alpha = r.params.alpha;
    row.eps = r.params.eps;
    row.S_rad = r.diag.level;
    row.ratio = level_ratio(r.diag.level, r.params);
    row.profile_distance = profile_distance(r.field);
    row.converged = r.diag.converged;
    table.gamma = r.params.gamma;
    table.rows.push_back(row);
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const AsymptoticsRow& a, const AsymptoticsRow& b) { return a.alpha < b.alpha; });
  std::vector<const AsymptoticsRow*> used;
  for (const AsymptoticsRow& row : table.rows) {
    if (row.converged) used.push_back(&row);
    else ++table.excluded;
  }
  table.ratio_trend = used.size() >= 2;
  table.distance_trend = used.size() >= 2;
  for (std::size_t k = 1; k < used.size(); ++k) {
    if (!(std::fabs(used[k]->ratio - 1.0) < std::fabs(used[k - 1]->ratio - 1.0))) table.ratio_trend = false;
    if (!(used[k]->profile_distance < used[k - 1]->profile_distance)) table.distance_trend = false;
  }
  return table;
}

}  // namespace mhl
