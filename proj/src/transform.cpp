#include "mhl/transform.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mhl/errors.hpp"
#include "mhl/specfun.hpp"

namespace mhl {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt4Pi = std::sqrt(4.0 * std::numbers::pi);

// int_0^1 g(t) dt through t = e^{-s/2}; handles integrable singularities at 0
// and weights like t^{2 eps} that decay slowly in s.
double integrate_unit(const std::function<double(double)>& g) {
  auto integrand = [&](double s) {
    const double t = std::exp(-0.5 * s);
    return g(t) * 0.5 * t;
  };
  return integrate_half_line(integrand, 1e6);
}

// Composite 4-point Gauss rule over the cells of `grid` applied to f on [0, 1].
double integrate_cells(const RadialGrid& grid, const std::function<double(double)>& f) {
  static const QuadratureRule base = gauss_legendre(4, 0.0, 1.0);
  double total = 0.0;
  double left = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double right = i + 1 < grid.size() ? grid.node(i) + 0.5 * grid.spacing() : 1.0;
    const double right_c = std::min(right, 1.0);
    double part = 0.0;
    for (std::size_t q = 0; q < base.size(); ++q) part += base.weights[q] * f(left + (right_c - left) * base.nodes[q]);
    total += part * (right_c - left);
    left = right_c;
    if (left >= 1.0) break;
  }
  return total;
}

}  // namespace

void check_exponent(double exponent, const char* where) {
  if (!(exponent <= kExponentLimit))
    throw BlowUpError(std::string(where) + ": blow-up, exponent " + std::to_string(exponent) +
                      " exceeds " + std::to_string(kExponentLimit));
}

double eps_of_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive and finite");
  return 2.0 / (alpha + 2.0);
}

Params make_params(double alpha, double gamma) {
  Params p;
  p.alpha = alpha;
  p.eps = eps_of_alpha(alpha);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
  if (gamma > kFourPi * (1.0 + 1e-15))
    throw InvalidArgument("gamma exceeds 4 pi: the Trudinger-Moser supremum is infinite beyond it");
  p.gamma = gamma;
  return p;
}

RadialProfile phi1_profile() {
  const EigenPair& e = first_eigenpair();
  return {[e](double r) { return e.profile(r); }, [e](double r) { return r >= 1.0 ? 0.0 : e.derivative(r); }};
}

RadialField sample(const RadialProfile& f, const RadialGrid& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f.value(grid.node(i));
  return RadialField(grid, std::move(values));
}

RadialProfile u_to_v(const RadialProfile& u, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("u_to_v: eps must be in (0, 1]");
  const double scale = 1.0 / std::sqrt(eps);
  return {[u, eps, scale](double t) { return scale * u.value(std::pow(t, eps)); },
          [u, eps, scale](double t) {
            if (t <= 0.0) return 0.0;
            const double r = std::pow(t, eps);
            return scale * u.derivative(r) * eps * r / t;
          }};
}

RadialProfile v_to_u(const RadialProfile& v, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("v_to_u: eps must be in (0, 1]");
  const double scale = std::sqrt(eps);
  return {[v, eps, scale](double r) { return scale * v.value(std::pow(r, 1.0 / eps)); },
          [v, eps, scale](double r) {
            if (r <= 0.0) return 0.0;
            const double t = std::pow(r, 1.0 / eps);
            return scale * v.derivative(t) * t / (eps * r);
          }};
}

namespace {

RadialField remap(const RadialField& src, const RadialGrid& target, double power, double scale) {
  const MonotoneCubic f = src.interpolant();
  std::vector<double> values(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) values[i] = scale * f(std::pow(target.node(i), power));
  return RadialField(target, std::move(values));
}

}  // namespace

RadialField u_to_v(const RadialField& u, double eps) { return u_to_v(u, eps, u.grid()); }

RadialField u_to_v(const RadialField& u, double eps, const RadialGrid& target) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("u_to_v: eps must be in (0, 1]");
  if (eps == 1.0 && target == u.grid()) return u;
  return remap(u, target, eps, 1.0 / std::sqrt(eps));
}

RadialField v_to_u(const RadialField& v, double eps) { return v_to_u(v, eps, v.grid()); }

RadialField v_to_u(const RadialField& v, double eps, const RadialGrid& target) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("v_to_u: eps must be in (0, 1]");
  if (eps == 1.0 && target == v.grid()) return v;
  // Near the pole v = a + b t^{2 eps} + ..., smooth and monotone in
  // q = t^{2 eps}; u(r) = sqrt(eps) v at q = r^2.
  const RadialGrid& g = v.grid();
  std::vector<double> q(g.size() + 1), y(g.size() + 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    q[i + 1] = std::pow(g.node(i), 2.0 * eps);
    y[i + 1] = v[i];
  }
  // Quadratic in q through the first three nodes gives the pole value.
  const double q1 = q[1], q2 = q[2], q3 = q[3];
  y[0] = y[1] * q2 * q3 / ((q1 - q2) * (q1 - q3)) + y[2] * q1 * q3 / ((q2 - q1) * (q2 - q3)) +
         y[3] * q1 * q2 / ((q3 - q1) * (q3 - q2));
  const MonotoneCubic f(std::move(q), std::move(y), std::numeric_limits<double>::quiet_NaN());
  const double scale = std::sqrt(eps);
  std::vector<double> values(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) values[i] = scale * f(target.node(i) * target.node(i));
  return RadialField(target, std::move(values));
}

double dirichlet_seminorm(const RadialField& f) {
  const RadialGrid& g = f.grid();
  const auto faces = g.face_weights();
  const double h = g.spacing();
  double sum = 0.0;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const double d = (f[k + 1] - f[k]) / h;
    sum += d * d * faces[k];
  }
  return 2.0 * kPi * sum;
}

double dirichlet_seminorm(const RadialProfile& f) {
  // (t v')^2 / t: t v' stays bounded where v' alone overflows.
  return 2.0 * kPi * integrate_unit([&](double t) {
           if (t <= 0.0) return 0.0;
           const double d = f.derivative(t) * t;
           return d * d / t;
         });
}

double weighted_level(const RadialField& u, const Params& p) {
  const MonotoneCubic f = u.interpolant();
  for (std::size_t i = 0; i < u.size(); ++i) check_exponent(p.gamma * u[i] * u[i], "weighted_level");
  return 2.0 * kPi * integrate_cells(u.grid(), [&](double r) {
           const double x = f(r);
           return std::expm1(p.gamma * x * x) * std::pow(r, p.alpha + 1.0);
         });
}

double weighted_level(const RadialProfile& u, const Params& p) {
  return 2.0 * kPi * integrate_unit([&](double r) {
           const double x = u.value(r);
           check_exponent(p.gamma * x * x, "weighted_level");
           return std::expm1(p.gamma * x * x) * std::pow(r, p.alpha + 1.0);
         });
}

double transported_level(const RadialField& v, const Params& p) {
  const MonotoneCubic f = v.interpolant();
  for (std::size_t i = 0; i < v.size(); ++i) check_exponent(p.eps * p.gamma * v[i] * v[i], "transported_level");
  return 2.0 * kPi * p.eps * integrate_cells(v.grid(), [&](double t) {
           const double x = f(t);
           return std::expm1(p.eps * p.gamma * x * x) * t;
         });
}

double transported_level(const RadialProfile& v, const Params& p) {
  return 2.0 * kPi * p.eps * integrate_unit([&](double t) {
           const double x = v.value(t);
           check_exponent(p.eps * p.gamma * x * x, "transported_level");
           return std::expm1(p.eps * p.gamma * x * x) * t;
         });
}

double unweighted_level(const RadialProfile& f, double g) {
  return 2.0 * kPi * integrate_unit([&](double r) {
           const double x = f.value(r);
           check_exponent(g * x * x, "unweighted_level");
           return std::expm1(g * x * x) * r;
         });
}

HalfLineSamples moser_transform(const RadialField& v) {
  HalfLineSamples out;
  const std::size_t n = v.size();
  out.s.resize(n);
  out.w.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = n - 1 - k;
    out.s[k] = -2.0 * std::log(v.grid().node(i));
    out.w[k] = kSqrt4Pi * v[i];
  }
  out.s[0] = 0.0;
  out.tail = kSqrt4Pi * v.pole_value();
  return out;
}

double half_line_energy(const HalfLineSamples& w) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < w.s.size(); ++k) {
    const double dw = w.w[k + 1] - w.w[k];
    sum += dw * dw / (w.s[k + 1] - w.s[k]);
  }
  return sum;
}

HalfLineProfile moser_transform(const RadialProfile& v) {
  return {[v](double s) { return kSqrt4Pi * v.value(std::exp(-0.5 * s)); },
          [v](double s) {
            const double t = std::exp(-0.5 * s);
            return -0.5 * t * kSqrt4Pi * v.derivative(t);
          }};
}

RadialProfile inverse_moser_transform(const HalfLineProfile& w) {
  return {[w](double t) {
            if (t >= 1.0) return 0.0;
            const double s = t > 0.0 ? -2.0 * std::log(t) : std::numeric_limits<double>::infinity();
            return w.value(s) / kSqrt4Pi;
          },
          [w](double t) {
            if (t >= 1.0 || t <= 0.0) return 0.0;
            return w.derivative(-2.0 * std::log(t)) * (-2.0 / t) / kSqrt4Pi;
          }};
}

double half_line_energy(const HalfLineProfile& w, double s_max) {
  return integrate_half_line([&](double s) {
    const double d = w.derivative(s);
    return d * d;
  }, s_max);
}

double half_line_level(const HalfLineProfile& w, double g, double s_max) {
  return kPi * integrate_half_line([&](double s) {
    const double x = w.value(s);
    const double a = g * x * x / (4.0 * kPi);
    check_exponent(a, "half_line_level");
    // (e^a - 1) e^{-s}, arranged to avoid overflow when a and s are both large
    return std::exp(a - s) - std::exp(-s);
  }, s_max);
}

bool in_transplant_support(double rho, double phi) {
  const double x = rho * std::cos(phi) - kTransplantCenterX;
  const double y = rho * std::sin(phi);
  return x * x + y * y <= kTransplantRadius * kTransplantRadius;
}

DiskField transplant(const PolarFunction& psi, double eps, const DiskGrid& grid) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("transplant: eps must be in (0, 1]");
  const RadialGrid& rg = grid.radial();
  const int m = grid.angles();
  const double scale = 1.0 / std::sqrt(eps);
  const double wedge = 2.0 * kPi * eps;
  std::vector<double> values(grid.size(), 0.0);
  auto checked = [&](double rho, double phi) {
    const double value = psi(rho, phi);
    if (!in_transplant_support(rho, phi) && std::fabs(value) >= 1e-12)
      throw InvalidArgument("transplant: function does not vanish outside its support disk");
    return value;
  };
  for (std::size_t i = 0; i + 1 < rg.size(); ++i) {
    const double t = rg.node(i);
    for (int j = 0; j < m; ++j) {
      (void)checked(t, grid.theta(j));
      const double theta = grid.theta(j);
      if (theta < wedge) values[i * m + j] = scale * checked(t, theta / eps);
    }
  }
  return DiskField(grid, std::move(values));
}

HalfLineProfile carleson_chang_function() {
  const double e = std::numbers::e;
  const double knot = 1.0 + e * e;
  return {[knot, e](double s) {
            if (s <= 2.0) return 0.5 * s;
            if (s <= knot) return std::sqrt(s - 1.0);
            return e;
          },
          [knot](double s) {
            if (s < 2.0) return 0.5;
            if (s < knot) return 0.5 / std::sqrt(s - 1.0);
            return 0.0;
          }};
}

HalfLineProfile moser_function(double L) {
  if (!(L > 0.0)) throw InvalidArgument("moser_function: L must be positive");
  const double scale = 1.0 / std::sqrt(L);
  return {[L, scale](double s) { return scale * std::min(s, L); },
          [L, scale](double s) { return s < L ? scale : 0.0; }};
}

PolarFunction transplant_bump(const HalfLineProfile& w) {
  const RadialProfile f = inverse_moser_transform(w);
  return [f](double rho, double phi) {
    const double x = rho * std::cos(phi) - kTransplantCenterX;
    const double y = rho * std::sin(phi);
    const double r = std::sqrt(x * x + y * y) / kTransplantRadius;
    if (r >= 1.0) return 0.0;
    return f.value(r);
  };
}

}  // namespace mhl
