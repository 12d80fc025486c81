#include "mhl/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mhl/errors.hpp"

namespace mhl {
namespace {

constexpr double kSeriesLimit = 12.0;
constexpr double kMillerLimit = 200.0;

// Power series in extended precision; the largest term near x = 12 is ~4e3,
// so long double keeps cancellation error below 1e-15.
long double series_j0(long double x) {
  const long double q = -0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && std::fabs(term) < 1e-24L) break;
  }
  return sum;
}

long double series_j1(long double x) {
  const long double q = -0.25L * x * x;
  long double term = 0.5L * x;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * (k + 1));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && std::fabs(term) < 1e-24L) break;
  }
  return sum;
}

// Miller backward recurrence normalized by J0 + 2 sum_k J_{2k} = 1.
void miller(long double x, long double& j0, long double& j1) {
  const int start = 2 * ((static_cast<int>(x) + 60) / 2);
  long double next = 0.0L;      // J_{k+1}
  long double cur = 1e-30L;     // J_k
  long double even_sum = 0.0L;  // 2 * (J_2 + J_4 + ...)
  long double order_one = 0.0L;
  for (int k = start; k > 0; --k) {
    const long double prev = (2.0L * k / x) * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    const int order = k - 1;
    if (order == 1) order_one = cur;
    if (order > 0 && order % 2 == 0) even_sum += 2.0L * cur;
    if (std::fabs(cur) > 1e300L) {
      cur *= 1e-300L;
      next *= 1e-300L;
      even_sum *= 1e-300L;
      order_one *= 1e-300L;
    }
  }
  const long double norm = cur + even_sum;
  j0 = cur / norm;
  j1 = order_one / norm;
}

// Hankel asymptotic expansion, used only far outside the required range.
double hankel(int order, double x) {
  const double mu = 4.0 * order * order;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1e300;
  for (int k = 1; k < 60; ++k) {
    term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    if (std::fabs(term) > last) break;
    last = std::fabs(term);
    const int phase = k % 4;
    if (phase == 1) q += term;
    else if (phase == 2) p -= term;
    else if (phase == 3) q -= term;
    else p += term;
  }
  const double chi = x - (0.5 * order + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  const double ax = std::fabs(x);
  if (ax <= kSeriesLimit) return static_cast<double>(series_j0(ax));
  if (ax <= kMillerLimit) {
    long double j0 = 0.0L;
    long double j1 = 0.0L;
    miller(ax, j0, j1);
    return static_cast<double>(j0);
  }
  return hankel(0, ax);
}

double bessel_j1(double x) {
  const double ax = std::fabs(x);
  const double sign = x < 0.0 ? -1.0 : 1.0;
  if (ax <= kSeriesLimit) return sign * static_cast<double>(series_j1(ax));
  if (ax <= kMillerLimit) {
    long double j0 = 0.0L;
    long double j1 = 0.0L;
    miller(ax, j0, j1);
    return sign * static_cast<double>(j1);
  }
  return sign * hankel(1, ax);
}

QuadratureRule gauss_legendre(int points, double a, double b) {
  if (points < 1) throw InvalidArgument("gauss_legendre: points must be positive");
  QuadratureRule rule;
  rule.lower = a;
  rule.upper = b;
  rule.exactness_degree = 2 * points - 1;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < points; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (points == 1) p0 = 1.0;
      dp = points * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    rule.nodes[points - 1 - i] = mid + half * z;
    rule.weights[points - 1 - i] = 2.0 * half / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int points) {
  if (panels < 1) throw InvalidArgument("composite_gauss_legendre: panels must be positive");
  const QuadratureRule base = gauss_legendre(points, 0.0, 1.0);
  QuadratureRule rule;
  rule.lower = a;
  rule.upper = b;
  rule.exactness_degree = base.exactness_degree;
  const double width = (b - a) / panels;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * points);
  rule.weights.reserve(static_cast<std::size_t>(panels) * points);
  for (int p = 0; p < panels; ++p) {
    const double left = a + p * width;
    for (int i = 0; i < points; ++i) {
      rule.nodes.push_back(left + width * base.nodes[i]);
      rule.weights.push_back(width * base.weights[i]);
    }
  }
  return rule;
}

const QuadratureRule& default_rule() {
  static const QuadratureRule rule = composite_gauss_legendre(0.0, 1.0, 32, 8);
  return rule;
}

QuadratureRule log_substitution_rule(double s_max, int panels, int points) {
  const QuadratureRule s_rule = composite_gauss_legendre(0.0, s_max, panels, points);
  QuadratureRule rule;
  rule.lower = 0.0;
  rule.upper = 1.0;
  rule.exactness_degree = -1;
  rule.nodes.resize(s_rule.size());
  rule.weights.resize(s_rule.size());
  // Reverse so that nodes increase in t.
  for (std::size_t i = 0; i < s_rule.size(); ++i) {
    const std::size_t j = s_rule.size() - 1 - i;
    const double t = std::exp(-0.5 * s_rule.nodes[j]);
    rule.nodes[i] = t;
    rule.weights[i] = 0.5 * t * s_rule.weights[j];
  }
  return rule;
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

namespace {

const QuadratureRule& unit_gl8() {
  static const QuadratureRule rule = gauss_legendre(8, 0.0, 1.0);
  return rule;
}

double gl8(const std::function<double(double)>& f, double a, double b) {
  const QuadratureRule& base = unit_gl8();
  double sum = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) sum += base.weights[i] * f(a + (b - a) * base.nodes[i]);
  return (b - a) * sum;
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl8(f, a, mid);
  const double right = gl8(f, mid, b);
  const double refined = left + right;
  const double diff = std::fabs(refined - whole);
  // Below the rounding floor, further halving only chases noise.
  if (depth <= 0 || !std::isfinite(refined) || diff <= tol ||
      diff <= 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(refined))
    return refined;
  return adaptive_step(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol) {
  const double coarse = gl8(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::fabs(coarse));
  return adaptive_step(f, a, b, coarse, tol, 40);
}

double integrate_half_line(const std::function<double(double)>& F, double s_max,
                           double rel_tol) {
  double total = 0.0;
  double left = 0.0;
  double width = 1.0;
  int quiet = 0;
  while (left < s_max) {
    const double right = std::min(left + width, s_max);
    const double piece = integrate_adaptive(F, left, right, std::max(1e-300, 1e-3 * rel_tol * std::fabs(total)), 1e-14);
    total += piece;
    if (std::fabs(piece) <= rel_tol * std::fabs(total) && left >= 16.0) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    left = right;
    if (left >= 2.0) width = std::min(2.0 * width, 64.0);
  }
  return total;
}

double first_zero_j0() {
  double lo = 2.0;
  double hi = 3.0;
  if (!(bessel_j0(lo) > 0.0 && bessel_j0(hi) < 0.0))
    throw NumericError("first_zero_j0: no sign change of J0 on [2, 3]");
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j0(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 20; ++it) {
    const double dx = bessel_j0(x) / bessel_j1(x);  // J0' = -J1
    x += dx;
    if (std::fabs(dx) < 1e-16 * x) break;
  }
  return x;
}

double EigenPair::profile(double r) const {
  if (r >= 1.0) return 0.0;
  return norm_constant * bessel_j0(j01 * r);
}

double EigenPair::derivative(double r) const {
  return -norm_constant * j01 * bessel_j1(j01 * r);
}

const EigenPair& first_eigenpair() {
  static const EigenPair pair = [] {
    EigenPair e;
    e.j01 = first_zero_j0();
    e.lambda1 = e.j01 * e.j01;
    e.norm_constant = 1.0 / (std::sqrt(std::numbers::pi) * e.j01 * bessel_j1(e.j01));
    e.phi1_at_0 = e.norm_constant;
    return e;
  }();
  return pair;
}

}  // namespace mhl
