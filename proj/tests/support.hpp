#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace testing_support {

// High-precision reference values (mpmath, 30 digits), independent of the library.
inline constexpr double kJ01 = 2.40482555769577276862;
inline constexpr double kLambda1 = 5.78318596294678452118;
inline constexpr double kPhi1AtZero = 0.451908718556938859534;
inline constexpr double kJ1AtJ01 = 0.519147497289466;
inline constexpr double kPhi1Quartic = 0.0199707728908691336724;
inline constexpr double kGammaStar = 5.55506675869821602550;
inline constexpr double kLimitGamma1 = -0.0909682037407094661936;
inline constexpr double kExpSquareIntegral = 1.46265174590718160880;
inline constexpr double kCertificateLhs = 2.79444084228458207363;
inline constexpr double kCertificateRhs = 2.76664110449031883070;

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// Central difference of f(x + s d) at s = 0.
inline double central_difference(const std::function<double(double)>& f, double delta) {
  return (f(delta) - f(-delta)) / (2.0 * delta);
}

// Richardson-combined central differences, O(delta^4).
inline double central_difference4(const std::function<double(double)>& f, double delta) {
  const double d1 = central_difference(f, delta);
  const double d2 = central_difference(f, 0.5 * delta);
  return (4.0 * d2 - d1) / 3.0;
}

// Smallest eigenvalue of -(1/r)(r u')' on [0, 1], u(1) = 0, from a
// vertex-centred finite-volume discretization and inverse iteration.
inline double fd_radial_eigenvalue(int n) {
  const double h = 1.0 / n;
  // Unknowns u_0..u_{n-1} at r_i = i h; u_n = 0.
  std::vector<double> diag(n), off(n, 0.0), mass(n);
  for (int i = 0; i < n; ++i) {
    const double rl = i == 0 ? 0.0 : (i - 0.5) * h;
    const double rr = (i + 0.5) * h;
    diag[i] = (rl + rr) / h;
    off[i] = -rr / h;  // coupling i, i+1
    mass[i] = i == 0 ? h * h / 8.0 : i * h * h;
  }
  std::vector<double> u(n, 1.0), b(n), c(n), d(n);
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    for (int i = 0; i < n; ++i) b[i] = mass[i] * u[i];
    // Thomas on the symmetric tridiagonal (diag, off).
    c[0] = off[0] / diag[0];
    d[0] = b[0] / diag[0];
    for (int i = 1; i < n; ++i) {
      const double m = diag[i] - off[i - 1] * c[i - 1];
      c[i] = off[i] / m;
      d[i] = (b[i] - off[i - 1] * d[i - 1]) / m;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num += u[i] * mass[i] * u[i];
      den += u[i] * mass[i] * x[i];
    }
    const double next = num / den;
    double norm = 0.0;
    for (double v : x) norm = std::max(norm, std::fabs(v));
    for (int i = 0; i < n; ++i) u[i] = x[i] / norm;
    if (std::fabs(next - lambda) < 1e-15 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return lambda;
}

}  // namespace testing_support
