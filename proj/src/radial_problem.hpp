#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "ascent.hpp"
#include "mhl/fields.hpp"
#include "mhl/transform.hpp"

namespace mhl::detail {

// Discrete radial problem on the free nodes i < N; the stiffness A has
// E(v) = v^T A v = sum_k c_k (v_{k+1} - v_k)^2, c_k = 2 pi int_{t_k}^{t_{k+1}} t dt / h^2.
class RadialProblem {
 public:
  RadialProblem(const RadialGrid& grid, const Params& p) : grid_(grid), p_(p), n_(grid.cells()) {
    const double h = grid.spacing();
    const auto faces = grid.face_weights();
    c_.resize(n_);
    for (int k = 0; k < n_; ++k) c_[k] = (2.0 * std::numbers::pi) * faces[k] / (h * h);
    // Thomas factorization of the tridiagonal stiffness on the free nodes.
    diag_.resize(n_);
    for (int i = 0; i < n_; ++i) diag_[i] = c_[i] + (i > 0 ? c_[i - 1] : 0.0);
    inv_pivot_.resize(n_);
    mult_.resize(n_);
    double pivot = diag_[0];
    inv_pivot_[0] = 1.0 / pivot;
    for (int i = 1; i < n_; ++i) {
      mult_[i] = -c_[i - 1] * inv_pivot_[i - 1];
      pivot = diag_[i] - mult_[i] * (-c_[i - 1]);
      inv_pivot_[i] = 1.0 / pivot;
    }
  }

  long double functional(const Vec& v) const {
    const auto w = grid_.cell_weights();
    const double a = p_.eps * p_.gamma;
    // Extended accumulation: near the maximum, accepted steps change the
    // level by less than a double ulp of the sum.
    long double s = 0.0L;
    for (int i = 0; i < n_; ++i) {
      const double x = a * v[i] * v[i];
      check_exponent(x, "radial_functional");
      s += static_cast<long double>(w[i]) * std::expm1(static_cast<long double>(x));
    }
    return 2.0L * std::numbers::pi_v<long double> * p_.eps * s;
  }

  void gradient(const Vec& v, Vec& g) const {
    const auto w = grid_.cell_weights();
    const double a = p_.eps * p_.gamma;
    const double scale = 4.0 * std::numbers::pi * p_.eps * p_.eps * p_.gamma;
    for (int i = 0; i < n_; ++i) {
      const double x = a * v[i] * v[i];
      check_exponent(x, "radial_gradient");
      g[i] = scale * w[i] * v[i] * std::exp(x);
    }
    g[n_] = 0.0;
  }

  void lift(const Vec& rhs, Vec& out) const {
    out.resize(rhs.size());
    out[0] = rhs[0];
    for (int i = 1; i < n_; ++i) out[i] = rhs[i] - mult_[i] * out[i - 1];
    out[n_ - 1] *= inv_pivot_[n_ - 1];
    for (int i = n_ - 2; i >= 0; --i) out[i] = (out[i] + c_[i] * out[i + 1]) * inv_pivot_[i];
    out[n_] = 0.0;
  }

  double inner(const Vec& a, const Vec& b) const {
    double s = 0.0;
    for (int k = 0; k < n_; ++k) s += c_[k] * (a[k + 1] - a[k]) * (b[k + 1] - b[k]);
    return s;
  }

  // out = A v
  void apply(const Vec& v, Vec& out) const {
    out.assign(v.size(), 0.0);
    for (int k = 0; k < n_; ++k) {
      const double f = c_[k] * (v[k + 1] - v[k]);
      out[k] -= f;
      out[k + 1] += f;
    }
    out[n_] = 0.0;
  }

 private:
  const RadialGrid& grid_;
  Params p_;
  int n_;
  std::vector<double> c_;
  std::vector<double> diag_;
  std::vector<double> inv_pivot_;
  std::vector<double> mult_;
};

}  // namespace mhl::detail
