#include "mhl/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mhl/errors.hpp"

namespace mhl {
namespace {

// Integral of t^p over [a, b], 0 <= a < b, written to stay accurate when
// p + 1 is small.
double power_moment(double a, double b, double p) {
  const double q = p + 1.0;
  if (a == 0.0) {
    if (q <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(b, q) / q;
  }
  const double log_ratio = std::log(b / a);
  if (std::fabs(q) < 1e-300) return log_ratio;
  return std::pow(a, q) * std::expm1(q * log_ratio) / q;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y, double left_slope)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw InvalidArgument("MonotoneCubic: need >= 2 matching points");
  std::vector<double> delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dx = x_[k + 1] - x_[k];
    if (!(dx > 0.0)) throw InvalidArgument("MonotoneCubic: abscissae must increase strictly");
    delta[k] = (y_[k + 1] - y_[k]) / dx;
  }
  m_.assign(n, 0.0);
  if (n == 2) {
    m_[0] = m_[1] = delta[0];
  } else {
    // Weighted harmonic mean at interior points (Fritsch-Butland form used by PCHIP).
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double h0 = x_[k] - x_[k - 1];
      const double h1 = x_[k + 1] - x_[k];
      const double w1 = 2.0 * h1 + h0;
      const double w2 = h1 + 2.0 * h0;
      m_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
      double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
      if (m * d0 <= 0.0) m = 0.0;
      else if (d0 * d1 <= 0.0 && std::fabs(m) > 3.0 * std::fabs(d0)) m = 3.0 * d0;
      return m;
    };
    m_[0] = end_slope(x_[1] - x_[0], x_[2] - x_[1], delta[0], delta[1]);
    m_[n - 1] = end_slope(x_[n - 1] - x_[n - 2], x_[n - 2] - x_[n - 3], delta[n - 2], delta[n - 3]);
  }
  if (std::isfinite(left_slope)) m_[0] = left_slope;
}

std::size_t MonotoneCubic::segment(double x) const {
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t k = segment(x);
  const double h = x_[k + 1] - x_[k];
  const double s = (x - x_[k]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y_[k] + (s3 - 2 * s2 + s) * h * m_[k] +
         (-2 * s3 + 3 * s2) * y_[k + 1] + (s3 - s2) * h * m_[k + 1];
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t k = segment(x);
  const double h = x_[k + 1] - x_[k];
  const double s = (x - x_[k]) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * y_[k] + (-6 * s2 + 6 * s) * y_[k + 1]) / h +
         (3 * s2 - 4 * s + 1) * m_[k] + (3 * s2 - 2 * s) * m_[k + 1];
}

RadialGrid::RadialGrid(int cells) : cells_(cells) {
  if (cells < 2) throw InvalidArgument("RadialGrid: need at least 2 cells");
  h_ = 1.0 / (cells + 0.5);
  nodes_.resize(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i < cells; ++i) nodes_[i] = (i + 0.5) * h_;
  nodes_[cells] = 1.0;
  cell_w_ = cell_moments(1.0);
  face_w_ = face_moments(1.0);
}

std::vector<double> RadialGrid::cell_moments(double p) const {
  std::vector<double> m(size());
  for (int i = 0; i < cells_; ++i) m[i] = power_moment(i * h_, (i + 1) * h_, p);
  m[cells_] = power_moment(cells_ * h_, 1.0, p);
  return m;
}

std::vector<double> RadialGrid::face_moments(double p) const {
  std::vector<double> m(static_cast<std::size_t>(cells_));
  for (int k = 0; k < cells_; ++k) m[k] = power_moment(nodes_[k], nodes_[k + 1], p);
  return m;
}

RadialField::RadialField(RadialGrid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

RadialField::RadialField(RadialGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw InvalidArgument("RadialField: size does not match grid");
  values_.back() = 0.0;
}

double RadialField::pole_value() const {
  // v(t) ~ a + b t^2 through t0 = h/2 and t1 = 3h/2.
  return (9.0 * values_[0] - values_[1]) / 8.0;
}

MonotoneCubic RadialField::interpolant() const {
  std::vector<double> x(values_.size() + 1);
  std::vector<double> y(values_.size() + 1);
  x[0] = 0.0;
  y[0] = pole_value();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    x[i + 1] = grid_.node(i);
    y[i + 1] = values_[i];
  }
  return MonotoneCubic(std::move(x), std::move(y), 0.0);
}

double RadialField::operator()(double t) const {
  if (t >= 1.0) return 0.0;
  return interpolant()(std::max(t, 0.0));
}

DiskGrid::DiskGrid(int radial_cells, int angles) : radial_(radial_cells), angles_(angles) {
  if (angles < 4) throw InvalidArgument("DiskGrid: need at least 4 angles");
  dtheta_ = 2.0 * std::numbers::pi / angles;
}

DiskField::DiskField(DiskGrid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

DiskField::DiskField(DiskGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw InvalidArgument("DiskField: size does not match grid");
  const std::size_t last = grid_.radial().size() - 1;
  std::fill(values_.begin() + static_cast<std::ptrdiff_t>(last * grid_.angles()), values_.end(), 0.0);
}

double DiskField::at(std::size_t i, int j) const {
  const int m = grid_.angles();
  const int jj = ((j % m) + m) % m;
  return values_[i * m + jj];
}

RadialField DiskField::theta_mean() const {
  const std::size_t n = grid_.radial().size();
  const int m = grid_.angles();
  std::vector<double> mean(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += values_[i * m + j];
    mean[i] = s / m;
  }
  return RadialField(grid_.radial(), std::move(mean));
}

double DiskField::pole_value() const { return theta_mean().pole_value(); }

DiskField DiskField::from_radial(const RadialField& radial, int angles) {
  DiskGrid grid(radial.grid().cells(), angles);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < radial.size(); ++i)
    std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(i * angles), angles, radial[i]);
  return DiskField(std::move(grid), std::move(values));
}

}  // namespace mhl
