#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mhl {

/// Fritsch-Carlson monotone piecewise cubic Hermite interpolant.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  /// x strictly increasing, same length as y (>= 2). If `left_slope` is
  /// finite it replaces the one-sided end slope at x.front().
  MonotoneCubic(std::vector<double> x, std::vector<double> y, double left_slope);

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] double derivative(double x) const;

 private:
  [[nodiscard]] std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

/// Cell-centered grid on [0, 1] in the radial variable.
///
/// `cells` free nodes t_i = (i + 1/2) h, i < N, plus the boundary node
/// t_N = 1, with h = 1/(N + 1/2). Control volume of node i is
/// [i h, (i + 1) h] for i < N and [N h, 1] for the boundary node; "faces"
/// are the intervals [t_k, t_{k+1}] for k < N.
class RadialGrid {
 public:
  explicit RadialGrid(int cells = 2048);

  [[nodiscard]] int cells() const { return cells_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] double spacing() const { return h_; }
  [[nodiscard]] double node(std::size_t i) const { return nodes_[i]; }
  [[nodiscard]] std::span<const double> nodes() const { return nodes_; }

  /// Exact integral of t^p over each control volume (p > -1).
  [[nodiscard]] std::vector<double> cell_moments(double p) const;
  /// Exact integral of t^p over each face interval [t_k, t_{k+1}].
  [[nodiscard]] std::vector<double> face_moments(double p) const;

  /// cell_moments(1), cached.
  [[nodiscard]] std::span<const double> cell_weights() const { return cell_w_; }
  /// face_moments(1), cached.
  [[nodiscard]] std::span<const double> face_weights() const { return face_w_; }

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) { return a.cells_ == b.cells_; }

 private:
  int cells_;
  double h_;
  std::vector<double> nodes_;
  std::vector<double> cell_w_;
  std::vector<double> face_w_;
};

/// Samples of a radial function on a RadialGrid; the boundary value is 0.
class RadialField {
 public:
  RadialField() = default;
  explicit RadialField(RadialGrid grid);
  /// values.size() must equal grid.size(); the last entry is forced to 0.
  RadialField(RadialGrid grid, std::vector<double> values);

  [[nodiscard]] const RadialGrid& grid() const { return grid_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::vector<double>& mutable_values() { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

  /// Value at t = 0 by quadratic-in-t^2 extrapolation from the first two nodes.
  [[nodiscard]] double pole_value() const;
  /// Interpolated value at any t in [0, 1]. Builds the interpolant on every
  /// call; hold on to interpolant() when evaluating many points.
  [[nodiscard]] double operator()(double t) const;
  /// Interpolant (monotone cubic through the pole and all nodes).
  [[nodiscard]] MonotoneCubic interpolant() const;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
};

/// Tensor grid: RadialGrid in t times M uniform angles on [0, 2 pi).
class DiskGrid {
 public:
  DiskGrid(int radial_cells = 512, int angles = 128);

  [[nodiscard]] const RadialGrid& radial() const { return radial_; }
  [[nodiscard]] int angles() const { return angles_; }
  [[nodiscard]] double dtheta() const { return dtheta_; }
  [[nodiscard]] double theta(int j) const { return j * dtheta_; }
  /// Number of stored values: (N + 1) * M, t-major.
  [[nodiscard]] std::size_t size() const { return radial_.size() * static_cast<std::size_t>(angles_); }

  friend bool operator==(const DiskGrid& a, const DiskGrid& b) {
    return a.radial_ == b.radial_ && a.angles_ == b.angles_;
  }

 private:
  RadialGrid radial_;
  int angles_;
  double dtheta_;
};

/// Samples on a DiskGrid stored t-major (index i * M + j); row N is the
/// boundary and is identically zero. Angular periodicity is by index mod M.
class DiskField {
 public:
  DiskField() = default;
  explicit DiskField(DiskGrid grid);
  DiskField(DiskGrid grid, std::vector<double> values);

  [[nodiscard]] const DiskGrid& grid() const { return grid_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::vector<double>& mutable_values() { return values_; }
  [[nodiscard]] double at(std::size_t i, int j) const;

  /// theta-mean of each ring, as a radial field.
  [[nodiscard]] RadialField theta_mean() const;
  /// Common value at t = 0 (extrapolated from the theta-means of the first rings).
  [[nodiscard]] double pole_value() const;

  /// Radial field copied into every angle.
  static DiskField from_radial(const RadialField& radial, int angles);

 private:
  DiskGrid grid_;
  std::vector<double> values_;
};

}  // namespace mhl
