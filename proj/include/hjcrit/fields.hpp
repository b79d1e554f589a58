#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hjcrit {

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform tensor grid on [-L, L]^N, N in {1, 2}.
///
/// Samples are stored lexicographically with axis 0 varying slowest, so the
/// flat index of (i, j) in 2-D is i * n + j. Quadrature weights are the
/// tensor-product trapezoid weights.
class Grid {
 public:
  Grid(int dim, double half_width, int points_per_axis);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int points_per_axis() const { return n_; }
  double spacing() const { return h_; }
  std::size_t size() const { return size_; }

  /// Axis coordinate -L + i*h. The middle node is exactly 0.
  double coordinate(int i) const;

  /// Per-axis indices of a flat sample index.
  std::array<int, 2> axis_indices(std::size_t flat) const;
  std::size_t flat_index(int i, int j = 0) const;

  /// Physical position of a sample (second component is 0 in 1-D).
  std::array<double, 2> point(std::size_t flat) const;
  double radius_squared(std::size_t flat) const;

  bool on_boundary(std::size_t flat) const;
  double quadrature_weight(std::size_t flat) const;

  /// Distance in flat index between neighbours along an axis.
  std::size_t stride(int axis) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  double half_width_;
  int n_;
  double h_;
  std::size_t size_;
};

Grid build_grid(int dim, double half_width, int points_per_axis);

/// Sampled function on a Grid.
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid);
  ScalarField(const Grid& grid, std::vector<double> values);

  /// Samples fn at every grid point; fn receives (x0, x1) with x1 = 0 in 1-D.
  static ScalarField from_function(const Grid& grid,
                                   const std::function<double(double, double)>& fn);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  double max_value() const;
  double min_value() const;
  double sup_norm() const;
  bool all_finite() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double alpha);
  /// this += alpha * other
  ScalarField& add_scaled(double alpha, const ScalarField& other);

  /// Sets every boundary sample to 0.
  void zero_boundary();

 private:
  void require_same_grid(const ScalarField& other) const;

  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double alpha, ScalarField f);
ScalarField operator*(ScalarField f, double alpha);
ScalarField abs(ScalarField f);

/// Weight exponent m of the spaces L^2_m and H^1_m; requires m > N/2.
class WeightParams {
 public:
  WeightParams(double m, int dim);

  double m() const { return m_; }
  int dim() const { return dim_; }

  /// 1 + |xi|^{2m}
  double weight(double radius_squared) const;

 private:
  double m_;
  int dim_;
};

}  // namespace hjcrit
