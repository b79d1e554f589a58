#include "hjcrit/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hjcrit {

Grid::Grid(int dim, double half_width, int points_per_axis)
    : dim_(dim), half_width_(half_width), n_(points_per_axis) {
  if (dim != 1 && dim != 2) {
    throw InvalidArgument("grid dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (!(half_width >= 8.0)) {
    std::ostringstream msg;
    msg << "grid half_width must be >= 8 (Gaussian tail truncation), got " << half_width;
    throw InvalidArgument(msg.str());
  }
  if (points_per_axis < 3 || points_per_axis % 2 == 0) {
    throw InvalidArgument("points_per_axis must be odd and >= 3 so that 0 is a node, got " +
                          std::to_string(points_per_axis));
  }
  h_ = 2.0 * half_width / (points_per_axis - 1);
  size_ = dim == 1 ? static_cast<std::size_t>(n_)
                   : static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
}

double Grid::coordinate(int i) const {
  // Mirror the upper half so the grid is exactly symmetric about 0.
  const int mid = (n_ - 1) / 2;
  if (i > mid) return -coordinate(n_ - 1 - i);
  if (i == mid) return 0.0;
  return -half_width_ + i * h_;
}

std::array<int, 2> Grid::axis_indices(std::size_t flat) const {
  if (dim_ == 1) return {static_cast<int>(flat), 0};
  return {static_cast<int>(flat / n_), static_cast<int>(flat % n_)};
}

std::size_t Grid::flat_index(int i, int j) const {
  if (dim_ == 1) return static_cast<std::size_t>(i);
  return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j);
}

std::array<double, 2> Grid::point(std::size_t flat) const {
  const auto idx = axis_indices(flat);
  if (dim_ == 1) return {coordinate(idx[0]), 0.0};
  return {coordinate(idx[0]), coordinate(idx[1])};
}

double Grid::radius_squared(std::size_t flat) const {
  const auto p = point(flat);
  return p[0] * p[0] + p[1] * p[1];
}

bool Grid::on_boundary(std::size_t flat) const {
  const auto idx = axis_indices(flat);
  const auto edge = [this](int i) { return i == 0 || i == n_ - 1; };
  if (dim_ == 1) return edge(idx[0]);
  return edge(idx[0]) || edge(idx[1]);
}

double Grid::quadrature_weight(std::size_t flat) const {
  const auto idx = axis_indices(flat);
  const auto axis_weight = [this](int i) { return (i == 0 || i == n_ - 1) ? 0.5 * h_ : h_; };
  if (dim_ == 1) return axis_weight(idx[0]);
  return axis_weight(idx[0]) * axis_weight(idx[1]);
}

std::size_t Grid::stride(int axis) const {
  if (dim_ == 1 || axis == 1) return 1;
  return static_cast<std::size_t>(n_);
}

Grid build_grid(int dim, double half_width, int points_per_axis) {
  return Grid(dim, half_width, points_per_axis);
}

ScalarField::ScalarField(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("field has " + std::to_string(values_.size()) +
                          " samples, grid expects " + std::to_string(grid_.size()));
  }
}

ScalarField ScalarField::from_function(const Grid& grid,
                                       const std::function<double(double, double)>& fn) {
  ScalarField f(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto p = grid.point(k);
    f.values_[k] = fn(p[0], p[1]);
  }
  return f;
}

double ScalarField::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void ScalarField::require_same_grid(const ScalarField& other) const {
  if (!(grid_ == other.grid_)) throw InvalidArgument("fields live on different grids");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double alpha) {
  for (double& v : values_) v *= alpha;
  return *this;
}

ScalarField& ScalarField::add_scaled(double alpha, const ScalarField& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += alpha * other.values_[k];
  return *this;
}

void ScalarField::zero_boundary() {
  const int n = grid_.points_per_axis();
  if (grid_.dim() == 1) {
    values_.front() = 0.0;
    values_.back() = 0.0;
    return;
  }
  for (int i = 0; i < n; ++i) {
    values_[grid_.flat_index(0, i)] = 0.0;
    values_[grid_.flat_index(n - 1, i)] = 0.0;
    values_[grid_.flat_index(i, 0)] = 0.0;
    values_[grid_.flat_index(i, n - 1)] = 0.0;
  }
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double alpha, ScalarField f) { return f *= alpha; }
ScalarField operator*(ScalarField f, double alpha) { return f *= alpha; }

ScalarField abs(ScalarField f) {
  for (double& v : f.values()) v = std::abs(v);
  return f;
}

WeightParams::WeightParams(double m, int dim) : m_(m), dim_(dim) {
  if (dim < 1) throw InvalidArgument("weight dimension must be >= 1");
  if (!(m > 0.5 * dim)) {
    std::ostringstream msg;
    msg << "weight exponent m must exceed N/2 = " << 0.5 * dim << ", got " << m;
    throw InvalidArgument(msg.str());
  }
}

double WeightParams::weight(double radius_squared) const {
  return 1.0 + std::pow(radius_squared, m_);
}

}  // namespace hjcrit
