#include "hjcrit/operators.hpp"

#include <cmath>

namespace hjcrit {

namespace {

// Derivative along one axis. Works on lines of the tensor grid.
void axis_derivative(const ScalarField& f, int axis, ScalarField& out) {
  const Grid& g = f.grid();
  const int n = g.points_per_axis();
  const double inv2h = 0.5 / g.spacing();
  const std::size_t s = g.stride(axis);
  const std::size_t lines = g.size() / static_cast<std::size_t>(n);
  const auto v = f.values();
  auto d = out.values();

  for (std::size_t line = 0; line < lines; ++line) {
    // First sample of this line.
    std::size_t base;
    if (g.dim() == 1) {
      base = 0;
    } else if (axis == 0) {
      base = line;  // column j = line
    } else {
      base = line * static_cast<std::size_t>(n);
    }
    for (int i = 1; i < n - 1; ++i) {
      const std::size_t k = base + i * s;
      d[k] = (v[k + s] - v[k - s]) * inv2h;
    }
    const std::size_t first = base;
    const std::size_t last = base + (n - 1) * s;
    d[first] = (-3.0 * v[first] + 4.0 * v[first + s] - v[first + 2 * s]) * inv2h;
    d[last] = (3.0 * v[last] - 4.0 * v[last - s] + v[last - 2 * s]) * inv2h;
  }
}

}  // namespace

std::vector<ScalarField> gradient(const ScalarField& f) {
  std::vector<ScalarField> grad;
  grad.reserve(f.grid().dim());
  for (int axis = 0; axis < f.grid().dim(); ++axis) {
    ScalarField d(f.grid());
    axis_derivative(f, axis, d);
    grad.push_back(std::move(d));
  }
  return grad;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  const int n = g.points_per_axis();
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  ScalarField out(g);
  const auto v = f.values();
  auto r = out.values();

  if (g.dim() == 1) {
    for (int i = 1; i < n - 1; ++i) r[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv_h2;
    return out;
  }
  const std::size_t sn = static_cast<std::size_t>(n);
  for (int i = 1; i < n - 1; ++i) {
    for (int j = 1; j < n - 1; ++j) {
      const std::size_t k = i * sn + j;
      r[k] = (v[k + sn] + v[k - sn] + v[k + 1] + v[k - 1] - 4.0 * v[k]) * inv_h2;
    }
  }
  return out;
}

ScalarField apply_L(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out = laplacian(f);
  const auto grad = gradient(f);
  const double half_dim = 0.5 * g.dim();
  auto r = out.values();
  const auto v = f.values();
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.on_boundary(k)) continue;
    const auto p = g.point(k);
    double drift = p[0] * grad[0][k];
    if (g.dim() == 2) drift += p[1] * grad[1][k];
    r[k] += 0.5 * drift + half_dim * v[k];
  }
  return out;
}

ScalarField gradient_power(const ScalarField& f, double q) {
  const Grid& g = f.grid();
  const auto grad = gradient(f);
  ScalarField out(g);
  auto r = out.values();
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.on_boundary(k)) continue;
    double norm2 = grad[0][k] * grad[0][k];
    if (g.dim() == 2) norm2 += grad[1][k] * grad[1][k];
    r[k] = std::pow(norm2, 0.5 * q);
  }
  return out;
}

}  // namespace hjcrit
