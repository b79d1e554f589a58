#include "hjcrit/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hjcrit {

namespace {

void require_supported_dim(int dim) {
  if (dim != 1 && dim != 2) {
    throw InvalidArgument("only dimensions 1 and 2 are supported, got " + std::to_string(dim));
  }
}

}  // namespace

double q_star(int dim) {
  if (dim < 1) throw InvalidArgument("q_star: dimension must be >= 1");
  return static_cast<double>(dim + 2) / static_cast<double>(dim + 1);
}

double gaussian_value(double radius_squared, int dim) {
  return std::pow(4.0 * std::numbers::pi, -0.5 * dim) * std::exp(-0.25 * radius_squared);
}

ScalarField gaussian_profile(const Grid& grid) {
  ScalarField f(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    f[k] = gaussian_value(grid.radius_squared(k), grid.dim());
  }
  return f;
}

ScalarField heat_self_similar(double t, const Grid& grid) {
  if (!(t > 0.0)) {
    std::ostringstream msg;
    msg << "heat_self_similar requires t > 0, got " << t;
    throw InvalidArgument(msg.str());
  }
  if (t == 1.0) return gaussian_profile(grid);
  ScalarField f(grid);
  const double amp = std::pow(t, -0.5 * grid.dim());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    f[k] = amp * gaussian_value(grid.radius_squared(k) / t, grid.dim());
  }
  return f;
}

ScalarField gaussian_plus_moment(double epsilon, const Grid& grid) {
  if (!(std::abs(epsilon) <= 1.0)) throw InvalidArgument("gaussian_plus_moment: |epsilon| must be <= 1");
  ScalarField f = gaussian_profile(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) f[k] *= 1.0 + epsilon * std::tanh(0.5 * grid.point(k)[0]);
  return f;
}

double grad_G_qstar_norm(int dim) {
  require_supported_dim(dim);
  const double n = dim;
  const double q = q_star(dim);
  const double pi = std::numbers::pi;
  const double sphere = 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
  const double a = q + n;
  const double radial = std::tgamma(0.5 * a) / (2.0 * std::pow(0.25 * q, 0.5 * a));
  const double integral = std::pow(4.0 * pi, -0.5 * n * q) * std::pow(2.0, -q) * sphere * radial;
  return std::pow(integral, 1.0 / q);
}

double m_star(int dim) {
  const double norm = grad_G_qstar_norm(dim);
  return std::pow(dim + 1.0, dim + 1.0) * std::pow(norm, -(dim + 2.0));
}

CriticalData critical_data(int dim) {
  CriticalData c{};
  c.dim = dim;
  c.q_star = q_star(dim);
  c.grad_G_norm = grad_G_qstar_norm(dim);
  c.c_mass = std::pow(c.grad_G_norm, c.q_star);
  c.m_star = m_star(dim);
  return c;
}

}  // namespace hjcrit
