#pragma once

#include <functional>

// Adaptive quadrature oracles. These never touch the grid or the
// Gamma-function closed forms; they exist to cross-check them.

namespace hjcrit::oracle {

/// ∫_0^∞ f(r) dr (double-exponential rule, tolerates endpoint singularities).
double integrate_half_line(const std::function<double(double)>& f);

/// ∫_{-∞}^{∞} f(x) dx, split at 0.
double integrate_real_line(const std::function<double(double)>& f);

/// (∫ |∇(a G)|^q dξ)^{1/q} by direct adaptive quadrature: over ℝ for N = 1,
/// radially for N = 2.
double gradient_norm(int dim, double q, double amplitude = 1.0);

}  // namespace hjcrit::oracle
