#pragma once

#include "hjcrit/fields.hpp"

namespace hjcrit {

/// Constants attached to the critical exponent in dimension N.
struct CriticalData {
  int dim;
  double q_star;       ///< (N+2)/(N+1)
  double grad_G_norm;  ///< ‖∇G‖ in L^{q★}
  double c_mass;       ///< ‖∇G‖^{q★}, the mass dissipation constant
  double m_star;       ///< (N+1)^{N+1} ‖∇G‖^{-(N+2)}
};

/// Critical exponent (N+2)/(N+1). Rejects dim < 1.
double q_star(int dim);

/// G(ξ) = (4π)^{-N/2} exp(-|ξ|²/4)
double gaussian_value(double radius_squared, int dim);

ScalarField gaussian_profile(const Grid& grid);

/// Heat kernel g(t, x) = t^{-N/2} G(x / √t). Rejects t <= 0.
ScalarField heat_self_similar(double t, const Grid& grid);

/// G(ξ)(1 + ε tanh(ξ₁/2)): unit mass, first moment ∝ ε, nonnegative for |ε| <= 1.
ScalarField gaussian_plus_moment(double epsilon, const Grid& grid);

/// Closed form of ‖∇G‖_{L^{q★}}.
///
/// With |∇G(ξ)| = (|ξ|/2) G(ξ) the integral is radial:
///   ∫|∇G|^q = (4π)^{-Nq/2} 2^{-q} |S^{N-1}| ∫_0^∞ r^{q+N-1} e^{-q r²/4} dr
///           = (4π)^{-Nq/2} 2^{-q} |S^{N-1}| Γ((q+N)/2) / (2 (q/4)^{(q+N)/2}),
/// with |S^{N-1}| = 2 π^{N/2} / Γ(N/2). Supports N in {1, 2}.
double grad_G_qstar_norm(int dim);

/// (N+1)^{N+1} ‖∇G‖^{-(N+2)}
double m_star(int dim);

/// All constants for one dimension, computed from the closed form.
CriticalData critical_data(int dim);

}  // namespace hjcrit
