#pragma once

#include <vector>

namespace hjcrit {

/// Projected mass of the one-dimensional center-manifold flow.
struct ReducedState {
  double tau;
  double mass;
  double c;  ///< dissipation constant
  int dim;
};

/// dM/dτ = -c M^{q★}. Rejects negative mass.
double ode_rhs(const ReducedState& s);
/// Same with an arbitrary exponent q (exploratory use).
double ode_rhs(const ReducedState& s, double q);

/// Closed-form solution of dM/dτ = -c M^{q★}. Since q★ - 1 = 1/(N+1),
/// separation of variables gives
///   M(τ) = (M0^{-1/(N+1)} + c τ/(N+1))^{-(N+1)}.
double exact_solution(double mass0, double c, double tau, int dim);

/// Classical RK4 with fixed step dt <= 1e-2; the final step is shortened to
/// land on tau_end. Rejects mass0 < 0.
std::vector<ReducedState> integrate_reduced(double mass0, double c, double tau_end, double dt,
                                            int dim);

/// Limit of τ^{N+1} M(τ): ((q★-1) c)^{-(N+1)} = ((N+1)/c)^{N+1}.
double reduced_asymptote(double c, int dim);

/// τ^{N+1} M(τ) / limit - 1, evaluated as (1 + (N+1) M0^{-1/(N+1)}/(cτ))^{-(N+1)} - 1.
double asymptote_deviation(double mass0, double c, int dim, double tau);

}  // namespace hjcrit
