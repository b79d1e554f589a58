#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hjcrit/fields.hpp"
#include "hjcrit/gaussian.hpp"
#include "hjcrit/similarity.hpp"

namespace hjcrit {

/// The tail fit could not decide (horizon too short or too few samples).
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PhysicalState {
  double t = 0.0;
  ScalarField field;
  double exponent_q = 1.5;
};

/// Δu - |∇u|^q. Boundary samples are 0.
ScalarField rhs_physical(const PhysicalState& u, bool nonlinear = true);

struct PhysicalRecord {
  double t = 0.0;
  double mass = 0.0;
  double l1 = 0.0;
  double linf = 0.0;
  double grad_linf = 0.0;
  double min_value = 0.0;
  long step_index = 0;
};

struct PhysicalTrajectory {
  std::vector<PhysicalRecord> records;
  std::vector<PhysicalState> snapshots;
  PhysicalState final_state;
  std::vector<std::string> warnings;
};

/// Integrates ∂t u = Δu - |∇u|^q from t = 0 (or u0.t) to t_end with the
/// scheme, dt, record_every and nonlinearity (full or off) of cfg;
/// cfg.tau_end is ignored.
PhysicalTrajectory evolve_physical(const ScalarField& u0, double q, double t_end,
                                   const SolverConfig& cfg);
PhysicalTrajectory evolve_physical(const PhysicalState& start, double t_end,
                                   const SolverConfig& cfg);

/// τ = ln(1+t), v(τ, ξ) = (1+t)^{N/2} u(t, ξ √(1+t)), sampled on xi_grid by
/// (bi)linear interpolation. Throws InvalidArgument if a target point falls
/// outside the physical grid.
SimilarityState to_similarity(const PhysicalState& u, const Grid& xi_grid);

/// Inverse map onto x_grid; points beyond the similarity domain are 0.
PhysicalState from_similarity(const SimilarityState& v, const Grid& x_grid, double exponent_q);

/// t^{N/2(1-1/p)} (ln t)^{N+1} ‖u(t) - M★ (ln t)^{-(N+1)} g(t)‖_{L^p}. Rejects t <= 1.
double asymptotic_law_error(const PhysicalState& u, double p, const CriticalData& crit);

struct ProbeHorizon {
  double t_physical = 10.0;  ///< physical leg on u0's grid, t in [0, t_physical]
  double tau_end = 40.0;     ///< similarity continuation up to this τ
  int similarity_points = 257;
  double similarity_half_width = 12.0;
  int record_every = 200;  ///< similarity-leg record spacing in steps
  bool nonlinear = true;
};

struct L1LimitProbe {
  double plateau_estimate = 0.0;
  bool decaying = false;
  double tail_slope = 0.0;  ///< d ln‖u‖_{L¹} / dτ fitted on the tail
  std::vector<double> tau;
  std::vector<double> mass;
  std::vector<std::string> invariant_violations;
};

/// Decides whether ‖u(t)‖_{L¹} tends to a positive limit: evolves physically
/// on u0's grid up to t_physical, continues in similarity variables to tau_end, then fits
/// ln‖u‖_{L¹} against τ over the last 25% of samples. A fitted slope below
/// 1e-3 in magnitude is flat (plateau); otherwise the mass is decaying.
L1LimitProbe l1_limit_probe(const ScalarField& u0, double q, const ProbeHorizon& horizon);

}  // namespace hjcrit
