#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hjcrit/fields.hpp"
#include "hjcrit/gaussian.hpp"

namespace hjcrit {

/// A time step blew up (non-finite values or growth beyond 1e6 × initial sup).
class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scheme { explicit_rk4, imex_euler };
enum class Nonlinearity { full, truncated, off };

std::string to_string(Scheme s);
std::string to_string(Nonlinearity n);

struct SolverConfig {
  std::optional<double> dt;  ///< defaults to h²/(6N)
  double tau_end = 15.0;
  Scheme scheme = Scheme::explicit_rk4;
  int record_every = 10;
  Nonlinearity nonlinearity = Nonlinearity::full;
  std::optional<double> exponent_q;  ///< defaults to q★(N)
  std::optional<double> weight_m;    ///< diagnostics weight exponent, defaults to (N+1)/2
  bool store_snapshots = false;
};

double default_dt(const Grid& grid);
/// dt actually used on this grid; validates the explicit stability bound
/// dt <= h²/(4N) for explicit_rk4 and record_every >= 1.
double resolve_dt(const SolverConfig& cfg, const Grid& grid);
double resolve_q(const SolverConfig& cfg, int dim);

/// Cutoff parameters of the truncated semiflow.
struct TruncationParams {
  TruncationParams(double rho, WeightParams weight);
  double rho;
  WeightParams weight;
};

struct SimilarityState {
  double tau = 0.0;
  ScalarField field;
};

/// χ_ρ(r) = χ(r/ρ²): 1 for r <= ρ², 0 for r >= 4ρ², quintic C² smoothstep
/// in s = (r/ρ² - 1)/3 in between. Rejects ρ outside (0, 1).
double cutoff_chi(double r, double rho);

/// Growth factor e^{κτ}, κ = (N+2 - q(N+1))/2, multiplying the absorption
/// term when the exponent is not critical (κ = 0 at q★).
double absorption_growth(double q, int dim, double tau);

/// 𝓛v - F(v) with F the full, truncated or disabled absorption term.
ScalarField rhs(const SimilarityState& v, const SolverConfig& cfg,
                const std::optional<TruncationParams>& trunc);

/// Coefficient actually multiplying |∇v|^q in rhs (cutoff, growth factor,
/// or 0 when the nonlinearity is off).
double absorption_coefficient(const SimilarityState& v, const SolverConfig& cfg,
                              const std::optional<TruncationParams>& trunc);

/// Stateful stepper; caches the implicit diffusion factorization for imex_euler.
class SimilarityIntegrator {
 public:
  SimilarityIntegrator(const Grid& grid, SolverConfig cfg, std::optional<TruncationParams> trunc);
  ~SimilarityIntegrator();
  SimilarityIntegrator(SimilarityIntegrator&&) noexcept;
  SimilarityIntegrator& operator=(SimilarityIntegrator&&) noexcept;

  const SolverConfig& config() const { return cfg_; }
  double dt() const { return dt_; }

  /// Advances by step_dt (<= the configured dt). Throws InstabilityError when
  /// the result is non-finite or exceeds 1e6 × reference_sup.
  SimilarityState step(const SimilarityState& v, double step_dt, double reference_sup) const;

 private:
  struct ImexCache;
  SimilarityState step_rk4(const SimilarityState& v, double h) const;
  SimilarityState step_imex(const SimilarityState& v, double h) const;

  Grid grid_;
  SolverConfig cfg_;
  std::optional<TruncationParams> trunc_;
  double dt_;
  mutable std::unique_ptr<ImexCache> imex_;
};

/// One step of size cfg.dt.
SimilarityState step(const SimilarityState& v, const SolverConfig& cfg,
                     const std::optional<TruncationParams>& trunc);

struct DiagnosticsRecord {
  double tau = 0.0;
  double mass = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double h1m = 0.0;
  double dissipation = 0.0;  ///< absorption rate applied by the flow, coef·∫|∇v|^q
  std::optional<double> omega_ratio;
  std::optional<double> manifold_remainder;
  double rescaled_mass = 0.0;  ///< τ^{N+1} M
  // Not serialized.
  double min_value = 0.0;
  double linear_pairing = 0.0;  ///< ∫ v 𝓛_h v
  long step_index = 0;
};

struct Trajectory {
  int dim = 1;
  std::vector<DiagnosticsRecord> records;
  std::vector<SimilarityState> snapshots;  ///< one per record when requested
  SimilarityState final_state;
  std::vector<std::string> warnings;
};

/// Integrates from v0 at τ = 0 to cfg.tau_end, recording every
/// cfg.record_every steps and at the final time.
Trajectory evolve(const ScalarField& v0, const SolverConfig& cfg,
                  const std::optional<TruncationParams>& trunc);
/// Same, starting from an arbitrary τ; cfg.tau_end is absolute.
Trajectory evolve(const SimilarityState& start, const SolverConfig& cfg,
                  const std::optional<TruncationParams>& trunc);

DiagnosticsRecord make_record(const SimilarityState& v, const SolverConfig& cfg,
                              const std::optional<TruncationParams>& trunc);

/// dM/dτ (central differences over records) + D at every interior record.
std::vector<double> mass_dissipation_residual(const Trajectory& traj);

/// (∫|∇v|^{q★} - c M^{q★}) / (c M^{q★}). Rejects nonpositive mass.
double omega_ratio(const SimilarityState& v, const CriticalData& crit);

/// ‖v - M G‖ in H¹_m, M = ∫v.
double manifold_remainder(const SimilarityState& v, const WeightParams& w);

struct EnergySlack {
  double tau;
  double slack;  ///< ½ d/dτ∫v² + ∫|∇v|² - (N/4)∫v², discrete form
  double scale;  ///< ∫|∇v|² + (N/4)∫v²
};

/// Slack of the L² energy inequality at every interior record. The gradient
/// energy is evaluated as (N/4)∫v² - ∫v 𝓛_h v so that the linear flow
/// satisfies the identity up to time differencing.
std::vector<EnergySlack> energy_monitor(const Trajectory& traj);

/// Names every violated trajectory invariant: finiteness, D >= 0, mass
/// nonincreasing (1e-9 per step), and, for nonnegative data, min >= -1e-8·sup.
std::vector<std::string> check_invariants(const Trajectory& traj, bool nonnegative_data);

}  // namespace hjcrit
