#pragma once

#include <stdexcept>
#include <string>

#include "hjcrit/fields.hpp"
#include "hjcrit/physical.hpp"

namespace hjcrit {

struct SpectralProbeResult {
  std::string mode_label;
  double measured_rate = 0.0;
  double expected_rate = 0.0;
  double residual = 0.0;
  double weight_m = 1.0;
  bool applicable = true;  ///< false when the data has no component off the kernel
};

/// P₀w = (∫w) G
ScalarField project_P0(const ScalarField& w);
/// Q₀w = w - P₀w
ScalarField project_Q0(const ScalarField& w);

/// Applies the drift-diffusion operator to the k-th Hermite mode
/// (G, ∂₁G, ∂₁²G) and reports ‖𝓛f + (k/2)f‖_∞ / ‖f‖_∞. k in {0, 1, 2}.
SpectralProbeResult eigenmode_residual(int k, const Grid& grid);
SpectralProbeResult eigenmode_residual(int k);  ///< N = 1, L = 12, n = 513

/// Exact k-th mode ∂₁^k G sampled on the grid, k in {0, 1, 2}.
ScalarField hermite_mode(int k, const Grid& grid);

/// Upper bound N/4 - m/2 of the essential spectrum in L²_m. Rejects m <= N/2.
double spectral_bound(double m, int dim);

/// Evolves w0 under the linear flow and least-squares fits ln|Q₀v(τ)|_m at
/// unit τ spacing over [tau_begin, tau_end]; the reported rate is the
/// negated slope. Throws InconclusiveError if |Q₀v|_m drops below
/// 1e-12·|w0|_m inside the window.
SpectralProbeResult semigroup_decay_rate(const ScalarField& w0, const WeightParams& m,
                                         double tau_begin = 1.0, double tau_end = 6.0);

}  // namespace hjcrit
