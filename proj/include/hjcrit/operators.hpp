#pragma once

#include <vector>

#include "hjcrit/fields.hpp"

namespace hjcrit {

/// Discrete gradient, one field per axis. Second-order central differences in
/// the interior, second-order one-sided differences on boundary samples.
std::vector<ScalarField> gradient(const ScalarField& f);

/// 3-point (1-D) / 5-point (2-D) Laplacian. Boundary samples of the result
/// are 0 (homogeneous Dirichlet rows).
ScalarField laplacian(const ScalarField& f);

/// Drift-diffusion operator Δf + ½ξ·∇f + (N/2)f of the rescaled heat flow.
/// Its kernel is spanned by the Gaussian profile. Boundary rows are 0.
ScalarField apply_L(const ScalarField& f);

/// |∇f|^q with the Euclidean norm of the discrete gradient; boundary samples
/// are 0 so that the term matches the Dirichlet rows of apply_L.
ScalarField gradient_power(const ScalarField& f, double q);

}  // namespace hjcrit
