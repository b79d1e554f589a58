#pragma once

#include <limits>

#include "hjcrit/fields.hpp"

namespace hjcrit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Trapezoid rule over the whole grid.
double integrate(const ScalarField& f);

/// Trapezoid inner product ∫ f g.
double inner(const ScalarField& f, const ScalarField& g);

/// Quadrature-weighted L^p norm; p = kInfinity gives max |f|. Rejects p < 1.
double lp_norm(const ScalarField& f, double p);

/// |f|_m = (∫ (1 + |ξ|^{2m}) f² dξ)^{1/2}
double weighted_l2_norm(const ScalarField& f, const WeightParams& w);

/// ‖f‖_m = (|f|_m² + |∇f|_m²)^{1/2} with the discrete gradient.
double h1m_norm(const ScalarField& f, const WeightParams& w);

}  // namespace hjcrit
