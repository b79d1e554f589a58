#include "hjcrit/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "hjcrit/operators.hpp"

namespace hjcrit {

namespace {

double weighted_square_sum(const ScalarField& f, const WeightParams& w) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    sum += g.quadrature_weight(k) * w.weight(g.radius_squared(k)) * f[k] * f[k];
  }
  return sum;
}

}  // namespace

double integrate(const ScalarField& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) sum += g.quadrature_weight(k) * f[k];
  return sum;
}

double inner(const ScalarField& f, const ScalarField& other) {
  if (!(f.grid() == other.grid())) throw InvalidArgument("inner: fields live on different grids");
  const Grid& g = f.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) sum += g.quadrature_weight(k) * f[k] * other[k];
  return sum;
}

double lp_norm(const ScalarField& f, double p) {
  if (std::isinf(p) && p > 0) return f.sup_norm();
  if (!(p >= 1.0)) {
    std::ostringstream msg;
    msg << "lp_norm requires p >= 1, got " << p;
    throw InvalidArgument(msg.str());
  }
  const Grid& g = f.grid();
  double sum = 0.0;
  if (p == 1.0) {
    for (std::size_t k = 0; k < g.size(); ++k) sum += g.quadrature_weight(k) * std::abs(f[k]);
    return sum;
  }
  if (p == 2.0) return std::sqrt(inner(f, f));
  for (std::size_t k = 0; k < g.size(); ++k) {
    sum += g.quadrature_weight(k) * std::pow(std::abs(f[k]), p);
  }
  return std::pow(sum, 1.0 / p);
}

double weighted_l2_norm(const ScalarField& f, const WeightParams& w) {
  return std::sqrt(weighted_square_sum(f, w));
}

double h1m_norm(const ScalarField& f, const WeightParams& w) {
  double sum = weighted_square_sum(f, w);
  for (const auto& d : gradient(f)) sum += weighted_square_sum(d, w);
  return std::sqrt(sum);
}

}  // namespace hjcrit
