#include "hjcrit/spectral.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "hjcrit/gaussian.hpp"
#include "hjcrit/operators.hpp"
#include "hjcrit/quadrature.hpp"
#include "hjcrit/similarity.hpp"

namespace hjcrit {

ScalarField project_P0(const ScalarField& w) {
  ScalarField g = gaussian_profile(w.grid());
  g *= integrate(w);
  return g;
}

ScalarField project_Q0(const ScalarField& w) { return w - project_P0(w); }

ScalarField hermite_mode(int k, const Grid& grid) {
  ScalarField f = gaussian_profile(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i)[0];
    switch (k) {
      case 0: break;
      case 1: f[i] *= -0.5 * x; break;
      case 2: f[i] *= 0.25 * x * x - 0.5; break;
      default: throw InvalidArgument("hermite_mode: k must be 0, 1 or 2");
    }
  }
  return f;
}

SpectralProbeResult eigenmode_residual(int k, const Grid& grid) {
  const ScalarField f = hermite_mode(k, grid);
  ScalarField r = apply_L(f);
  r.add_scaled(0.5 * k, f);
  // Boundary rows of apply_L are Dirichlet rows, not operator values.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.on_boundary(i)) r[i] = 0.0;
  }
  SpectralProbeResult out;
  out.mode_label = "d1^" + std::to_string(k) + " G";
  out.expected_rate = 0.5 * k;
  out.measured_rate = 0.5 * k;
  out.residual = r.sup_norm() / f.sup_norm();
  return out;
}

SpectralProbeResult eigenmode_residual(int k) { return eigenmode_residual(k, Grid(1, 12.0, 513)); }

double spectral_bound(double m, int dim) {
  if (dim < 1) throw InvalidArgument("spectral_bound: dimension must be >= 1");
  if (!(m > 0.5 * dim)) {
    std::ostringstream msg;
    msg << "spectral_bound requires m > N/2 = " << 0.5 * dim << ", got " << m;
    throw InvalidArgument(msg.str());
  }
  return 0.25 * dim - 0.5 * m;
}

SpectralProbeResult semigroup_decay_rate(const ScalarField& w0, const WeightParams& m,
                                         double tau_begin, double tau_end) {
  if (!(tau_begin >= 0.0 && tau_end >= tau_begin + 2.0)) {
    throw InvalidArgument("semigroup_decay_rate: window must span at least two units of tau");
  }
  SpectralProbeResult out;
  out.mode_label = "linear flow";
  out.weight_m = m.m();
  out.expected_rate = 0.5;

  const double initial = weighted_l2_norm(w0, m);
  if (!(initial > 0.0)) throw InvalidArgument("semigroup_decay_rate: w0 must be nontrivial");
  const double floor = 1e-12 * initial;
  if (weighted_l2_norm(project_Q0(w0), m) <= floor) {
    // Entirely in the kernel direction: nothing decays.
    out.applicable = false;
    out.expected_rate = 0.0;
    return out;
  }

  // Slowest surviving Hermite mode: first moments decay at 1/2, otherwise at 1.
  const Grid& g = w0.grid();
  std::array<double, 2> first_moment{};
  std::array<double, 2> abs_moment{};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto p = g.point(i);
    for (int a = 0; a < g.dim(); ++a) {
      first_moment[a] += g.quadrature_weight(i) * p[a] * w0[i];
      abs_moment[a] += g.quadrature_weight(i) * std::abs(p[a] * w0[i]);
    }
  }
  bool has_first_moment = false;
  for (int a = 0; a < g.dim(); ++a) {
    has_first_moment |= std::abs(first_moment[a]) > 1e-10 * abs_moment[a];
  }
  out.expected_rate = has_first_moment ? 0.5 : 1.0;

  SolverConfig cfg;
  cfg.nonlinearity = Nonlinearity::off;
  cfg.record_every = 1 << 30;
  SimilarityState state{0.0, w0};
  std::vector<double> taus, logs;
  const int first = static_cast<int>(std::ceil(tau_begin));
  const int last = static_cast<int>(std::floor(tau_end));
  for (int target = first; target <= last; ++target) {
    cfg.tau_end = target;
    if (target > state.tau) state = evolve(state, cfg, std::nullopt).final_state;
    const double norm = weighted_l2_norm(project_Q0(state.field), m);
    if (norm <= floor) {
      std::ostringstream msg;
      msg << "semigroup_decay_rate: |Q0 v|_m reached the quadrature floor at tau = " << target;
      throw InconclusiveError(msg.str());
    }
    taus.push_back(target);
    logs.push_back(std::log(norm));
  }

  const double n = static_cast<double>(taus.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    sx += taus[i];
    sy += logs[i];
    sxx += taus[i] * taus[i];
    sxy += taus[i] * logs[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double e = logs[i] - (intercept + slope * taus[i]);
    rss += e * e;
  }
  out.measured_rate = -slope;
  out.residual = std::sqrt(rss / n);
  return out;
}

}  // namespace hjcrit
