#include "hjcrit/physical.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "banded.hpp"
#include "hjcrit/operators.hpp"
#include "hjcrit/quadrature.hpp"

namespace hjcrit {

namespace {

// Piecewise-linear interpolation on a tensor grid; nullopt outside [-L, L]^N.
std::optional<double> interpolate(const ScalarField& f, double x0, double x1) {
  const Grid& g = f.grid();
  const double L = g.half_width();
  const double h = g.spacing();
  const int n = g.points_per_axis();
  const double slack = 1e-12 * L;
  const auto locate = [&](double x, int& i, double& frac) {
    if (x < -L - slack || x > L + slack) return false;
    const double s = std::clamp((x + L) / h, 0.0, static_cast<double>(n - 1));
    i = std::min(static_cast<int>(std::floor(s)), n - 2);
    frac = s - i;
    return true;
  };
  int i = 0;
  double a = 0.0;
  if (!locate(x0, i, a)) return std::nullopt;
  if (g.dim() == 1) return (1.0 - a) * f[i] + a * f[i + 1];
  int j = 0;
  double b = 0.0;
  if (!locate(x1, j, b)) return std::nullopt;
  return (1.0 - a) * (1.0 - b) * f[g.flat_index(i, j)] + a * (1.0 - b) * f[g.flat_index(i + 1, j)] +
         (1.0 - a) * b * f[g.flat_index(i, j + 1)] + a * b * f[g.flat_index(i + 1, j + 1)];
}

PhysicalRecord make_physical_record(const PhysicalState& u, long step_index) {
  PhysicalRecord r;
  r.t = u.t;
  r.mass = integrate(u.field);
  r.l1 = lp_norm(u.field, 1.0);
  r.linf = lp_norm(u.field, kInfinity);
  double grad_sup = 0.0;
  for (const auto& d : gradient(u.field)) grad_sup = std::max(grad_sup, d.sup_norm());
  r.grad_linf = grad_sup;
  r.min_value = u.field.min_value();
  r.step_index = step_index;
  return r;
}

}  // namespace

ScalarField rhs_physical(const PhysicalState& u, bool nonlinear) {
  ScalarField out = laplacian(u.field);
  if (nonlinear) out.add_scaled(-1.0, gradient_power(u.field, u.exponent_q));
  return out;
}

PhysicalTrajectory evolve_physical(const ScalarField& u0, double q, double t_end,
                                   const SolverConfig& cfg) {
  return evolve_physical(PhysicalState{0.0, u0, q}, t_end, cfg);
}

PhysicalTrajectory evolve_physical(const PhysicalState& start, double t_end,
                                   const SolverConfig& cfg) {
  const Grid& g = start.field.grid();
  const double dt = resolve_dt(cfg, g);
  if (cfg.nonlinearity == Nonlinearity::truncated) {
    throw InvalidArgument("physical runs support nonlinearity full or off");
  }
  if (!(start.exponent_q > 0.0)) throw InvalidArgument("exponent q must be positive");
  if (!start.field.all_finite()) throw InvalidArgument("initial data contains non-finite values");
  const bool nonlinear = cfg.nonlinearity == Nonlinearity::full;

  std::unique_ptr<detail::ImplicitDiffusion> implicit;
  const auto advance = [&](const PhysicalState& u, double h) {
    PhysicalState next{u.t + h, u.field, u.exponent_q};
    if (cfg.scheme == Scheme::explicit_rk4) {
      const auto f = [&](const ScalarField& w) {
        return rhs_physical(PhysicalState{u.t, w, u.exponent_q}, nonlinear);
      };
      const ScalarField k1 = f(u.field);
      const ScalarField k2 = f(ScalarField(u.field).add_scaled(0.5 * h, k1));
      const ScalarField k3 = f(ScalarField(u.field).add_scaled(0.5 * h, k2));
      const ScalarField k4 = f(ScalarField(u.field).add_scaled(h, k3));
      next.field.add_scaled(h / 6.0, k1);
      next.field.add_scaled(h / 3.0, k2);
      next.field.add_scaled(h / 3.0, k3);
      next.field.add_scaled(h / 6.0, k4);
    } else {
      if (!implicit || implicit->step() != h) {
        implicit = std::make_unique<detail::ImplicitDiffusion>(g, h);
      }
      ScalarField b = u.field;
      if (nonlinear) b.add_scaled(-h, gradient_power(u.field, u.exponent_q));
      next.field = implicit->solve(b);
    }
    return next;
  };

  PhysicalState state = start;
  state.field.zero_boundary();
  PhysicalTrajectory traj{{}, {}, state, {}};
  const double initial_sup = std::max(state.field.sup_norm(), std::numeric_limits<double>::min());

  const auto record = [&](long step_index) {
    traj.records.push_back(make_physical_record(state, step_index));
    if (cfg.store_snapshots) traj.snapshots.push_back(state);
  };

  const double t0 = state.t;
  record(0);
  long steps = 0;
  while (state.t < t_end) {
    double h = std::min(t_end, t0 + (steps + 1) * dt) - state.t;
    if (t_end - (state.t + h) < 1e-9 * dt) h = t_end - state.t;
    if (h <= 0.0) break;
    state = advance(state, h);
    state.field.zero_boundary();
    ++steps;
    if (t_end - state.t < 1e-9 * dt) state.t = t_end;
    if (!state.field.all_finite() || state.field.sup_norm() > 1e6 * initial_sup) {
      std::ostringstream msg;
      msg << "instability at t = " << state.t << ": sup exceeds 1e6 x initial sup or is non-finite";
      throw InstabilityError(msg.str());
    }
    if (steps % cfg.record_every == 0 || state.t >= t_end) record(steps);
  }

  const int n = g.points_per_axis();
  const double sup = state.field.sup_norm();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto idx = g.axis_indices(k);
    const bool near = idx[0] == 1 || idx[0] == n - 2 ||
                      (g.dim() == 2 && (idx[1] == 1 || idx[1] == n - 2));
    if (near && std::abs(state.field[k]) > 1e-10 * sup) {
      traj.warnings.push_back("physical grid too small: solution reaches the boundary layer");
      break;
    }
  }
  traj.final_state = state;
  return traj;
}

SimilarityState to_similarity(const PhysicalState& u, const Grid& xi_grid) {
  if (xi_grid.dim() != u.field.grid().dim()) throw InvalidArgument("dimension mismatch");
  const double s = std::sqrt(1.0 + u.t);
  const double amp = std::pow(s, xi_grid.dim());
  SimilarityState v{std::log1p(u.t), ScalarField(xi_grid)};
  for (std::size_t k = 0; k < xi_grid.size(); ++k) {
    const auto p = xi_grid.point(k);
    const auto value = interpolate(u.field, p[0] * s, p[1] * s);
    if (!value) {
      std::ostringstream msg;
      msg << "to_similarity: xi = " << p[0] << " maps to x = " << p[0] * s
          << " outside the physical grid [-" << u.field.grid().half_width() << ", "
          << u.field.grid().half_width() << "]";
      throw InvalidArgument(msg.str());
    }
    v.field[k] = amp * *value;
  }
  return v;
}

PhysicalState from_similarity(const SimilarityState& v, const Grid& x_grid, double exponent_q) {
  if (x_grid.dim() != v.field.grid().dim()) throw InvalidArgument("dimension mismatch");
  const double t = std::expm1(v.tau);
  const double s = std::sqrt(1.0 + t);
  const double amp = std::pow(s, -x_grid.dim());
  PhysicalState u{t, ScalarField(x_grid), exponent_q};
  for (std::size_t k = 0; k < x_grid.size(); ++k) {
    const auto p = x_grid.point(k);
    u.field[k] = amp * interpolate(v.field, p[0] / s, p[1] / s).value_or(0.0);
  }
  return u;
}

double asymptotic_law_error(const PhysicalState& u, double p, const CriticalData& crit) {
  if (!(u.t > 1.0)) {
    std::ostringstream msg;
    msg << "asymptotic_law_error requires t > 1, got " << u.t;
    throw InvalidArgument(msg.str());
  }
  const int dim = u.field.grid().dim();
  const double log_t = std::log(u.t);
  const double log_power = std::pow(log_t, dim + 1.0);
  ScalarField diff = u.field;
  diff.add_scaled(-crit.m_star / log_power, heat_self_similar(u.t, u.field.grid()));
  const double time_exponent = std::isinf(p) ? 0.5 * dim : 0.5 * dim * (1.0 - 1.0 / p);
  return std::pow(u.t, time_exponent) * log_power * lp_norm(diff, p);
}

L1LimitProbe l1_limit_probe(const ScalarField& u0, double q, const ProbeHorizon& horizon) {
  if (!(q > 1.0)) throw InvalidArgument("l1_limit_probe requires q > 1");
  const Grid& x_grid = u0.grid();
  const Grid xi_grid(x_grid.dim(), horizon.similarity_half_width, horizon.similarity_points);
  const double tau_switch = std::log1p(horizon.t_physical);
  if (!(horizon.tau_end > tau_switch + 1.0)) {
    throw InconclusiveError("l1_limit_probe: similarity continuation shorter than one unit of tau");
  }

  L1LimitProbe out;
  SolverConfig phys_cfg;
  phys_cfg.nonlinearity = horizon.nonlinear ? Nonlinearity::full : Nonlinearity::off;
  const double phys_steps = horizon.t_physical / default_dt(x_grid);
  phys_cfg.record_every = std::max(1, static_cast<int>(phys_steps / 20.0));
  const PhysicalTrajectory phys = evolve_physical(u0, q, horizon.t_physical, phys_cfg);
  for (const auto& w : phys.warnings) out.invariant_violations.push_back(w);
  for (std::size_t i = 0; i < phys.records.size(); ++i) {
    const auto& r = phys.records[i];
    if (r.min_value < -1e-8 * r.linf) {
      out.invariant_violations.push_back("physical leg: near-positivity");
    }
    if (i > 0 && r.mass > phys.records[i - 1].mass +
                              1e-9 * (r.step_index - phys.records[i - 1].step_index)) {
      out.invariant_violations.push_back("physical leg: mass nonincreasing");
    }
    out.tau.push_back(std::log1p(r.t));
    out.mass.push_back(r.l1);
  }

  SolverConfig sim_cfg;
  sim_cfg.nonlinearity = phys_cfg.nonlinearity;
  sim_cfg.exponent_q = q;
  sim_cfg.tau_end = horizon.tau_end;
  sim_cfg.record_every = horizon.record_every;
  const Trajectory sim = evolve(to_similarity(phys.final_state, xi_grid), sim_cfg, std::nullopt);
  for (const auto& v : check_invariants(sim, true)) out.invariant_violations.push_back(v);
  for (std::size_t i = 1; i < sim.records.size(); ++i) {
    out.tau.push_back(sim.records[i].tau);
    out.mass.push_back(sim.records[i].l1);
  }

  const std::size_t count = out.tau.size();
  const std::size_t tail = count / 4;
  if (tail < 8) throw InconclusiveError("l1_limit_probe: fewer than 8 samples in the fit window");
  const std::size_t first = count - tail;
  if (out.tau.back() - out.tau[first] < 1.0) {
    throw InconclusiveError("l1_limit_probe: fit window spans less than one unit of tau");
  }

  const auto fit_slope = [](const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };

  std::vector<double> tx, ly;
  for (std::size_t i = first; i < count; ++i) {
    if (!(out.mass[i] > 0.0)) {
      out.decaying = true;
      out.tail_slope = -kInfinity;
      return out;
    }
    tx.push_back(out.tau[i]);
    ly.push_back(std::log(out.mass[i]));
  }
  out.tail_slope = fit_slope(tx, ly);
  out.decaying = std::abs(out.tail_slope) >= 1e-3;
  if (out.decaying) return out;

  // Remaining loss from the exponential decay of the dissipation rate.
  const std::size_t sim_first = sim.records.size() - tail;
  std::vector<double> dt_tau, log_rate;
  for (std::size_t i = sim_first; i < sim.records.size(); ++i) {
    if (sim.records[i].dissipation > 0.0) {
      dt_tau.push_back(sim.records[i].tau);
      log_rate.push_back(std::log(sim.records[i].dissipation));
    }
  }
  double remaining = 0.0;
  if (dt_tau.size() >= 2) {
    const double lambda = -fit_slope(dt_tau, log_rate);
    if (lambda > 0.0) remaining = sim.records.back().dissipation / lambda;
  }
  out.plateau_estimate = std::max(0.0, out.mass.back() - remaining);
  return out;
}

}  // namespace hjcrit
