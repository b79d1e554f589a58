#include "hjcrit/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "banded.hpp"
#include "hjcrit/operators.hpp"
#include "hjcrit/quadrature.hpp"

namespace hjcrit {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::explicit_rk4: return "explicit_rk4";
    case Scheme::imex_euler: return "imex_euler";
  }
  return "?";
}

std::string to_string(Nonlinearity n) {
  switch (n) {
    case Nonlinearity::full: return "full";
    case Nonlinearity::truncated: return "truncated";
    case Nonlinearity::off: return "off";
  }
  return "?";
}

double default_dt(const Grid& grid) {
  return grid.spacing() * grid.spacing() / (6.0 * grid.dim());
}

double resolve_dt(const SolverConfig& cfg, const Grid& grid) {
  if (cfg.record_every < 1) throw InvalidArgument("record_every must be >= 1");
  const double dt = cfg.dt.value_or(default_dt(grid));
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  const double h = grid.spacing();
  const double bound = h * h / (4.0 * grid.dim());
  if (cfg.scheme == Scheme::explicit_rk4 && dt > bound * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "explicit scheme requires dt <= h^2/(4N) = " << bound << ", got " << dt;
    throw InvalidArgument(msg.str());
  }
  return dt;
}

double resolve_q(const SolverConfig& cfg, int dim) {
  const double q = cfg.exponent_q.value_or(q_star(dim));
  if (!(q > 0.0)) throw InvalidArgument("absorption exponent q must be positive");
  return q;
}

TruncationParams::TruncationParams(double rho_, WeightParams weight_)
    : rho(rho_), weight(weight_) {
  if (!(rho > 0.0 && rho < 1.0)) {
    std::ostringstream msg;
    msg << "truncation radius rho must lie in (0, 1), got " << rho;
    throw InvalidArgument(msg.str());
  }
}

double cutoff_chi(double r, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    std::ostringstream msg;
    msg << "cutoff_chi: rho must lie in (0, 1), got " << rho;
    throw InvalidArgument(msg.str());
  }
  if (r < 0.0) throw InvalidArgument("cutoff_chi: r must be >= 0");
  const double s = (r / (rho * rho) - 1.0) / 3.0;
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double smooth = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
  return 1.0 - smooth;
}

double absorption_growth(double q, int dim, double tau) {
  const double kappa = 0.5 * ((dim + 2.0) - q * (dim + 1.0));
  if (kappa == 0.0 || q == q_star(dim)) return 1.0;
  return std::exp(kappa * tau);
}

double absorption_coefficient(const SimilarityState& v, const SolverConfig& cfg,
                              const std::optional<TruncationParams>& trunc) {
  const int dim = v.field.grid().dim();
  switch (cfg.nonlinearity) {
    case Nonlinearity::off: return 0.0;
    case Nonlinearity::full: return absorption_growth(resolve_q(cfg, dim), dim, v.tau);
    case Nonlinearity::truncated: {
      if (!trunc) throw InvalidArgument("truncated nonlinearity requires TruncationParams");
      const double norm = h1m_norm(v.field, trunc->weight);
      const double chi = cutoff_chi(norm * norm, trunc->rho);
      if (chi == 0.0) return 0.0;
      return chi * absorption_growth(resolve_q(cfg, dim), dim, v.tau);
    }
  }
  return 0.0;
}

ScalarField rhs(const SimilarityState& v, const SolverConfig& cfg,
                const std::optional<TruncationParams>& trunc) {
  ScalarField out = apply_L(v.field);
  const double coef = absorption_coefficient(v, cfg, trunc);
  if (coef != 0.0) {
    out.add_scaled(-coef, gradient_power(v.field, resolve_q(cfg, v.field.grid().dim())));
  }
  return out;
}

struct SimilarityIntegrator::ImexCache {
  explicit ImexCache(const Grid& g, double h) : solver(g, h) {}
  detail::ImplicitDiffusion solver;
};

SimilarityIntegrator::SimilarityIntegrator(const Grid& grid, SolverConfig cfg,
                                           std::optional<TruncationParams> trunc)
    : grid_(grid), cfg_(std::move(cfg)), trunc_(std::move(trunc)), dt_(resolve_dt(cfg_, grid)) {
  if (cfg_.nonlinearity == Nonlinearity::truncated && !trunc_) {
    throw InvalidArgument("truncated nonlinearity requires TruncationParams");
  }
  resolve_q(cfg_, grid_.dim());
}

SimilarityIntegrator::~SimilarityIntegrator() = default;
SimilarityIntegrator::SimilarityIntegrator(SimilarityIntegrator&&) noexcept = default;
SimilarityIntegrator& SimilarityIntegrator::operator=(SimilarityIntegrator&&) noexcept = default;

SimilarityState SimilarityIntegrator::step(const SimilarityState& v, double step_dt,
                                           double reference_sup) const {
  SimilarityState next = cfg_.scheme == Scheme::explicit_rk4 ? step_rk4(v, step_dt)
                                                               : step_imex(v, step_dt);
  next.field.zero_boundary();
  const double limit = 1e6 * std::max(reference_sup, std::numeric_limits<double>::min());
  if (!next.field.all_finite() || next.field.sup_norm() > limit) {
    std::ostringstream msg;
    msg << "instability at tau = " << next.tau << ": sup exceeds 1e6 x initial sup or is non-finite";
    throw InstabilityError(msg.str());
  }
  return next;
}

SimilarityState SimilarityIntegrator::step_rk4(const SimilarityState& v, double h) const {
  const auto stage = [&](double dtau, const ScalarField& base, double a, const ScalarField& k) {
    SimilarityState s{v.tau + dtau, base};
    s.field.add_scaled(a, k);
    return rhs(s, cfg_, trunc_);
  };
  const ScalarField k1 = rhs(v, cfg_, trunc_);
  const ScalarField k2 = stage(0.5 * h, v.field, 0.5 * h, k1);
  const ScalarField k3 = stage(0.5 * h, v.field, 0.5 * h, k2);
  const ScalarField k4 = stage(h, v.field, h, k3);
  SimilarityState next{v.tau + h, v.field};
  next.field.add_scaled(h / 6.0, k1);
  next.field.add_scaled(h / 3.0, k2);
  next.field.add_scaled(h / 3.0, k3);
  next.field.add_scaled(h / 6.0, k4);
  return next;
}

SimilarityState SimilarityIntegrator::step_imex(const SimilarityState& v, double h) const {
  if (!imex_ || imex_->solver.step() != h) imex_ = std::make_unique<ImexCache>(grid_, h);

  // Diffusion implicit; drift, N/2 v and absorption explicit.
  ScalarField b = apply_L(v.field) - laplacian(v.field);
  const double coef = absorption_coefficient(v, cfg_, trunc_);
  if (coef != 0.0) b.add_scaled(-coef, gradient_power(v.field, resolve_q(cfg_, grid_.dim())));
  b *= h;
  b += v.field;
  return SimilarityState{v.tau + h, imex_->solver.solve(b)};
}

SimilarityState step(const SimilarityState& v, const SolverConfig& cfg,
                     const std::optional<TruncationParams>& trunc) {
  SimilarityIntegrator integrator(v.field.grid(), cfg, trunc);
  return integrator.step(v, integrator.dt(), v.field.sup_norm());
}

DiagnosticsRecord make_record(const SimilarityState& v, const SolverConfig& cfg,
                              const std::optional<TruncationParams>& trunc) {
  const Grid& g = v.field.grid();
  const int dim = g.dim();
  const double q = resolve_q(cfg, dim);
  const WeightParams weight(cfg.weight_m.value_or(0.5 * (dim + 1)), dim);

  DiagnosticsRecord r;
  r.tau = v.tau;
  r.mass = integrate(v.field);
  r.l1 = lp_norm(v.field, 1.0);
  r.l2 = lp_norm(v.field, 2.0);
  r.linf = lp_norm(v.field, kInfinity);
  r.h1m = h1m_norm(v.field, weight);
  const double coef = absorption_coefficient(v, cfg, trunc);
  r.dissipation = coef == 0.0 ? 0.0 : coef * integrate(gradient_power(v.field, q));
  if (r.mass > 0.0) {
    r.omega_ratio = omega_ratio(v, critical_data(dim));
  }
  if (r.mass >= 0.0) r.manifold_remainder = manifold_remainder(v, weight);
  r.rescaled_mass = std::pow(v.tau, dim + 1.0) * r.mass;
  r.min_value = v.field.min_value();
  r.linear_pairing = inner(v.field, apply_L(v.field));
  return r;
}

Trajectory evolve(const ScalarField& v0, const SolverConfig& cfg,
                  const std::optional<TruncationParams>& trunc) {
  return evolve(SimilarityState{0.0, v0}, cfg, trunc);
}

Trajectory evolve(const SimilarityState& start, const SolverConfig& cfg,
                  const std::optional<TruncationParams>& trunc) {
  const Grid& g = start.field.grid();
  SimilarityIntegrator integrator(g, cfg, trunc);
  const double dt = integrator.dt();
  if (!start.field.all_finite()) throw InvalidArgument("initial data contains non-finite values");

  SimilarityState state = start;
  state.field.zero_boundary();
  Trajectory traj{g.dim(), {}, {}, state, {}};
  const double initial_sup = state.field.sup_norm();

  bool warned = false;
  const auto record = [&](long step_index) {
    DiagnosticsRecord r = make_record(state, cfg, trunc);
    r.step_index = step_index;
    traj.records.push_back(r);
    if (cfg.store_snapshots) traj.snapshots.push_back(state);
    if (!warned) {
      // Samples next to the boundary should stay negligible.
      const double sup = state.field.sup_norm();
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.on_boundary(k)) continue;
        const auto idx = g.axis_indices(k);
        const int n = g.points_per_axis();
        const bool near = idx[0] == 1 || idx[0] == n - 2 ||
                          (g.dim() == 2 && (idx[1] == 1 || idx[1] == n - 2));
        if (near && std::abs(state.field[k]) > 1e-10 * sup) {
          std::ostringstream msg;
          msg << "boundary layer value " << state.field[k] << " exceeds 1e-10 x sup at tau = "
              << state.tau;
          traj.warnings.push_back(msg.str());
          warned = true;
          break;
        }
      }
    }
  };

  const double tau0 = state.tau;
  record(0);
  long steps = 0;
  while (state.tau < cfg.tau_end) {
    const double target = std::min(cfg.tau_end, tau0 + (steps + 1) * dt);
    // Fold a sliver of a step into the previous one.
    const double h = (cfg.tau_end - target < 1e-9 * dt) ? cfg.tau_end - state.tau
                                                         : target - state.tau;
    if (h <= 0.0) break;
    state = integrator.step(state, h, initial_sup);
    ++steps;
    if (cfg.tau_end - state.tau < 1e-9 * dt) state.tau = cfg.tau_end;
    if (steps % cfg.record_every == 0 || state.tau >= cfg.tau_end) record(steps);
  }
  traj.final_state = state;
  return traj;
}

namespace {

// Derivative at t[c] of the Lagrange interpolant through (t[k], y[k]).
double lagrange_derivative(const double* t, const double* y, int n, int c) {
  double d = 0.0;
  for (int j = 0; j < n; ++j) {
    double lj = 0.0;  // l_j'(t_c)
    if (j == c) {
      for (int k = 0; k < n; ++k) {
        if (k != j) lj += 1.0 / (t[j] - t[k]);
      }
    } else {
      lj = 1.0 / (t[j] - t[c]);
      for (int k = 0; k < n; ++k) {
        if (k != j && k != c) lj *= (t[c] - t[k]) / (t[j] - t[k]);
      }
    }
    d += lj * y[j];
  }
  return d;
}

// Time derivative of a record series at index i from the five-point
// interpolant, centred where possible and shifted inward near the ends.
template <class Get>
double record_derivative(const std::vector<DiagnosticsRecord>& r, std::size_t i, Get get) {
  const int n = static_cast<int>(std::min<std::size_t>(5, r.size()));
  const std::size_t first = std::min(i >= 2 ? i - 2 : 0, r.size() - n);
  double t[5], y[5];
  for (int k = 0; k < n; ++k) {
    t[k] = r[first + k].tau;
    y[k] = get(r[first + k]);
  }
  return lagrange_derivative(t, y, n, static_cast<int>(i - first));
}

}  // namespace

std::vector<double> mass_dissipation_residual(const Trajectory& traj) {
  const auto& r = traj.records;
  if (r.size() < 3) throw InvalidArgument("mass_dissipation_residual needs >= 3 records");
  std::vector<double> out;
  out.reserve(r.size() - 2);
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double dm = record_derivative(r, i, [](const DiagnosticsRecord& x) { return x.mass; });
    out.push_back(dm + r[i].dissipation);
  }
  return out;
}

double omega_ratio(const SimilarityState& v, const CriticalData& crit) {
  const double mass = integrate(v.field);
  if (!(mass > 0.0)) {
    std::ostringstream msg;
    msg << "omega_ratio requires positive mass, got " << mass;
    throw InvalidArgument(msg.str());
  }
  const double d = integrate(gradient_power(v.field, crit.q_star));
  const double reference = crit.c_mass * std::pow(mass, crit.q_star);
  return (d - reference) / reference;
}

double manifold_remainder(const SimilarityState& v, const WeightParams& w) {
  const double mass = integrate(v.field);
  ScalarField diff = v.field;
  diff.add_scaled(-mass, gaussian_profile(v.field.grid()));
  return h1m_norm(diff, w);
}

std::vector<EnergySlack> energy_monitor(const Trajectory& traj) {
  const auto& r = traj.records;
  if (r.size() < 3) throw InvalidArgument("energy_monitor needs >= 3 records");
  const double quarter_dim = 0.25 * traj.dim;
  std::vector<EnergySlack> out;
  out.reserve(r.size() - 2);
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double d_energy =
        record_derivative(r, i, [](const DiagnosticsRecord& x) { return x.l2 * x.l2; });
    const double l2sq = r[i].l2 * r[i].l2;
    const double grad_energy = quarter_dim * l2sq - r[i].linear_pairing;
    out.push_back({r[i].tau, 0.5 * d_energy + grad_energy - quarter_dim * l2sq,
                   grad_energy + quarter_dim * l2sq});
  }
  return out;
}

std::vector<std::string> check_invariants(const Trajectory& traj, bool nonnegative_data) {
  std::vector<std::string> violations;
  const auto& r = traj.records;
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::ostringstream where;
    where << " at tau = " << r[i].tau;
    if (!std::isfinite(r[i].mass) || !std::isfinite(r[i].linf)) {
      violations.push_back("finite values" + where.str());
    }
    if (r[i].dissipation < 0.0) violations.push_back("dissipation >= 0" + where.str());
    if (nonnegative_data && r[i].min_value < -1e-8 * r[i].linf) {
      violations.push_back("near-positivity min >= -1e-8 sup" + where.str());
    }
    if (i > 0) {
      const double steps = static_cast<double>(r[i].step_index - r[i - 1].step_index);
      if (r[i].mass > r[i - 1].mass + 1e-9 * std::max(steps, 1.0)) {
        violations.push_back("mass nonincreasing" + where.str());
      }
    }
  }
  return violations;
}

}  // namespace hjcrit
