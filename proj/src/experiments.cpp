#include "hjcrit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hjcrit/acceptance.hpp"
#include "hjcrit/csv.hpp"
#include "hjcrit/gaussian.hpp"
#include "hjcrit/physical.hpp"
#include "hjcrit/plot.hpp"
#include "hjcrit/quadrature.hpp"
#include "hjcrit/reduced.hpp"
#include "hjcrit/spectral.hpp"

#ifndef HJCRIT_VERSION
#define HJCRIT_VERSION "0.1.0"
#endif

namespace hjcrit {

const char* version() { return HJCRIT_VERSION; }

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Results = std::vector<std::pair<std::string, std::string>>;

struct Outcome {
  std::vector<CsvRow> rows;
  Results results;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  bool write_csv = true;
};

Grid config_grid(const ExperimentConfig& cfg) { return Grid(cfg.dim, cfg.half_width, cfg.points); }

Outcome similarity_run(const ExperimentConfig& cfg) {
  const Grid grid = config_grid(cfg);
  const ScalarField v0 = initial_field(cfg, grid);
  std::optional<TruncationParams> trunc;
  if (cfg.truncation_enabled) trunc.emplace(cfg.rho, WeightParams(cfg.weight(), cfg.dim));
  SolverConfig solver = cfg.solver();
  const Trajectory traj = evolve(v0, solver, trunc);
  Outcome o;
  for (const auto& r : traj.records) o.rows.push_back(to_row(r));
  o.violations = check_invariants(traj, v0.min_value() >= 0.0);
  o.warnings = traj.warnings;
  const auto& last = traj.records.back();
  o.results = {{"result.dt", num(resolve_dt(solver, grid))},
               {"result.final_tau", num(last.tau)},
               {"result.final_mass", num(last.mass)},
               {"result.final_rescaled_mass", num(last.rescaled_mass)}};
  if (traj.records.size() >= 3) {
    double worst = 0.0;
    const auto res = mass_dissipation_residual(traj);
    for (std::size_t i = 0; i < res.size(); ++i) {
      const double d = traj.records[i + 1].dissipation;
      if (d > 0.0) worst = std::max(worst, std::abs(res[i]) / d);
    }
    o.results.emplace_back("result.max_mass_dissipation_residual", num(worst));
  }
  return o;
}

Outcome physical_run(const ExperimentConfig& cfg) {
  const Grid grid = config_grid(cfg);
  const ScalarField u0 = initial_field(cfg, grid);
  if (cfg.truncation_enabled) throw InvalidArgument("physical_run does not support truncation");
  const PhysicalTrajectory traj = evolve_physical(u0, cfg.exponent(), cfg.t_end, cfg.solver());
  Outcome o;
  o.warnings = traj.warnings;
  const bool nonnegative = u0.min_value() >= 0.0;
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const auto& r = traj.records[i];
    o.rows.push_back(to_row(r));
    if (nonnegative && r.min_value < -1e-8 * r.linf) {
      o.violations.push_back("near-positivity min >= -1e-8 sup at t = " + num(r.t));
    }
    if (i > 0 && r.l1 > traj.records[i - 1].l1 + 1e-9 * (r.step_index - traj.records[i - 1].step_index)) {
      o.violations.push_back("L1 norm nonincreasing at t = " + num(r.t));
    }
  }
  const auto& last = traj.records.back();
  o.results = {{"result.final_t", num(last.t)}, {"result.final_l1", num(last.l1)},
               {"result.final_linf", num(last.linf)}};
  return o;
}

Outcome reduced_ode(const ExperimentConfig& cfg) {
  const double m0 = cfg.reduced_m0 ? *cfg.reduced_m0 : integrate(initial_field(cfg, config_grid(cfg)));
  const double c = cfg.reduced_c.value_or(critical_data(cfg.dim).c_mass);
  const auto states = integrate_reduced(m0, c, cfg.tau_end, cfg.reduced_dt, cfg.dim);
  Outcome o;
  double worst = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    const double exact = exact_solution(m0, c, s.tau, cfg.dim);
    if (exact > 0.0) worst = std::max(worst, std::abs(s.mass - exact) / exact);
    if (i % static_cast<std::size_t>(cfg.record_every) != 0 && i + 1 != states.size()) continue;
    CsvRow row;
    row.tau = s.tau;
    row.mass = s.mass;
    row.rescaled_mass = std::pow(s.tau, cfg.dim + 1.0) * s.mass;
    o.rows.push_back(row);
  }
  o.results = {{"result.M0", num(m0)},
               {"result.c", num(c)},
               {"result.asymptote", num(reduced_asymptote(c, cfg.dim))},
               {"result.max_rel_error_vs_exact", num(worst)}};
  return o;
}

Outcome dichotomy_probe(const ExperimentConfig& cfg) {
  const Grid grid = config_grid(cfg);
  const ScalarField u0 = initial_field(cfg, grid);
  ProbeHorizon h;
  h.t_physical = cfg.probe_t_physical;
  h.tau_end = cfg.probe_tau_end;
  h.similarity_points = cfg.probe_points;
  h.similarity_half_width = cfg.probe_half_width;
  h.nonlinear = cfg.nonlinearity == Nonlinearity::full;
  const L1LimitProbe p = l1_limit_probe(u0, cfg.exponent(), h);
  Outcome o;
  for (std::size_t i = 0; i < p.tau.size(); ++i) {
    CsvRow row;
    row.tau = p.tau[i];
    row.mass = p.mass[i];
    row.l1 = p.mass[i];
    o.rows.push_back(row);
  }
  o.violations = p.invariant_violations;
  o.results = {{"result.initial_l1", num(lp_norm(u0, 1.0))},
               {"result.plateau_estimate", num(p.plateau_estimate)},
               {"result.decaying", p.decaying ? "true" : "false"},
               {"result.tail_slope", num(p.tail_slope)}};
  return o;
}

Outcome spectral_probe(const ExperimentConfig& cfg) {
  const Grid grid = config_grid(cfg);
  const ScalarField w0 = cfg.spectral_mode == 0 ? initial_field(cfg, grid) : hermite_mode(cfg.spectral_mode, grid);
  const WeightParams m(cfg.weight(), cfg.dim);
  const SpectralProbeResult r = semigroup_decay_rate(w0, m, cfg.spectral_tau_begin, cfg.spectral_tau_end);
  SolverConfig solver = cfg.solver();
  solver.nonlinearity = Nonlinearity::off;
  solver.tau_end = cfg.spectral_tau_end;
  const Trajectory traj = evolve(w0, solver, std::nullopt);
  Outcome o;
  for (const auto& rec : traj.records) o.rows.push_back(to_row(rec));
  o.warnings = traj.warnings;
  o.results = {{"result.applicable", r.applicable ? "true" : "false"},
               {"result.measured_rate", num(r.measured_rate)},
               {"result.expected_rate", num(r.expected_rate)},
               {"result.fit_residual", num(r.residual)},
               {"result.essential_spectrum_bound", num(spectral_bound(cfg.weight(), cfg.dim))}};
  return o;
}

}  // namespace

ScalarField initial_field(const ExperimentConfig& cfg, const Grid& grid) {
  switch (cfg.initial.kind) {
    case InitialKind::gaussian: return gaussian_profile(grid);
    case InitialKind::scaled_gaussian: return gaussian_profile(grid) * cfg.initial.alpha;
    case InitialKind::gaussian_plus_moment: return gaussian_plus_moment(cfg.initial.epsilon, grid);
    case InitialKind::from_file: {
      std::ifstream in(cfg.initial.path);
      if (!in) throw InvalidArgument("cannot read initial data " + cfg.initial.path);
      std::vector<double> values;
      double x = 0.0;
      while (in >> x) values.push_back(x);
      if (!in.eof()) throw InvalidArgument(cfg.initial.path + ": non-numeric entry after " +
                                           std::to_string(values.size()) + " samples");
      if (values.size() != grid.size()) {
        throw InvalidArgument(cfg.initial.path + ": expected " + std::to_string(grid.size()) + " samples, got " +
                              std::to_string(values.size()));
      }
      ScalarField f(grid, std::move(values));
      if (!f.all_finite()) throw InvalidArgument(cfg.initial.path + ": non-finite sample");
      return f;
    }
  }
  throw InvalidArgument("unknown initial data kind");
}

std::string manifest_text(const ExperimentConfig& cfg, const Results& results, double seconds) {
  const CriticalData crit = critical_data(cfg.dim);
  std::ostringstream o;
  o << "version: " << version() << "\n" << describe(cfg);
  o << "constants.q_star: " << num(crit.q_star) << "\n"
    << "constants.grad_G_qstar_norm: " << num(crit.grad_G_norm) << "\n"
    << "constants.c_mass: " << num(crit.c_mass) << "\n"
    << "constants.M_star: " << num(crit.m_star) << "\n";
  for (const auto& [k, v] : results) o << k << ": " << v << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  o << "wall_clock_seconds: " << buf << "\n";
  return o.str();
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  const auto write_manifest = [&](const Results& results) {
    std::ofstream m(cfg.manifest(), std::ios::binary);
    if (!m) throw InvalidArgument("cannot write " + cfg.manifest());
    m << manifest_text(cfg, results, elapsed());
  };

  if (cfg.experiment == Experiment::verify) {
    AcceptanceOptions options;
    options.fast = cfg.verify_fast;
    const AcceptanceReport report = run_acceptance(options);
    Results results;
    for (const auto& r : report.results) {
      out << format_line(r) << "\n";
      results.emplace_back("criterion." + std::to_string(r.id), r.skipped ? "skip" : (r.passed ? "pass" : "fail"));
    }
    write_manifest(results);
    return report.all_passed() ? 0 : 1;
  }

  Outcome o;
  try {
    switch (cfg.experiment) {
      case Experiment::similarity_run: o = similarity_run(cfg); break;
      case Experiment::physical_run: o = physical_run(cfg); break;
      case Experiment::reduced_ode: o = reduced_ode(cfg); break;
      case Experiment::dichotomy_probe: o = dichotomy_probe(cfg); break;
      case Experiment::spectral_probe: o = spectral_probe(cfg); break;
      case Experiment::verify: break;
    }
  } catch (const InstabilityError& e) {
    err << "instability: " << e.what() << "\n";
    return 1;
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return 1;
  }

  write_csv(cfg.csv_path, o.rows);
  Results results = o.results;
  results.emplace_back("result.rows", std::to_string(o.rows.size()));
  results.emplace_back("result.invariant_violations", std::to_string(o.violations.size()));
  write_manifest(results);
  out << "wrote " << cfg.csv_path << " (" << o.rows.size() << " rows) and " << cfg.manifest() << "\n";
  for (const auto& [k, v] : o.results) out << k << ": " << v << "\n";

  if (cfg.svg_path) {
    PlotOptions plot;
    plot.columns = cfg.plot_columns;
    plot.log_y = cfg.plot_log;
    if (std::find(plot.columns.begin(), plot.columns.end(), "rescaled_mass") != plot.columns.end()) {
      plot.reference = critical_data(cfg.dim).m_star;
    }
    write_plot(*cfg.svg_path, parse_csv(format_csv(o.rows)), plot);
    out << "wrote " << *cfg.svg_path << "\n";
  }

  for (const auto& w : o.warnings) err << "warning: " << w << "\n";
  if (!o.violations.empty()) {
    for (const auto& v : o.violations) err << "invariant violated: " << v << "\n";
    return 1;
  }
  return 0;
}

}  // namespace hjcrit
