#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hjcrit/similarity.hpp"

namespace hjcrit {

enum class Experiment { similarity_run, physical_run, reduced_ode, dichotomy_probe, spectral_probe, verify };
enum class InitialKind { gaussian, scaled_gaussian, gaussian_plus_moment, from_file };

std::string to_string(Experiment e);
std::string to_string(InitialKind k);

/// Line-precise configuration error ("<source>:<line>: key 'x': ...").
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialData {
  InitialKind kind = InitialKind::gaussian;
  double alpha = 1.0;    ///< scaled_gaussian amplitude
  double epsilon = 0.3;  ///< gaussian_plus_moment size
  std::string path;      ///< from_file: whitespace-separated samples, axis 0 slowest
};

struct ExperimentConfig {
  Experiment experiment = Experiment::similarity_run;
  int dim = 1;

  // [grid]
  double half_width = 12.0;
  int points = 513;

  // [solver]
  Scheme scheme = Scheme::explicit_rk4;
  std::optional<double> dt;  ///< h²/(6N) when absent
  double tau_end = 15.0;
  double t_end = 5.0;
  int record_every = 10;
  Nonlinearity nonlinearity = Nonlinearity::full;

  // exponent: exactly one of q / use_q_star
  std::optional<double> q;
  bool use_q_star = true;

  // [truncation]; m is also the diagnostics weight
  bool truncation_enabled = false;
  double rho = 0.5;
  std::optional<double> weight_m;

  InitialData initial;

  // [reduced]
  std::optional<double> reduced_m0;  ///< mass of the initial data when absent
  std::optional<double> reduced_c;   ///< c_mass(N) when absent
  double reduced_dt = 1e-3;

  // [probe]
  double probe_t_physical = 10.0;
  double probe_tau_end = 40.0;
  int probe_points = 257;
  double probe_half_width = 12.0;

  // [spectral]
  int spectral_mode = 1;  ///< 1 or 2 selects ∂₁G or ∂₁²G; 0 uses initial_data
  double spectral_tau_begin = 1.0;
  double spectral_tau_end = 6.0;

  // [verify]
  bool verify_fast = false;

  // [output]
  std::string csv_path = "run.csv";
  std::optional<std::string> svg_path;
  std::optional<std::string> manifest_path;  ///< <csv>.manifest when absent
  std::vector<std::string> plot_columns{"rescaled_mass"};
  bool plot_log = false;

  double exponent() const;  ///< q, or q★(dim)
  double weight() const;    ///< weight_m, or (N+1)/2
  std::string manifest() const { return manifest_path.value_or(csv_path + ".manifest"); }
  SolverConfig solver() const;
};

ExperimentConfig parse_config(std::string_view text, const std::string& source = "<inline>");
ExperimentConfig parse_config_file(const std::string& path);

/// key: value lines for every field, defaults included.
std::string describe(const ExperimentConfig& cfg);

}  // namespace hjcrit
