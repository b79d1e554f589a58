#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hjcrit/config.hpp"
#include "hjcrit/fields.hpp"

namespace hjcrit {

const char* version();

/// Initial data of the config sampled on grid (from_file reads grid.size()
/// whitespace-separated samples, axis 0 slowest).
ScalarField initial_field(const ExperimentConfig& cfg, const Grid& grid);

/// Manifest text: config echo, derived constants, version, extra results,
/// wall-clock seconds.
std::string manifest_text(const ExperimentConfig& cfg,
                          const std::vector<std::pair<std::string, std::string>>& results,
                          double seconds);

/// Runs the configured experiment, writes CSV, manifest and optional SVG.
/// Returns the process exit status: 0 on success, 1 when the run was
/// unstable, inconclusive, broke an invariant (named on err) or, for
/// verify, when any criterion failed.
int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace hjcrit
