#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qse/run_config.hpp"
#include "qse/spectral_env.hpp"

namespace qse {

// Numeric digest of one run, consumed by sweeps and tests.
struct RunSummary {
    std::optional<BoundState> bound_A;
    std::optional<BoundState> bound_B;
    double final_concurrence = 0.0;
    double late_max_dSAB = -99.0;  // max over the last 40% of the run
    double late_max_dSBA = -99.0;
    double final_lA_max = 0.0;  // largest semiaxis at t_max
    double final_lB_max = 0.0;
    double containment_max_excess = 0.0;
};

struct RunManifest {
    RunConfig cfg;
    RunSummary summary;
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<std::string> files;  // paths of every output file written
    bool completed = false;
    std::string failed_stage;
    std::string error;
    std::string manifest_path;
};

// Executes the full pipeline (spectral analysis, amplitude solves, state
// series, geometry + witnesses, file outputs) into cfg.out_dir. Numerical
// failures inside the pipeline are captured in the manifest rather than
// thrown; config-level errors still throw DomainError.
RunManifest run_scenario(const RunConfig& cfg);

struct SweepResult {
    std::vector<RunManifest> manifests;
    std::string summary_path;
};

// Independent runs over a grid of one parameter (eta_A, eta_B, p or theta),
// each in its own subdirectory, plus a summary CSV. Per-point failures are
// recorded without aborting the sweep.
SweepResult sweep(const RunConfig& base, const std::string& param,
                  std::span<const double> grid);

// Writes the bound-state branch over a coupling grid as CSV
// (eta, bound_energy, residue_Z with blanks when absent).
std::string write_spectrum_csv(double s, double omega_c,
                               std::span<const double> eta_grid,
                               const std::string& out_dir);

// Parses "a:b:step" into an inclusive grid.
std::vector<double> parse_grid(const std::string& spec);

} // namespace qse
