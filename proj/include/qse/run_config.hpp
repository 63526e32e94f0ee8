#pragma once

#include <string>
#include <vector>

namespace qse {

// Full description of one simulation run. Parameter values for the built-in
// presets come from the scenario family this library reproduces; everything
// is overridable through a flat key = value config file or CLI flags.
struct RunConfig {
    double s = 1.0;
    double omega_c = 20.0;
    double eta_A = 0.06;
    double eta_B = 0.06;
    double p = 0.9;
    double theta = 0.39269908169872414;  // pi/8
    double dt = 1e-2;
    double t_max = 500.0;
    std::vector<double> snapshot_times;  // empty: {0, tmax/5, tmax/2, tmax}
    int povm_samples = 10000;
    unsigned seed = 42;
    int stride = 10;
    int cloud_points = 2048;
    int workers = 0;  // 0: hardware concurrency
    std::string out_dir = "out";
    std::string preset;  // name of the preset this config started from, if any

    std::vector<double> resolved_snapshots() const;
};

// Named scenario presets: fig1/fig2a (two-sided bound states), fig2b (same
// couplings, theta = pi/12), fig3a/fig3b (one-sided bound state), fig4 (none).
RunConfig preset_config(const std::string& name);

// Parses a flat key = value file with '#' comments. A preset key, when
// present, is applied first so explicit keys override it. Throws DomainError
// naming the offending line or field.
RunConfig load_config(const std::string& path);

// Applies one key = value assignment (shared by the file parser and CLI).
void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value);

// Validates physical and grid parameters; throws DomainError naming the field.
void validate_config(const RunConfig& cfg);

} // namespace qse
