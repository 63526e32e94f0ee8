#include "qse/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qse/errors.hpp"

namespace qse {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw DomainError("config field '" + key + "': cannot parse '" + value + "'");
    }
    if (pos != value.size()) {
        throw DomainError("config field '" + key + "': trailing junk in '" + value +
                          "'");
    }
    return out;
}

long parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long out = 0;
    try {
        out = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw DomainError("config field '" + key + "': cannot parse '" + value + "'");
    }
    if (pos != value.size()) {
        throw DomainError("config field '" + key + "': trailing junk in '" + value +
                          "'");
    }
    return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) continue;
        out.push_back(parse_double(key, item.substr(first, last - first + 1)));
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

std::vector<double> RunConfig::resolved_snapshots() const {
    if (!snapshot_times.empty()) return snapshot_times;
    return {0.0, t_max / 5.0, t_max / 2.0, t_max};
}

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.preset = name;
    if (name == "fig1" || name == "fig2a") {
        // defaults already describe the two-sided bound-state scenario
    } else if (name == "fig2b") {
        cfg.theta = M_PI / 12.0;
    } else if (name == "fig3a") {
        cfg.eta_A = 0.06;
        cfg.eta_B = 0.03;
        cfg.p = 0.8;
        cfg.theta = M_PI / 3.0;
    } else if (name == "fig3b") {
        cfg.eta_A = 0.03;
        cfg.eta_B = 0.06;
        cfg.p = 0.8;
        cfg.theta = M_PI / 3.0;
    } else if (name == "fig4") {
        cfg.eta_A = 0.03;
        cfg.eta_B = 0.03;
        cfg.p = 0.8;
        cfg.theta = M_PI / 3.0;
    } else {
        throw DomainError("unknown preset '" + name + "'");
    }
    return cfg;
}

void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value) {
    if (key == "preset") {
        const std::string keep_out = cfg.out_dir;
        cfg = preset_config(value);
        cfg.out_dir = keep_out;
    } else if (key == "s") {
        cfg.s = parse_double(key, value);
    } else if (key == "omega_c") {
        cfg.omega_c = parse_double(key, value);
    } else if (key == "eta_A") {
        cfg.eta_A = parse_double(key, value);
    } else if (key == "eta_B") {
        cfg.eta_B = parse_double(key, value);
    } else if (key == "p") {
        cfg.p = parse_double(key, value);
    } else if (key == "theta") {
        cfg.theta = parse_double(key, value);
    } else if (key == "dt") {
        cfg.dt = parse_double(key, value);
    } else if (key == "t_max") {
        cfg.t_max = parse_double(key, value);
    } else if (key == "snapshot_times") {
        cfg.snapshot_times = parse_list(key, value);
    } else if (key == "povm_samples") {
        cfg.povm_samples = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
        cfg.seed = static_cast<unsigned>(parse_int(key, value));
    } else if (key == "stride") {
        cfg.stride = static_cast<int>(parse_int(key, value));
    } else if (key == "cloud_points") {
        cfg.cloud_points = static_cast<int>(parse_int(key, value));
    } else if (key == "workers") {
        cfg.workers = static_cast<int>(parse_int(key, value));
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else {
        throw DomainError("unknown config key '" + key + "'");
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file '" + path + "'");

    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DomainError("config parse error at line " + std::to_string(lineno) +
                              ": expected key = value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_config_key(cfg, key, value);
        } catch (const DomainError& err) {
            throw DomainError("line " + std::to_string(lineno) + ": " + err.what());
        }
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    auto fail = [](const std::string& field, const std::string& why) {
        throw DomainError("config field '" + field + "': " + why);
    };
    if (!(cfg.s > 0.0)) fail("s", "Ohmicity exponent must be > 0");
    if (!(cfg.omega_c > 0.0)) fail("omega_c", "cutoff must be > 0");
    if (!(cfg.eta_A >= 0.0)) fail("eta_A", "coupling must be >= 0");
    if (!(cfg.eta_B >= 0.0)) fail("eta_B", "coupling must be >= 0");
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) fail("p", "mixing weight must lie in [0, 1]");
    if (!(cfg.theta >= 0.0 && cfg.theta <= M_PI / 2.0))
        fail("theta", "angle must lie in [0, pi/2]");
    if (!(cfg.dt > 0.0)) fail("dt", "time step must be > 0");
    if (!(cfg.dt <= cfg.t_max)) fail("t_max", "require dt <= t_max");
    if (cfg.povm_samples < 0) fail("povm_samples", "must be >= 0");
    if (cfg.stride < 1) fail("stride", "must be >= 1");
    if (cfg.cloud_points < 0) fail("cloud_points", "must be >= 0");
    if (cfg.workers < 0) fail("workers", "must be >= 0");
    for (double t : cfg.snapshot_times) {
        if (t < 0.0 || t > cfg.t_max)
            fail("snapshot_times", "snapshot " + std::to_string(t) +
                                       " outside [0, t_max]");
    }
}

} // namespace qse
