#include "qse/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <sstream>
#include <thread>

#include "qse/amplitude.hpp"
#include "qse/dissipative_map.hpp"
#include "qse/errors.hpp"
#include "qse/steering_ellipsoid.hpp"
#include "qse/witnesses.hpp"

namespace qse {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v, int digits = 12) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

// Uniform sample from the closed unit ball by rejection; uses only integer
// draws from the engine so the stream is identical across platforms.
Eigen::Vector3d ball_sample(std::mt19937& rng) {
    for (;;) {
        double v[3];
        for (double& x : v) {
            // 53-bit uniform in [-1, 1].
            const std::uint64_t hi = rng(), lo = rng();
            const double unit =
                static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
            x = 2.0 * unit - 1.0;
        }
        Eigen::Vector3d e(v[0], v[1], v[2]);
        if (e.squaredNorm() <= 1.0) return e;
    }
}

// Deterministic spherical Fibonacci lattice of n points.
std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(n);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / n;
        const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = 2.0 * M_PI * std::fmod(k / golden, 1.0);
        pts.emplace_back(rad * std::cos(phi), rad * std::sin(phi), z);
    }
    return pts;
}

struct ManifestWriter {
    RunManifest& man;

    void add(const std::string& key, const std::string& value) {
        man.entries.emplace_back(key, value);
    }
    void add(const std::string& key, double value) { add(key, fmt(value)); }
    void add(const std::string& key, bool value) {
        add(key, std::string(value ? "true" : "false"));
    }
};

void write_manifest(RunManifest& man) {
    const fs::path path = fs::path(man.cfg.out_dir) / "manifest.txt";
    std::ofstream out(path);
    for (const auto& [k, v] : man.entries) out << k << " = " << v << "\n";
    std::string joined;
    for (const auto& f : man.files) {
        if (!joined.empty()) joined += ", ";
        joined += f;
    }
    out << "files = " << joined << "\n";
    man.manifest_path = path.string();
}

void write_ellipsoid_csv(const fs::path& path, const SteeringEllipsoid& e,
                         int cloud_points) {
    std::ofstream out(path);
    out << "center_x,center_y,center_z,l1,l2,l3,"
           "ax1_x,ax1_y,ax1_z,ax2_x,ax2_y,ax2_z,ax3_x,ax3_y,ax3_z\n";
    out << fmt(e.center(0)) << ',' << fmt(e.center(1)) << ',' << fmt(e.center(2));
    for (int i = 0; i < 3; ++i) out << ',' << fmt(e.semiaxes(i));
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r) out << ',' << fmt(e.axes(r, c));
    out << "\n";
    for (const auto& u : fibonacci_sphere(cloud_points)) {
        const Eigen::Vector3d pt = e.center + e.axes * e.semiaxes.asDiagonal() * u;
        out << fmt(pt(0)) << ',' << fmt(pt(1)) << ',' << fmt(pt(2)) << "\n";
    }
}

struct ContainmentStats {
    double max_excess = -1.0;          // max of sum (y_i/l_i)^2 - 1
    double max_collapsed_leak = 0.0;   // |y_i| along collapsed axes
    long skipped_singular = 0;
};

void containment_check(const PauliForm& pf, const SteeringEllipsoid& ell,
                       Direction dir, int samples, std::mt19937& rng,
                       ContainmentStats& stats) {
    if (ell.degenerate) return;
    const Eigen::Vector3d& steering = dir == Direction::a_to_b ? pf.a : pf.b;
    for (int k = 0; k < samples; ++k) {
        const Eigen::Vector3d e = ball_sample(rng);
        if (1.0 + steering.dot(e) <= 1e-9) {
            ++stats.skipped_singular;
            continue;
        }
        const Eigen::Vector3d point = steered_bloch(pf, e, dir);
        const Eigen::Vector3d y = ell.axes.transpose() * (point - ell.center);
        double q = 0.0;
        for (int i = 0; i < 3; ++i) {
            if (ell.semiaxes(i) > 1e-9) {
                // 1e-8 absolute floor keeps the ratio meaningful when an axis
                // has shrunk to the double-precision noise scale.
                const double w = y(i) / (ell.semiaxes(i) + 1e-8);
                q += w * w;
            } else {
                stats.max_collapsed_leak =
                    std::max(stats.max_collapsed_leak, std::abs(y(i)));
            }
        }
        stats.max_excess = std::max(stats.max_excess, q - 1.0);
    }
}

std::string classify(double max_ab, double max_ba) {
    const bool ab = max_ab > 0.01;
    const bool ba = max_ba > 0.01;
    if (ab && ba) return "two_way";
    if (ab) return "one_way_AB";
    if (ba) return "one_way_BA";
    return "none";
}

} // namespace

RunManifest run_scenario(const RunConfig& cfg) {
    validate_config(cfg);
    const auto t_start = std::chrono::steady_clock::now();

    RunManifest man;
    man.cfg = cfg;
    ManifestWriter w{man};
    fs::create_directories(cfg.out_dir);

    w.add("schema_version", std::string("1"));
    if (!cfg.preset.empty()) w.add("preset", cfg.preset);
    w.add("s", cfg.s);
    w.add("omega_c", cfg.omega_c);
    w.add("eta_A", cfg.eta_A);
    w.add("eta_B", cfg.eta_B);
    w.add("p", cfg.p);
    w.add("theta", cfg.theta);
    w.add("dt", cfg.dt);
    w.add("t_max", cfg.t_max);
    w.add("stride", std::string(std::to_string(cfg.stride)));
    w.add("povm_samples", std::string(std::to_string(cfg.povm_samples)));
    w.add("seed", std::string(std::to_string(cfg.seed)));
    w.add("cloud_points", std::string(std::to_string(cfg.cloud_points)));

    std::string stage = "spectral-env";
    try {
        const OhmicSpectralDensity envA{cfg.eta_A, cfg.s, cfg.omega_c};
        const OhmicSpectralDensity envB{cfg.eta_B, cfg.s, cfg.omega_c};

        man.summary.bound_A = find_bound_state(envA);
        man.summary.bound_B = find_bound_state(envB);
        const MarkovRates mrA = markov_rates(envA);
        const MarkovRates mrB = markov_rates(envB);

        auto report_side = [&](const char* side, const std::optional<BoundState>& b,
                               const MarkovRates& mr) {
            const std::string tag = std::string("bound_state_") + side;
            w.add(tag, std::string(b ? "present" : "absent"));
            if (b) {
                w.add("bound_energy_" + std::string(side), b->energy);
                w.add("residue_" + std::string(side), b->residue);
            }
            w.add("kappa_" + std::string(side), mr.kappa);
            w.add("delta_" + std::string(side), mr.delta);
        };
        report_side("A", man.summary.bound_A, mrA);
        report_side("B", man.summary.bound_B, mrB);

        stage = "amplitude-dynamics";
        AmplitudeTrajectory trajA, trajB;
        if (cfg.eta_A == cfg.eta_B) {
            trajA = solve_volterra(envA, cfg.t_max, cfg.dt);
            trajB = trajA;
        } else {
            auto futureB = std::async(std::launch::async, [&] {
                return solve_volterra(envB, cfg.t_max, cfg.dt);
            });
            trajA = solve_volterra(envA, cfg.t_max, cfg.dt);
            trajB = futureB.get();
        }
        w.add("volterra_claimed_tol_A", trajA.claimed_tolerance);
        w.add("volterra_claimed_tol_B", trajB.claimed_tolerance);
        w.add("abs_cA_final", std::abs(trajA.values.back()));
        w.add("abs_cB_final", std::abs(trajB.values.back()));

        for (const char* side : {"A", "B"}) {
            const AmplitudeTrajectory& traj = side[0] == 'A' ? trajA : trajB;
            const fs::path path =
                fs::path(cfg.out_dir) / (std::string("trajectory_") + side + ".csv");
            std::ofstream out(path);
            out << "t,re_c,im_c,abs_c\n";
            for (std::size_t k = 0; k < traj.size();
                 k += static_cast<std::size_t>(cfg.stride)) {
                out << fmt(traj.times[k]) << ',' << fmt(traj.values[k].real()) << ','
                    << fmt(traj.values[k].imag()) << ','
                    << fmt(std::abs(traj.values[k])) << "\n";
            }
            man.files.push_back(path.string());
        }

        stage = "dissipative-map";
        const EvolvedStateSeries series =
            evolve_series(cfg.p, cfg.theta, trajA, trajB);

        double min_eig = 1.0, max_herm = 0.0, max_trace = 0.0;
        for (const auto& state : series.states) {
            const StateDiagnostics d = validate(state);
            min_eig = std::min(min_eig, d.min_eigenvalue);
            max_herm = std::max(max_herm, d.hermiticity_defect);
            max_trace = std::max(max_trace, d.trace_defect);
        }
        w.add("min_state_eigenvalue", min_eig);
        w.add("max_hermiticity_defect", max_herm);
        w.add("max_trace_defect", max_trace);

        stage = "geometry-witnesses";
        const fs::path ts_path = fs::path(cfg.out_dir) / "timeseries.csv";
        {
            std::ofstream out(ts_path);
            out << "t,abs_cA,abs_cB,cA_x,cA_y,cA_z,lA_1,lA_2,lA_3,"
                   "cB_x,cB_y,cB_z,lB_1,lB_2,lB_3,concurrence,dS_AB,dS_BA,"
                   "ppt_min_eig\n";
            const std::size_t n = series.times.size();
            const auto late_start = static_cast<std::size_t>(0.6 * (n - 1));
            for (std::size_t k = 0; k < n;
                 k += static_cast<std::size_t>(cfg.stride)) {
                const TwoQubitDensity& rho = series.states[k];
                const PauliForm pf = pauli_decompose(rho);
                const SteeringEllipsoid eA = ellipsoid_of_A(pf);
                const SteeringEllipsoid eB = ellipsoid_of_B(pf);
                const double conc = concurrence(rho);
                const double ab = lur_witness(rho, Direction::a_to_b).value;
                const double ba = lur_witness(rho, Direction::b_to_a).value;
                const SeparabilityResult sep = is_separable(rho);

                out << fmt(series.times[k]) << ',' << fmt(std::abs(trajA.values[k]))
                    << ',' << fmt(std::abs(trajB.values[k]));
                for (int i = 0; i < 3; ++i) out << ',' << fmt(eA.center(i));
                for (int i = 0; i < 3; ++i) out << ',' << fmt(eA.semiaxes(i));
                for (int i = 0; i < 3; ++i) out << ',' << fmt(eB.center(i));
                for (int i = 0; i < 3; ++i) out << ',' << fmt(eB.semiaxes(i));
                out << ',' << fmt(conc) << ',' << fmt(ab) << ',' << fmt(ba) << ','
                    << fmt(sep.min_pt_eigenvalue) << "\n";

                if (k >= late_start) {
                    man.summary.late_max_dSAB = std::max(man.summary.late_max_dSAB, ab);
                    man.summary.late_max_dSBA = std::max(man.summary.late_max_dSBA, ba);
                }
                if (k + 1 == n || k + static_cast<std::size_t>(cfg.stride) >= n) {
                    man.summary.final_concurrence = conc;
                    man.summary.final_lA_max = eA.semiaxes(0);
                    man.summary.final_lB_max = eB.semiaxes(0);
                }
            }
        }
        man.files.push_back(ts_path.string());

        stage = "outputs";
        // Ellipsoid snapshots with export axes kept continuous in time.
        Eigen::Matrix3d refA = Eigen::Matrix3d::Identity();
        Eigen::Matrix3d refB = Eigen::Matrix3d::Identity();
        std::mt19937 rng(cfg.seed);
        ContainmentStats stats;
        for (double t_snap : cfg.resolved_snapshots()) {
            const auto idx = std::min<std::size_t>(
                series.times.size() - 1,
                static_cast<std::size_t>(std::llround(t_snap / cfg.dt)));
            const PauliForm pf = pauli_decompose(series.states[idx]);
            SteeringEllipsoid eA = ellipsoid_of_A(pf);
            SteeringEllipsoid eB = ellipsoid_of_B(pf);
            eA.axes = align_axes(eA.axes, eA.semiaxes, refA);
            eB.axes = align_axes(eB.axes, eB.semiaxes, refB);
            refA = eA.axes;
            refB = eB.axes;

            const std::string label = fmt(series.times[idx], 6);
            const fs::path pathA =
                fs::path(cfg.out_dir) / ("ellipsoid_A_" + label + ".csv");
            const fs::path pathB =
                fs::path(cfg.out_dir) / ("ellipsoid_B_" + label + ".csv");
            write_ellipsoid_csv(pathA, eA, cfg.cloud_points);
            write_ellipsoid_csv(pathB, eB, cfg.cloud_points);
            man.files.push_back(pathA.string());
            man.files.push_back(pathB.string());

            containment_check(pf, eB, Direction::a_to_b, cfg.povm_samples, rng,
                              stats);
            containment_check(pf, eA, Direction::b_to_a, cfg.povm_samples, rng,
                              stats);
        }
        man.summary.containment_max_excess = stats.max_excess;
        w.add("containment_max_excess", stats.max_excess);
        w.add("containment_collapsed_leak", stats.max_collapsed_leak);
        w.add("containment_skipped_singular",
              std::string(std::to_string(stats.skipped_singular)));

        // Steady-state geometry from the closed forms at |c_j| -> Z_j.
        const double zA = man.summary.bound_A ? man.summary.bound_A->residue : 0.0;
        const double zB = man.summary.bound_B ? man.summary.bound_B->residue : 0.0;
        const SteeringEllipsoid steadyA =
            steady_state_qse(Party::alice, cfg.p, cfg.theta, zA, zB);
        const SteeringEllipsoid steadyB =
            steady_state_qse(Party::bob, cfg.p, cfg.theta, zA, zB);
        for (int i = 0; i < 3; ++i)
            w.add("steady_lA_" + std::to_string(i + 1), steadyA.semiaxes(i));
        for (int i = 0; i < 3; ++i)
            w.add("steady_lB_" + std::to_string(i + 1), steadyB.semiaxes(i));
        w.add("final_lA_max", man.summary.final_lA_max);
        w.add("final_lB_max", man.summary.final_lB_max);
        w.add("final_concurrence", man.summary.final_concurrence);
        w.add("late_max_dSAB", man.summary.late_max_dSAB);
        w.add("late_max_dSBA", man.summary.late_max_dSBA);
        w.add("classification",
              classify(man.summary.late_max_dSAB, man.summary.late_max_dSBA));

        man.completed = true;
    } catch (const NumericalError& err) {
        man.completed = false;
        man.failed_stage = stage;
        man.error = err.what();
        w.add("failed_stage", stage);
        w.add("error", std::string(err.what()));
    }

    const auto t_end = std::chrono::steady_clock::now();
    w.add("wall_time_s",
          std::chrono::duration<double>(t_end - t_start).count());
    w.add("completed", man.completed);
    write_manifest(man);
    return man;
}

SweepResult sweep(const RunConfig& base, const std::string& param,
                  std::span<const double> grid) {
    static const char* allowed[] = {"eta_A", "eta_B", "p", "theta"};
    if (std::find_if(std::begin(allowed), std::end(allowed),
                     [&](const char* s) { return param == s; }) ==
        std::end(allowed)) {
        throw DomainError("sweep: parameter '" + param +
                          "' not sweepable (eta_A, eta_B, p, theta)");
    }

    fs::create_directories(base.out_dir);
    std::vector<RunConfig> cfgs;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        RunConfig cfg = base;
        apply_config_key(cfg, param, fmt(grid[i], 17));
        char tag[32];
        std::snprintf(tag, sizeof(tag), "point_%03zu", i);
        cfg.out_dir = (fs::path(base.out_dir) / tag).string();
        validate_config(cfg);
        cfgs.push_back(cfg);
    }

    unsigned workers = base.workers > 0
                           ? static_cast<unsigned>(base.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
    SweepResult result;
    result.manifests.resize(cfgs.size());
    for (std::size_t start = 0; start < cfgs.size(); start += workers) {
        const std::size_t stop = std::min(cfgs.size(), start + workers);
        std::vector<std::future<RunManifest>> batch;
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async,
                                       [&cfgs, i] { return run_scenario(cfgs[i]); }));
        }
        for (std::size_t i = start; i < stop; ++i)
            result.manifests[i] = batch[i - start].get();
    }

    const fs::path summary_path = fs::path(base.out_dir) / "sweep_summary.csv";
    std::ofstream out(summary_path);
    out << "param,value,bound_A,bound_energy_A,residue_A,bound_B,bound_energy_B,"
           "residue_B,final_concurrence,late_max_dSAB,late_max_dSBA,"
           "final_lA_max,final_lB_max,classification,completed\n";
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        const RunManifest& man = result.manifests[i];
        const RunSummary& s = man.summary;
        out << param << ',' << fmt(grid[i]);
        out << ',' << (s.bound_A ? "present" : "absent");
        out << ',' << (s.bound_A ? fmt(s.bound_A->energy) : "");
        out << ',' << (s.bound_A ? fmt(s.bound_A->residue) : "");
        out << ',' << (s.bound_B ? "present" : "absent");
        out << ',' << (s.bound_B ? fmt(s.bound_B->energy) : "");
        out << ',' << (s.bound_B ? fmt(s.bound_B->residue) : "");
        out << ',' << fmt(s.final_concurrence) << ',' << fmt(s.late_max_dSAB) << ','
            << fmt(s.late_max_dSBA) << ',' << fmt(s.final_lA_max) << ','
            << fmt(s.final_lB_max) << ','
            << classify(s.late_max_dSAB, s.late_max_dSBA) << ','
            << (man.completed ? "true" : "false") << "\n";
    }
    result.summary_path = summary_path.string();
    return result;
}

std::string write_spectrum_csv(double s, double omega_c,
                               std::span<const double> eta_grid,
                               const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path path = fs::path(out_dir) / "spectrum.csv";
    const auto table = spectrum_scan(s, omega_c, eta_grid);
    std::ofstream out(path);
    out << "eta,bound_energy,residue_Z\n";
    for (const auto& pt : table) {
        out << fmt(pt.eta) << ',' << (pt.bound ? fmt(pt.bound->energy) : "") << ','
            << (pt.bound ? fmt(pt.bound->residue) : "") << "\n";
    }
    return path.string();
}

std::vector<double> parse_grid(const std::string& spec) {
    double a = 0.0, b = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !ss.eof()) {
        throw DomainError("grid spec '" + spec + "' must look like a:b:step");
    }
    if (!(step > 0.0) || b < a) {
        throw DomainError("grid spec '" + spec + "' needs step > 0 and b >= a");
    }
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double v = a + k * step;
        if (v > b + 0.5 * step) break;
        grid.push_back(std::min(v, b));
    }
    return grid;
}

} // namespace qse
