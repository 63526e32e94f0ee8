#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qse/errors.hpp"
#include "qse/run_config.hpp"
#include "qse/runner.hpp"

using namespace qse;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qse_runner_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunConfig tiny_run(const std::string& out) {
    RunConfig cfg = preset_config("fig1");
    cfg.dt = 2e-2;
    cfg.t_max = 2.0;
    cfg.snapshot_times = {0.0, 1.0, 2.0};
    cfg.povm_samples = 400;
    cfg.cloud_points = 64;
    cfg.stride = 5;
    cfg.out_dir = out;
    return cfg;
}

} // namespace

TEST_CASE("preset parameter sets") {
    const RunConfig fig1 = preset_config("fig1");
    CHECK(fig1.s == 1.0);
    CHECK(fig1.omega_c == 20.0);
    CHECK(fig1.eta_A == 0.06);
    CHECK(fig1.eta_B == 0.06);
    CHECK(fig1.p == 0.9);
    CHECK(fig1.theta == doctest::Approx(M_PI / 8).epsilon(1e-15));
    CHECK(fig1.dt == 1e-2);
    CHECK(fig1.t_max == 500.0);
    CHECK(fig1.povm_samples == 10000);
    CHECK(fig1.seed == 42u);

    CHECK(preset_config("fig2a").theta == fig1.theta);
    CHECK(preset_config("fig2b").theta == doctest::Approx(M_PI / 12).epsilon(1e-15));

    const RunConfig fig3a = preset_config("fig3a");
    CHECK(fig3a.eta_A == 0.06);
    CHECK(fig3a.eta_B == 0.03);
    CHECK(fig3a.p == 0.8);
    CHECK(fig3a.theta == doctest::Approx(M_PI / 3).epsilon(1e-15));

    const RunConfig fig3b = preset_config("fig3b");
    CHECK(fig3b.eta_A == 0.03);
    CHECK(fig3b.eta_B == 0.06);

    const RunConfig fig4 = preset_config("fig4");
    CHECK(fig4.eta_A == 0.03);
    CHECK(fig4.eta_B == 0.03);
    CHECK(fig4.p == 0.8);

    CHECK_THROWS_AS(preset_config("fig9"), DomainError);
}

TEST_CASE("config file parsing") {
    const fs::path dir = temp_dir("config");
    const fs::path path = dir / "run.cfg";
    {
        std::ofstream out(path);
        out << "# scenario with overrides\n";
        out << "preset = fig3a\n";
        out << "eta_B = 0.05   # explicit override\n";
        out << "dt = 0.02\n";
        out << "snapshot_times = 0, 125, 250\n";
        out << "t_max = 250\n";
        out << "seed = 7\n";
    }
    const RunConfig cfg = load_config(path.string());
    CHECK(cfg.eta_A == 0.06);   // from the preset
    CHECK(cfg.eta_B == 0.05);   // overridden
    CHECK(cfg.p == 0.8);
    CHECK(cfg.dt == 0.02);
    CHECK(cfg.t_max == 250.0);
    CHECK(cfg.seed == 7u);
    REQUIRE(cfg.snapshot_times.size() == 3);
    CHECK(cfg.snapshot_times[1] == 125.0);

    {
        std::ofstream out(path);
        out << "unknown_knob = 3\n";
    }
    CHECK_THROWS_WITH_AS(load_config(path.string()),
                         "line 1: unknown config key 'unknown_knob'", DomainError);

    {
        std::ofstream out(path);
        out << "theta = 2.5\n";
    }
    CHECK_THROWS_AS(load_config(path.string()), DomainError);

    {
        std::ofstream out(path);
        out << "dt 0.01\n";
    }
    CHECK_THROWS_AS(load_config(path.string()), DomainError);

    CHECK_THROWS_AS(load_config((dir / "missing.cfg").string()), DomainError);
}

TEST_CASE("grid parsing") {
    const auto grid = parse_grid("0.03:0.08:0.01");
    REQUIRE(grid.size() == 6);
    CHECK(grid.front() == doctest::Approx(0.03));
    CHECK(grid.back() == doctest::Approx(0.08));

    CHECK(parse_grid("1:1:0.5").size() == 1);
    CHECK_THROWS_AS(parse_grid("1:2"), DomainError);
    CHECK_THROWS_AS(parse_grid("2:1:0.5"), DomainError);
    CHECK_THROWS_AS(parse_grid("1:2:0"), DomainError);
}

TEST_CASE("run scenario writes a complete, deterministic bundle") {
    const fs::path dir1 = temp_dir("run1");
    const fs::path dir2 = temp_dir("run2");

    const RunManifest man = run_scenario(tiny_run(dir1.string()));
    CHECK(man.completed);
    CHECK(fs::exists(man.manifest_path));
    // manifest completeness: every listed file exists
    CHECK(man.files.size() == 3 + 2 * 3);  // timeseries + 2 trajectories + 2 parties x 3 snapshots
    for (const auto& f : man.files) CHECK(fs::exists(f));

    const std::string manifest = slurp(man.manifest_path);
    CHECK(manifest.find("schema_version = 1") != std::string::npos);
    CHECK(manifest.find("bound_state_A = present") != std::string::npos);
    CHECK(manifest.find("completed = true") != std::string::npos);

    const std::string ts = slurp((dir1 / "timeseries.csv").string());
    CHECK(ts.rfind("t,abs_cA,abs_cB,cA_x,cA_y,cA_z,lA_1,lA_2,lA_3,cB_x,", 0) == 0);

    const std::string trajcsv = slurp((dir1 / "trajectory_A.csv").string());
    CHECK(trajcsv.rfind("t,re_c,im_c,abs_c", 0) == 0);
    CHECK(trajcsv.find("\n0,1,0,1\n") != std::string::npos);

    // byte-identical CSVs on a re-run with the same config and seed
    const RunManifest man2 = run_scenario(tiny_run(dir2.string()));
    CHECK(slurp((dir1 / "timeseries.csv").string()) ==
          slurp((dir2 / "timeseries.csv").string()));
    CHECK(slurp((dir1 / "ellipsoid_A_1.csv").string()) ==
          slurp((dir2 / "ellipsoid_A_1.csv").string()));
    CHECK(man.summary.containment_max_excess ==
          man2.summary.containment_max_excess);
    CHECK(man.summary.containment_max_excess <= 1e-6);

    // ellipsoid snapshot header carries center/semiaxes/axes, then the cloud
    std::ifstream ell((dir1 / "ellipsoid_A_0.csv").string());
    std::string header, firstrow;
    std::getline(ell, header);
    std::getline(ell, firstrow);
    CHECK(header.rfind("center_x,center_y,center_z,l1,l2,l3,ax1_x", 0) == 0);
    int lines = 0;
    std::string line;
    while (std::getline(ell, line)) ++lines;
    CHECK(lines == 64);
}

TEST_CASE("sweep flips the bound-state column at the threshold") {
    const fs::path dir = temp_dir("sweep");
    RunConfig base = tiny_run((dir / "base").string());
    base.out_dir = dir.string();
    base.povm_samples = 100;
    base.cloud_points = 16;
    base.snapshot_times = {0.0};

    const std::vector<double> grid{0.04, 0.05, 0.06};
    const SweepResult res = sweep(base, "eta_A", grid);
    REQUIRE(res.manifests.size() == 3);
    CHECK_FALSE(res.manifests[0].summary.bound_A.has_value());
    CHECK_FALSE(res.manifests[1].summary.bound_A.has_value());
    CHECK(res.manifests[2].summary.bound_A.has_value());

    const std::string summary = slurp(res.summary_path);
    CHECK(summary.find("param,value,bound_A") == 0);
    CHECK(summary.find("eta_A,0.04,absent") != std::string::npos);
    CHECK(summary.find("eta_A,0.06,present") != std::string::npos);

    CHECK_THROWS_AS(sweep(base, "omega_c", grid), DomainError);

    const SweepResult empty = sweep(base, "p", std::vector<double>{});
    CHECK(empty.manifests.empty());
    const std::string empty_summary = slurp(empty.summary_path);
    CHECK(empty_summary.find("param,value") == 0);
    CHECK(empty_summary.find('\n') == empty_summary.size() - 1);
}

TEST_CASE("spectrum csv") {
    const fs::path dir = temp_dir("spectrum");
    const std::vector<double> grid{0.03, 0.06};
    const std::string path = write_spectrum_csv(1.0, 20.0, grid, dir.string());
    const std::string body = slurp(path);
    CHECK(body.find("eta,bound_energy,residue_Z\n") == 0);
    CHECK(body.find("0.03,,\n") != std::string::npos);
    CHECK(body.find("0.06,-0.158986") != std::string::npos);
}

TEST_CASE("config validation names the offending field") {
    RunConfig cfg = preset_config("fig1");
    cfg.dt = -1.0;
    CHECK_THROWS_WITH_AS(validate_config(cfg),
                         "config field 'dt': time step must be > 0", DomainError);
    cfg = preset_config("fig1");
    cfg.snapshot_times = {600.0};
    CHECK_THROWS_AS(validate_config(cfg), DomainError);
}
