#include "doctest.h"

#include <cmath>
#include <random>

#include "qse/errors.hpp"
#include "qse/two_qubit_state.hpp"
#include "support/helpers.hpp"

using namespace qse;

namespace {

TwoQubitDensity bell_state() { return from_initial_family({1.0, M_PI / 4.0}); }

TwoQubitDensity maximally_mixed() {
    return {Eigen::Matrix4cd::Identity() * 0.25};
}

TwoQubitDensity ground_product() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.0;
    return {m};
}

} // namespace

TEST_CASE("initial family endpoints") {
    const auto bell = bell_state();
    Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
    expect(0, 0) = expect(3, 3) = expect(0, 3) = expect(3, 0) = 0.5;
    CHECK((bell.m - expect).cwiseAbs().maxCoeff() < 1e-15);

    // p = 0 kills the entangled part: rho_A (x) I/2
    const double theta = 0.7;
    const auto prod = from_initial_family({0.0, theta});
    const double c2 = std::cos(theta) * std::cos(theta);
    Eigen::Matrix4cd expect2 = Eigen::Matrix4cd::Zero();
    expect2(0, 0) = expect2(1, 1) = c2 / 2.0;
    expect2(2, 2) = expect2(3, 3) = (1.0 - c2) / 2.0;
    CHECK((prod.m - expect2).cwiseAbs().maxCoeff() < 1e-15);

    const auto mid = from_initial_family({0.9, M_PI / 8.0});
    CHECK(std::abs(mid.m(3, 0)) ==
          doctest::Approx(0.9 * std::cos(M_PI / 8) * std::sin(M_PI / 8))
              .epsilon(1e-14));
}

TEST_CASE("initial family marginals") {
    const InitialFamilyParams prm{0.63, 0.51};
    const auto rho = from_initial_family(prm);
    const double c2 = std::cos(prm.theta) * std::cos(prm.theta);

    const Eigen::Matrix2cd rhoA = partial_trace_B(rho);
    CHECK(std::abs(rhoA(0, 0).real() - c2) < 1e-14);
    CHECK(std::abs(rhoA(0, 1)) < 1e-14);

    const Eigen::Matrix2cd rhoB = partial_trace_A(rho);
    CHECK(std::abs(rhoB(0, 0).real() - (prm.p * c2 + (1.0 - prm.p) / 2.0)) < 1e-14);
}

TEST_CASE("initial family domain errors") {
    CHECK_THROWS_AS(from_initial_family({-0.1, 0.3}), DomainError);
    CHECK_THROWS_AS(from_initial_family({1.1, 0.3}), DomainError);
    CHECK_THROWS_AS(from_initial_family({0.5, -0.01}), DomainError);
    CHECK_THROWS_AS(from_initial_family({0.5, 1.8}), DomainError);
}

TEST_CASE("initial family is valid across the parameter square") {
    for (int i = 0; i <= 4; ++i) {
        for (int j = 0; j <= 4; ++j) {
            const auto rho =
                from_initial_family({i / 4.0, j / 4.0 * M_PI / 2.0});
            const auto d = validate(rho);
            CHECK(d.hermiticity_defect <= kHermitianTol);
            CHECK(d.trace_defect <= kTraceTol);
            CHECK(d.min_eigenvalue >= kPsdFloor);
        }
    }
}

TEST_CASE("pauli decomposition landmarks") {
    const auto bell_pf = pauli_decompose(bell_state());
    CHECK(bell_pf.a.norm() < 1e-14);
    CHECK(bell_pf.b.norm() < 1e-14);
    Eigen::Matrix3d t_expect = Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal();
    CHECK((bell_pf.T - t_expect).cwiseAbs().maxCoeff() < 1e-14);

    const auto mixed_pf = pauli_decompose(maximally_mixed());
    CHECK(mixed_pf.a.norm() < 1e-15);
    CHECK(mixed_pf.b.norm() < 1e-15);
    CHECK(mixed_pf.T.cwiseAbs().maxCoeff() < 1e-15);

    // ground state sits at the north pole
    const auto gg_pf = pauli_decompose(ground_product());
    CHECK((gg_pf.a - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
    CHECK((gg_pf.b - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
    Eigen::Matrix3d gg_t = Eigen::Vector3d(0.0, 0.0, 1.0).asDiagonal();
    CHECK((gg_pf.T - gg_t).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("pauli round trip on random states") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const auto rho = testing::random_density(rng);
        const auto pf = pauli_decompose(rho);
        CHECK(pf.a.norm() <= 1.0 + 1e-10);
        CHECK(pf.b.norm() <= 1.0 + 1e-10);
        CHECK(pf.T.cwiseAbs().maxCoeff() <= 1.0 + 1e-10);
        const auto back = pauli_recompose(pf);
        CHECK((back.m - rho.m).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("marginal consistency") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = testing::random_density(rng);
        const auto pf = pauli_decompose(rho);
        CHECK((pf.a - bloch_vector(partial_trace_B(rho))).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK((pf.b - bloch_vector(partial_trace_A(rho))).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("validate reports defects without throwing") {
    const auto mixed = validate(maximally_mixed());
    CHECK(mixed.hermiticity_defect == 0.0);
    CHECK(mixed.trace_defect < 1e-15);
    CHECK(mixed.min_eigenvalue == doctest::Approx(0.25).epsilon(1e-14));

    const auto bell = validate(bell_state());
    CHECK(bell.hermiticity_defect < 1e-15);
    CHECK(bell.trace_defect < 1e-15);
    CHECK(std::abs(bell.min_eigenvalue) < 1e-14);

    TwoQubitDensity off = maximally_mixed();
    off.m(0, 0) += 0.01;
    const auto d = validate(off);
    CHECK(d.trace_defect == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("swap exchanges the qubits") {
    std::mt19937 rng(11);
    const auto rho = testing::random_density(rng);
    const auto pf = pauli_decompose(rho);
    const auto swapped_pf = pauli_decompose(swap_qubits(rho));
    CHECK((swapped_pf.a - pf.b).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((swapped_pf.b - pf.a).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((swapped_pf.T - pf.T.transpose()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("trace distance") {
    CHECK(trace_distance(bell_state(), bell_state()) < 1e-15);
    CHECK(trace_distance(ground_product(), maximally_mixed()) ==
          doctest::Approx(0.75).epsilon(1e-12));
}
