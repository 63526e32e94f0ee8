#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qse {

// Two-qubit density matrix in the fixed product basis (|gg>, |ge>, |eg>, |ee>),
// first slot Alice, second slot Bob. The Bloch convention puts the ground
// state at the north pole: sigma_z = diag(1, -1) on (|g>, |e>), and the
// transition operator |g><e| is the lowering operator of the dissipative
// coupling.
struct TwoQubitDensity {
    Eigen::Matrix4cd m;
};

// Pauli expansion rho = 1/4 (I + a.sigma x I + I x b.sigma + sum T_mn sigma_m x sigma_n).
struct PauliForm {
    Eigen::Vector3d a;
    Eigen::Vector3d b;
    Eigen::Matrix3d T;
};

// rho(0) = p |psi(theta)><psi(theta)| + (1-p) rho_A x I/2 with
// |psi(theta)> = cos(theta)|gg> + sin(theta)|ee> and rho_A the matching
// marginal diag(cos^2 theta, sin^2 theta).
struct InitialFamilyParams {
    double p;      // mixing weight in [0, 1]
    double theta;  // entanglement angle in [0, pi/2]
};

struct StateDiagnostics {
    double hermiticity_defect;  // max |rho - rho^dagger|
    double trace_defect;        // |Tr rho - 1|
    double min_eigenvalue;      // smallest eigenvalue of (rho + rho^dagger)/2
};

// Default validity thresholds for time-evolved states.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdFloor = -1e-8;

// Pauli matrix on (|g>, |e>); axis 0 = x, 1 = y, 2 = z.
const Eigen::Matrix2cd& pauli(int axis);

TwoQubitDensity from_initial_family(const InitialFamilyParams& params);

PauliForm pauli_decompose(const TwoQubitDensity& rho);
TwoQubitDensity pauli_recompose(const PauliForm& pf);

// Reports defects without throwing; callers decide what to tolerate.
StateDiagnostics validate(const TwoQubitDensity& rho);

Eigen::Matrix2cd partial_trace_A(const TwoQubitDensity& rho);
Eigen::Matrix2cd partial_trace_B(const TwoQubitDensity& rho);
Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd& rho1);

// Exchanges the two qubits (pure index permutation, no arithmetic).
TwoQubitDensity swap_qubits(const TwoQubitDensity& rho);

double trace_distance(const TwoQubitDensity& x, const TwoQubitDensity& y);

} // namespace qse
