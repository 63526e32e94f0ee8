#pragma once

#include <vector>

#include "qse/dissipative_map.hpp"
#include "qse/steering_ellipsoid.hpp"
#include "qse/two_qubit_state.hpp"

namespace qse {

// Wootters concurrence in [0, 1].
double concurrence(const TwoQubitDensity& rho);

// Three-setting linear-inference steering witness built on local
// uncertainty relations with settings {sigma_x, sigma_y, sigma_z} on both
// sides. Positive values certify EPR steering in the stated direction.
// degenerate is set when a setting's compensation variance vanishes; that
// setting's compensation coefficient is then 0, which never overstates
// steering.
struct LurResult {
    double value;
    bool degenerate;
};

LurResult lur_witness(const TwoQubitDensity& rho, Direction dir);

// Asymptotic-orbit witness parameters: bound-state residues and energies per
// side; z = 0 together with eb = 0 encodes a side without a bound state.
struct AsymptoticWitnessParams {
    double p;
    double theta;
    double zA;
    double zB;
    double ebA;
    double ebB;
};

struct WitnessPair {
    double dS_AB;
    double dS_BA;
};

// Long-time witness orbit: constants plus a cos[2(E_b^A + E_b^B) t]
// oscillation, evaluated from the closed-form coefficient functions of
// (p, theta, Z_A, Z_B).
WitnessPair asymptotic_witnesses(const AsymptoticWitnessParams& params, double t);

struct WitnessSample {
    double time;
    double concurrence;
    double dS_AB;
    double dS_BA;
};

std::vector<WitnessSample> witness_series(const EvolvedStateSeries& series);

} // namespace qse
